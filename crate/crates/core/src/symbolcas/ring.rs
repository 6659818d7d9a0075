//! Coefficient rings and sparse polynomials.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::specfun::{Const, SFunction};

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn scale(&self, r: &BigRational) -> Self {
        self.mul(&Self::from_rational(r))
    }
}

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QI {
    pub re: BigRational,
    pub im: BigRational,
}

impl QI {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        QI { re, im }
    }

    pub fn i() -> Self {
        QI { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn real(r: BigRational) -> Self {
        QI { re: r, im: BigRational::zero() }
    }
}

impl Ring for QI {
    fn zero() -> Self {
        Self::real(BigRational::zero())
    }
    fn one() -> Self {
        Self::real(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        QI { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        QI {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        QI { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::real(r.clone())
    }
    fn scale(&self, r: &BigRational) -> Self {
        QI { re: &self.re * r, im: &self.im * r }
    }
}

impl Ring for SFunction {
    fn zero() -> Self {
        SFunction::zero()
    }
    fn one() -> Self {
        SFunction::rational(One::one())
    }
    fn is_zero(&self) -> bool {
        SFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn from_rational(r: &BigRational) -> Self {
        SFunction::rational(r.clone())
    }
    fn scale(&self, r: &BigRational) -> Self {
        self.scale_rational(r)
    }
}

impl Ring for Const {
    fn zero() -> Self {
        Const::zero()
    }
    fn one() -> Self {
        Const::from_int(1)
    }
    fn is_zero(&self) -> bool {
        Const::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn from_rational(r: &BigRational) -> Self {
        Const::from_rational(r.clone())
    }
    fn scale(&self, r: &BigRational) -> Self {
        Const::scale(self, r)
    }
}

/// Monomial: variables with nonzero (possibly negative) exponents, sorted.
pub type Mono<V> = Vec<(V, i32)>;

pub fn mono_mul<V: Ord + Clone>(a: &Mono<V>, b: &Mono<V>) -> Mono<V> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0.clone(), e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Sparse polynomial (Laurent in some variables) with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<V: Ord + Hash + Clone, C: Ring> {
    terms: HashMap<Mono<V>, C>,
}

impl<V: Ord + Hash + Clone + Debug, C: Ring> Poly<V, C> {
    pub fn zero() -> Self {
        Poly { terms: HashMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn rational(r: &BigRational) -> Self {
        Self::constant(C::from_rational(r))
    }

    pub fn var(v: V) -> Self {
        Self::term(vec![(v, 1)], C::one())
    }

    pub fn var_pow(v: V, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Self::term(vec![(v, e)], C::one())
    }

    pub fn term(m: Mono<V>, c: C) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono<V>, &C)> {
        self.terms.iter()
    }

    /// Terms sorted by monomial, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&Mono<V>, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, m: Mono<V>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = e.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        out.add_assign(small);
        out
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if Zero::is_zero(r) {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(r))).collect() }
    }

    pub fn scale_c(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(k));
        }
        out
    }

    pub fn mul_mono(&self, mono: &Mono<V>) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (mono_mul(m, mono), c.clone())).collect() }
    }

    pub fn filter(&self, keep: impl Fn(&Mono<V>) -> bool) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn coeff(&self, m: &Mono<V>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn variables(&self) -> Vec<V> {
        let mut v: Vec<V> = self.terms.keys().flat_map(|m| m.iter().map(|(x, _)| x.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Apply a derivation given by its action on variables.
    pub fn derive(&self, dv: &mut impl FnMut(&V) -> Option<Self>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (idx, (v, e)) in m.iter().enumerate() {
                let Some(d) = dv(v) else { continue };
                if d.is_zero() {
                    continue;
                }
                let mut rest = m.clone();
                if *e == 1 {
                    rest.remove(idx);
                } else {
                    rest[idx].1 -= 1;
                }
                let k = c.scale(&BigRational::from_integer((*e).into()));
                for (dm, dc) in &d.terms {
                    out.add_term(mono_mul(&rest, dm), k.mul(dc));
                }
            }
        }
        out
    }

    /// Replace variables by polynomials (a ring homomorphism on the
    /// substituted variables; others are kept). Negative powers are only
    /// allowed for kept variables.
    pub fn substitute(&self, sub: &mut impl FnMut(&V) -> Option<Self>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            let mut kept: Mono<V> = Vec::new();
            for (v, e) in m {
                match sub(v) {
                    Some(p) => {
                        assert!(*e > 0, "negative power of a substituted variable");
                        for _ in 0..*e {
                            acc = acc.mul(&p);
                        }
                    }
                    None => kept.push((v.clone(), *e)),
                }
                if acc.is_zero() {
                    break;
                }
            }
            if !acc.is_zero() {
                out.add_assign(&acc.mul_mono(&kept));
            }
        }
        out
    }

    /// Change coefficient ring / variable type term by term.
    pub fn map_terms<V2: Ord + Hash + Clone + Debug, C2: Ring>(&self, f: impl Fn(&Mono<V>, &C) -> Poly<V2, C2>) -> Poly<V2, C2> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_assign(&f(m, c));
        }
        out
    }
}
