//! Full symbols: polynomials in `xi`, `w`, `(mu - w)^{-1}`, coordinates and
//! curvature coefficients, with the cotangent and base derivations, and
//! matrices of such symbols.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::gens::Var;
use super::model::JetModel;
use super::ring::{mono_mul, Poly, Ring, QI};
use crate::specfun::rat;

pub type Sym = Poly<Var, QI>;

pub fn var(v: Var) -> Sym {
    Sym::var(v)
}

pub fn xi(a: u8) -> Sym {
    Sym::var(Var::Xi(a))
}

pub fn w_pow(e: i32) -> Sym {
    Sym::var_pow(Var::W, e)
}

pub fn rinv_pow(e: i32) -> Sym {
    Sym::var_pow(Var::Rinv, e)
}

pub fn int(n: i64) -> Sym {
    Sym::rational(&rat(n, 1))
}

pub fn imag(r: BigRational) -> Sym {
    Sym::constant(QI::new(rat(0, 1), r))
}

/// Homogeneity degree in `(xi, w)` counting `(mu - w)^{-1}` as degree -1.
pub fn mono_degree(m: &[(Var, i32)]) -> i32 {
    m.iter()
        .map(|(v, e)| match v {
            Var::Xi(_) | Var::W => *e,
            Var::Rinv => -*e,
            _ => 0,
        })
        .sum()
}

/// Number of derivatives of the geometry carried by a monomial.
pub fn mono_weight(m: &[(Var, i32)]) -> i32 {
    m.iter().map(|(v, e)| v.weight() * e).sum()
}

/// Curvature weight of the coefficients, ignoring coordinates.
pub fn coeff_weight(m: &[(Var, i32)]) -> i32 {
    m.iter().filter(|(v, _)| !matches!(v, Var::Y(_))).map(|(v, e)| v.weight() * e).sum()
}

/// Power of `(mu - w)^{-1}` in a monomial.
pub fn mono_pole(m: &[(Var, i32)]) -> i32 {
    m.iter().find(|(v, _)| *v == Var::Rinv).map_or(0, |(_, e)| *e)
}

pub fn degree_part(p: &Sym, d: i32) -> Sym {
    p.filter(|m| mono_degree(m) == d)
}

/// Degrees present in `p`, sorted.
pub fn degrees(p: &Sym) -> Vec<i32> {
    let mut v: Vec<i32> = p.terms().map(|(m, _)| mono_degree(m)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Derivations and truncated products of full symbols over a jet model.
/// Monomials whose coefficient weight exceeds the model budget are dropped;
/// weights never decrease under products and derivations, so this is exact
/// for every quantity of weight at most the budget.
#[derive(Clone, Debug)]
pub struct Calculus {
    pub m: u8,
    pub budget: i32,
    dxi_w: Vec<Sym>,
    dy_w: Vec<Sym>,
}

impl Calculus {
    pub fn new(model: &JetModel) -> Calculus {
        let m = model.frame.m;
        let mut c = Calculus { m, budget: model.budget, dxi_w: Vec::new(), dy_w: Vec::new() };
        let winv = w_pow(-1);
        for a in 1..m {
            let mut s = Sym::zero();
            for b in 1..m {
                s.add_assign(&model.ginv(a, b).mul(&xi(b)));
            }
            c.dxi_w.push(c.truncate(&s.mul(&winv)));
        }
        for k in 1..=m {
            let mut s = Sym::zero();
            for a in 1..m {
                for b in 1..m {
                    let dg = c.d_coord(model.ginv(a, b), k);
                    s.add_assign(&dg.mul(&xi(a)).mul(&xi(b)));
                }
            }
            c.dy_w.push(c.truncate(&s.mul(&winv).scale(&rat(1, 2))));
        }
        c
    }

    pub fn truncate(&self, p: &Sym) -> Sym {
        p.filter(|m| coeff_weight(m) <= self.budget)
    }

    pub fn mul(&self, a: &Sym, b: &Sym) -> Sym {
        let budget = self.budget;
        let wb: Vec<_> = b.terms().map(|(m, c)| (m, c, coeff_weight(m))).collect();
        let mut out = Sym::zero();
        for (m1, c1) in a.terms() {
            let w1 = coeff_weight(m1);
            for (m2, c2, w2) in &wb {
                if w1 + w2 <= budget {
                    out.add_term(mono_mul(m1, m2), c1.mul(c2));
                }
            }
        }
        out
    }

    pub fn mat_mul(&self, a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
        let n = a.n;
        let mut out = SymMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = b.get(k, j);
                    if y.is_zero() {
                        continue;
                    }
                    let p = self.mul(x, y);
                    out.e[i * n + j].add_assign(&p);
                }
            }
        }
        out
    }

    pub fn mat_mul_sym(&self, a: &SymMatrix, s: &Sym) -> SymMatrix {
        a.map(|x| self.mul(x, s))
    }

    /// Derivative in the coordinate `y_k` of a polynomial free of `w`.
    pub fn d_coord(&self, p: &Sym, k: u8) -> Sym {
        p.derive(&mut |v| match v {
            Var::Y(j) => Some(if *j == k { Sym::one() } else { Sym::zero() }),
            Var::W | Var::Rinv => panic!("coordinate derivative of a fibre-dependent symbol"),
            _ => None,
        })
    }

    fn derive_with(&self, p: &Sym, dw: &Sym, dv: impl Fn(&Var) -> Option<Sym>) -> Sym {
        let rinv_d = self.truncate(&rinv_pow(2).mul(dw));
        let raw = p.derive(&mut |v| match v {
            Var::W => Some(dw.clone()),
            Var::Rinv => Some(rinv_d.clone()),
            other => dv(other),
        });
        self.truncate(&raw)
    }

    pub fn d_xi(&self, p: &Sym, a: u8) -> Sym {
        let dw = &self.dxi_w[a as usize - 1];
        self.derive_with(p, dw, |v| match v {
            Var::Xi(b) => Some(if *b == a { Sym::one() } else { Sym::zero() }),
            _ => None,
        })
    }

    pub fn d_y(&self, p: &Sym, k: u8) -> Sym {
        let dw = &self.dy_w[k as usize - 1];
        self.derive_with(p, dw, |v| match v {
            Var::Y(j) => Some(if *j == k { Sym::one() } else { Sym::zero() }),
            _ => None,
        })
    }

    pub fn mat_d_xi(&self, m: &SymMatrix, a: u8) -> SymMatrix {
        m.map(|e| self.d_xi(e, a))
    }

    pub fn mat_d_y(&self, m: &SymMatrix, k: u8) -> SymMatrix {
        m.map(|e| self.d_y(e, k))
    }

    /// Tangential multi-indices of total order `r` as index lists, paired
    /// with `1/omega!`.
    pub fn multi_indices(&self, r: usize) -> Vec<(Vec<u8>, BigRational)> {
        fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for k in (0..=left).rev() {
                cur[pos] = k;
                rec(pos + 1, left - k, cur, out);
            }
        }
        let d = self.m as usize - 1;
        let mut raw = Vec::new();
        rec(0, r, &mut vec![0; d], &mut raw);
        raw.into_iter()
            .map(|om| {
                let mut fact = BigRational::one();
                let mut idx = Vec::new();
                for (a, k) in om.iter().enumerate() {
                    for t in 1..=*k {
                        fact *= BigRational::from_integer((t as i64).into());
                        idx.push(a as u8 + 1);
                    }
                }
                (idx, fact.recip())
            })
            .collect()
    }

    /// `sum_{|omega| = r} (1/omega!) d_xi^omega A . D_y^omega B`
    /// with `D_y = -i d_y`.
    pub fn compose_order(&self, a: &SymMatrix, b: &SymMatrix, r: usize) -> SymMatrix {
        if r == 0 {
            return self.mat_mul(a, b);
        }
        let phase = match r % 4 {
            0 => QI::one(),
            1 => QI::new(rat(0, 1), rat(-1, 1)),
            2 => QI::new(rat(-1, 1), rat(0, 1)),
            _ => QI::new(rat(0, 1), rat(1, 1)),
        };
        let mut out = SymMatrix::zero(a.n);
        let mut dy_cache: HashMap<Vec<u8>, SymMatrix> = HashMap::new();
        for (idx, inv_fact) in self.multi_indices(r) {
            let da = idx.iter().fold(a.clone(), |acc, k| self.mat_d_xi(&acc, *k));
            if da.is_zero() {
                continue;
            }
            let db = dy_cache
                .entry(idx.clone())
                .or_insert_with(|| idx.iter().fold(b.clone(), |acc, k| self.mat_d_y(&acc, *k)));
            let term = self.mat_mul(&da, db);
            out = out.add(&term.scale_c(&phase.scale(&inv_fact)));
        }
        out
    }
}

/// Square matrix of symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    pub n: usize,
    pub e: Vec<Sym>,
}

impl SymMatrix {
    pub fn zero(n: usize) -> Self {
        SymMatrix { n, e: vec![Sym::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Sym::one())
    }

    pub fn scalar(n: usize, s: &Sym) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.e[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Sym) -> Self {
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(f(i, j));
            }
        }
        SymMatrix { n, e }
    }

    pub fn get(&self, i: usize, j: usize) -> &Sym {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Sym) {
        self.e[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    pub fn map(&self, f: impl Fn(&Sym) -> Sym) -> Self {
        SymMatrix { n: self.n, e: self.e.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        SymMatrix { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        SymMatrix { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        self.map(|x| x.scale(r))
    }

    pub fn scale_c(&self, c: &QI) -> Self {
        self.map(|x| x.scale_c(c))
    }

    pub fn mul_sym(&self, s: &Sym) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let p = a.mul(b);
                    out.e[i * n + j].add_assign(&p);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Sym {
        let mut t = Sym::zero();
        for i in 0..self.n {
            t.add_assign(self.get(i, i));
        }
        t
    }

    /// Upper-left `k x k` block.
    pub fn block(&self, k: usize) -> Self {
        Self::from_fn(k, |i, j| self.get(i, j).clone())
    }

    pub fn term_count(&self) -> usize {
        self.e.iter().map(|x| x.len()).sum()
    }
}

pub fn render_sym(p: &Sym) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (m, c) in p.sorted_terms() {
        let coeff = render_qi(c);
        let mono: Vec<String> = m
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if mono.is_empty() {
            parts.push(coeff);
        } else {
            parts.push(format!("{coeff}*{}", mono.join("*")));
        }
    }
    parts.join(" + ")
}

pub fn render_qi(c: &QI) -> String {
    use num_traits::Zero;

    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => format!("({})", c.re),
        (true, false) => format!("({}i)", c.im),
        _ => format!("({}+{}i)", c.re, c.im),
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| render_sym(self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(" | "))?;
        }
        Ok(())
    }
}
