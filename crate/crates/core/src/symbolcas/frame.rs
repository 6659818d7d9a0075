//! Form-degree frame: the basis of `Lambda^q` split into the tangential
//! block `T` (forms without `dy^m`) followed by the normal block `N`.

use super::gens::Var;
use super::symbol::{var, Sym, SymMatrix};
use crate::error::{Error, Result};
use crate::specfun::rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub m: u8,
    pub q: u8,
    /// Sorted index sets; `T` elements first.
    pub basis: Vec<Vec<u8>>,
    pub n_t: usize,
}

fn subsets(items: &[u8], k: usize) -> Vec<Vec<u8>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, *x);
            out.push(rest);
        }
    }
    out
}

impl Frame {
    pub fn new(m: u8, q: u8) -> Result<Frame> {
        if !matches!((m, q), (2, 0) | (2, 1) | (3, 0) | (3, 1) | (3, 2)) {
            return Err(Error::Unsupported(format!("dimension {m}, form degree {q}")));
        }
        let tang: Vec<u8> = (1..m).collect();
        let mut basis = subsets(&tang, q as usize);
        let n_t = basis.len();
        if q > 0 {
            for mut s in subsets(&tang, q as usize - 1) {
                s.push(m);
                basis.push(s);
            }
        }
        Ok(Frame { m, q, basis, n_t })
    }

    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn d(&self) -> u8 {
        self.m - 1
    }

    pub fn is_tangential(&self, i: usize) -> bool {
        i < self.n_t
    }

    /// Christoffel symbols of boundary normal coordinates at the base point,
    /// as polynomials in the principal curvatures.
    pub fn christoffel_at_base(&self, c: u8, a: u8, b: u8) -> Sym {
        let m = self.m;
        let kappa = |x: u8| var(Var::Kappa(x));
        if c == m && a != m && a == b {
            return kappa(a);
        }
        if c != m && ((a == m && b == c) || (b == m && a == c)) {
            return kappa(c).neg();
        }
        Sym::zero()
    }

    fn index_of(&self, set: &[u8]) -> usize {
        self.basis.iter().position(|b| b == set).expect("basis element")
    }

    /// Connection matrix `omega_k` at the base point: entry `[J, I]` is the
    /// coefficient of basis element `J` in `nabla_k` of basis element `I`,
    /// using `nabla_k dy^i = -sum_j Gamma^i_{kj} dy^j`.
    pub fn omega_at_base(&self, k: u8) -> SymMatrix {
        let n = self.n();
        let mut out = SymMatrix::zero(n);
        for (col, set) in self.basis.iter().enumerate() {
            for r in 0..set.len() {
                for j in 1..=self.m {
                    let g = self.christoffel_at_base(set[r], k, j);
                    if g.is_zero() {
                        continue;
                    }
                    let mut factors = set.clone();
                    factors[r] = j;
                    let Some((sign, sorted)) = sort_wedge(&factors) else { continue };
                    let row = self.index_of(&sorted);
                    let v = out.get(row, col).sub(&g.scale(&rat(sign, 1)));
                    out.set(row, col, v);
                }
            }
        }
        out
    }

    /// Weitzenbock endomorphism on the tangential block at the base point,
    /// `E = -Ric` acting on forms without `dy^m`.
    pub fn endo_at_base_tangential(&self) -> Option<SymMatrix> {
        let nt = self.n_t;
        let kappa = |x: u8| var(Var::Kappa(x));
        let rho = |a: u8, b: u8| var(Var::Rho(a.min(b), a.max(b)));
        match (self.m, self.q) {
            (_, 0) => Some(SymMatrix::zero(nt)),
            (2, 1) => Some(SymMatrix::scalar(1, &rho(1, 1).neg())),
            (3, 1) => {
                let gauss = var(Var::CurvY).sub(&kappa(1).mul(&kappa(2)));
                Some(SymMatrix::from_fn(2, |i, j| {
                    let (a, b) = (i as u8 + 1, j as u8 + 1);
                    if a == b {
                        gauss.add(&rho(a, a)).neg()
                    } else {
                        rho(a, b).neg()
                    }
                }))
            }
            (3, 2) => Some(SymMatrix::scalar(1, &rho(1, 1).add(&rho(2, 2)).neg())),
            _ => None,
        }
    }
}

/// Sort a wedge of 1-forms; `None` if an index repeats.
pub fn sort_wedge(f: &[u8]) -> Option<(i64, Vec<u8>)> {
    let mut v = f.to_vec();
    let mut sign = 1i64;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            match v[j].cmp(&v[j + 1]) {
                std::cmp::Ordering::Greater => {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return None,
                _ => {}
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}
