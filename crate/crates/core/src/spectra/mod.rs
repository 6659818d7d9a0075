//! Closed-form spectra of model operators: circles, flat tori, products
//! `[0, a] x N` with absolute or Dirichlet conditions, the
//! Dirichlet-to-Neumann operator of such a product, and the Steklov
//! spectrum of a disk.
//!
//! A [`SpectrumStream`] is an immutable description; eigenvalues are only
//! produced on demand, below a caller-chosen cutoff.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    AffineZeta,
    ProductLattice,
    DtnProduct,
    ExplicitList,
}

/// One eigenvalue with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigen {
    pub eigenvalue: f64,
    pub multiplicity: u64,
}

/// `zeros` copies of `0` and, for every `k >= 1`, `mult` copies of `c k^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    pub c: f64,
    pub p: u32,
    pub mult: u64,
    pub zeros: u64,
}

impl Affine {
    pub fn eigenvalue(&self, k: u64) -> f64 {
        self.c * (k as f64).powi(self.p as i32)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMeta {
    pub dim: u32,
    pub degree: u32,
    pub betti: u64,
}

/// Finite spectrum given as a list.
#[derive(Clone, Debug, PartialEq)]
pub struct Explicit {
    entries: Vec<Eigen>,
    pub meta: Option<SpectrumMeta>,
}

impl Explicit {
    pub fn entries(&self) -> &[Eigen] {
        &self.entries
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Absolute,
    Dirichlet,
}

/// Laplacian on `q`-forms of `[0, a] x N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductLaplacian {
    pub a: f64,
    pub n_q: Box<SpectrumStream>,
    pub n_qm1: Option<Box<SpectrumStream>>,
    pub bc: Boundary,
}

/// Dirichlet-to-Neumann operator at `λ = 0` on both ends of `[0, a] x N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductDtn {
    pub a: f64,
    pub n_q: Box<SpectrumStream>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    Affine(Affine),
    Explicit(Explicit),
    ProductLaplacian(ProductLaplacian),
    ProductDtn(ProductDtn),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumStream {
    kind: Kind,
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{name} must be positive, got {x}")))
    }
}

fn base(n: &SpectrumStream) -> Result<()> {
    if n.is_base() {
        Ok(())
    } else {
        Err(Error::Unsupported("cross-section spectrum must be affine or an explicit list".into()))
    }
}

/// `√λ (1 + 2/(e^{a√λ} - 1))` and `√λ (1 - 2/(e^{a√λ} + 1))`.
pub fn dtn_pair(a: f64, lambda: f64) -> (f64, f64) {
    let r = lambda.sqrt();
    let x = a * r;
    (r * (1.0 + 2.0 / x.exp_m1()), r * (1.0 - 2.0 / (x.exp() + 1.0)))
}

/// Spectrum of the Hodge Laplacian on `q`-forms of a circle of length `l`.
pub fn circle_form_spectrum(l: f64, q: u32) -> Result<SpectrumStream> {
    positive("circle length", l)?;
    if q > 1 {
        return Err(Error::Invalid(format!("no {q}-forms on a circle")));
    }
    let w = 2.0 * std::f64::consts::PI / l;
    Ok(SpectrumStream { kind: Kind::Affine(Affine { c: w * w, p: 2, mult: 2, zeros: 1 }) })
}

/// Dirichlet Laplacian `-d²/du²` on `[0, a]`.
pub fn dirichlet_interval_spectrum(a: f64) -> Result<SpectrumStream> {
    positive("interval length", a)?;
    let w = std::f64::consts::PI / a;
    Ok(SpectrumStream { kind: Kind::Affine(Affine { c: w * w, p: 2, mult: 1, zeros: 0 }) })
}

/// Steklov spectrum of the disk of radius `r`.
pub fn disk_steklov_spectrum(r: f64) -> Result<SpectrumStream> {
    positive("radius", r)?;
    Ok(SpectrumStream { kind: Kind::Affine(Affine { c: 1.0 / r, p: 1, mult: 2, zeros: 1 }) })
}

/// Generic affine stream `c k^p`.
pub fn affine_spectrum(c: f64, p: u32, mult: u64, zeros: u64) -> Result<SpectrumStream> {
    positive("scale", c)?;
    if p == 0 || mult == 0 {
        return Err(Error::Invalid("affine spectrum needs p >= 1 and multiplicity >= 1".into()));
    }
    Ok(SpectrumStream { kind: Kind::Affine(Affine { c, p, mult, zeros }) })
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Hodge spectrum on `q`-forms of the flat torus with side lengths
/// `l1, l2`, truncated at `cutoff`. Every Fourier mode contributes
/// `C(2, q)` copies.
pub fn flat_torus_form_spectrum(l1: f64, l2: f64, q: u32, cutoff: f64) -> Result<SpectrumStream> {
    positive("side length", l1)?;
    positive("side length", l2)?;
    if q > 2 {
        return Err(Error::Invalid(format!("no {q}-forms on a surface")));
    }
    let rank = binomial(2, q);
    let (w1, w2) = (2.0 * std::f64::consts::PI / l1, 2.0 * std::f64::consts::PI / l2);
    let j1 = (cutoff.sqrt() / w1).floor() as i64;
    let j2 = (cutoff.sqrt() / w2).floor() as i64;
    let mut entries = Vec::new();
    for i in -j1..=j1 {
        for j in -j2..=j2 {
            let v = (w1 * i as f64).powi(2) + (w2 * j as f64).powi(2);
            if v <= cutoff {
                entries.push(Eigen { eigenvalue: v, multiplicity: rank });
            }
        }
    }
    explicit_spectrum(entries, Some(SpectrumMeta { dim: 2, degree: q, betti: rank }))
}

/// Finite list; entries are sorted and equal eigenvalues merged.
pub fn explicit_spectrum(entries: Vec<Eigen>, meta: Option<SpectrumMeta>) -> Result<SpectrumStream> {
    for e in &entries {
        if !(e.eigenvalue.is_finite() && e.eigenvalue >= 0.0) {
            return Err(Error::Schema(format!("eigenvalue {} is not a nonnegative real", e.eigenvalue)));
        }
        if e.multiplicity == 0 {
            return Err(Error::Schema("multiplicity must be at least 1".into()));
        }
    }
    let entries = merge(entries);
    let zeros = entries.iter().filter(|e| e.eigenvalue == 0.0).map(|e| e.multiplicity).sum::<u64>();
    if let Some(m) = &meta {
        if m.betti != zeros {
            return Err(Error::Schema(format!("betti number {} but {zeros} zero modes", m.betti)));
        }
    }
    Ok(SpectrumStream { kind: Kind::Explicit(Explicit { entries, meta }) })
}

#[derive(Deserialize, Serialize)]
struct ExplicitDoc {
    eigenvalues: Vec<Eigen>,
    #[serde(default)]
    metadata: Option<SpectrumMeta>,
}

/// Parse `{"eigenvalues": [{"eigenvalue", "multiplicity"}], "metadata": {"dim", "degree", "betti"}}`.
pub fn explicit_from_json(text: &str) -> Result<SpectrumStream> {
    let doc: ExplicitDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    explicit_spectrum(doc.eigenvalues, doc.metadata)
}

pub fn explicit_to_json(e: &Explicit) -> String {
    let doc = ExplicitDoc { eigenvalues: e.entries.clone(), metadata: e.meta.clone() };
    serde_json::to_string(&doc).expect("plain data serialises")
}

/// Spectrum of `Δ^q` on `[0, a] x N` from the spectra of `Δ^q_N` and
/// `Δ^{q-1}_N` (absent for `q = 0`).
pub fn product_laplacian_spectra(
    a: f64,
    n_q: &SpectrumStream,
    n_qm1: Option<&SpectrumStream>,
    bc: Boundary,
) -> Result<SpectrumStream> {
    positive("width", a)?;
    base(n_q)?;
    if let Some(n) = n_qm1 {
        base(n)?;
    }
    Ok(SpectrumStream {
        kind: Kind::ProductLaplacian(ProductLaplacian {
            a,
            n_q: Box::new(n_q.clone()),
            n_qm1: n_qm1.map(|n| Box::new(n.clone())),
            bc,
        }),
    })
}

/// Spectrum of the Dirichlet-to-Neumann operator of `[0, a] x N` at `λ = 0`.
pub fn product_dtn_spectrum(a: f64, n_q: &SpectrumStream) -> Result<SpectrumStream> {
    positive("width", a)?;
    base(n_q)?;
    Ok(SpectrumStream { kind: Kind::ProductDtn(ProductDtn { a, n_q: Box::new(n_q.clone()) }) })
}

fn merge(mut v: Vec<Eigen>) -> Vec<Eigen> {
    v.sort_by(|x, y| x.eigenvalue.total_cmp(&y.eigenvalue));
    let mut out: Vec<Eigen> = Vec::with_capacity(v.len());
    for e in v {
        match out.last_mut() {
            Some(l) if (l.eigenvalue - e.eigenvalue).abs() <= 1e-12 * l.eigenvalue.max(1.0) && (l.eigenvalue == 0.0) == (e.eigenvalue == 0.0) => {
                l.multiplicity += e.multiplicity
            }
            _ => out.push(e),
        }
    }
    out
}

impl SpectrumStream {
    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn structure(&self) -> Structure {
        match self.kind {
            Kind::Affine(_) => Structure::AffineZeta,
            Kind::Explicit(_) => Structure::ExplicitList,
            Kind::ProductLaplacian(_) => Structure::ProductLattice,
            Kind::ProductDtn(_) => Structure::DtnProduct,
        }
    }

    /// Affine streams and explicit lists may serve as cross-sections.
    pub fn is_base(&self) -> bool {
        matches!(self.kind, Kind::Affine(_) | Kind::Explicit(_))
    }

    /// Number of zero eigenvalues.
    pub fn kernel_dim(&self) -> u64 {
        match &self.kind {
            Kind::Affine(a) => a.zeros,
            Kind::Explicit(e) => e.entries.iter().filter(|x| x.eigenvalue == 0.0).map(|x| x.multiplicity).sum(),
            Kind::ProductLaplacian(p) => match p.bc {
                Boundary::Absolute => p.n_q.kernel_dim(),
                Boundary::Dirichlet => 0,
            },
            Kind::ProductDtn(d) => d.n_q.kernel_dim(),
        }
    }

    /// Positive eigenvalues of a base stream in nondecreasing order.
    pub fn positive_modes(&self) -> Box<dyn Iterator<Item = Eigen> + '_> {
        match &self.kind {
            Kind::Affine(a) => Box::new((1u64..).map(move |k| Eigen { eigenvalue: a.eigenvalue(k), multiplicity: a.mult })),
            Kind::Explicit(e) => Box::new(e.entries.iter().copied().filter(|x| x.eigenvalue > 0.0)),
            _ => Box::new(std::iter::empty()),
        }
    }

    /// All eigenvalues `<= cutoff`, sorted, with multiplicities merged.
    pub fn enumerate(&self, cutoff: f64) -> Vec<Eigen> {
        let mut out = Vec::new();
        let zeros = self.kernel_dim();
        if zeros > 0 {
            out.push(Eigen { eigenvalue: 0.0, multiplicity: zeros });
        }
        match &self.kind {
            Kind::Affine(_) | Kind::Explicit(_) => {
                out.extend(self.positive_modes().take_while(|e| e.eigenvalue <= cutoff));
            }
            Kind::ProductLaplacian(p) => {
                let step = (std::f64::consts::PI / p.a).powi(2);
                let k0 = match p.bc {
                    Boundary::Absolute => 0,
                    Boundary::Dirichlet => 1,
                };
                let mut family = |n: &SpectrumStream, k0: u64| {
                    let z = n.kernel_dim();
                    let modes = std::iter::once(Eigen { eigenvalue: 0.0, multiplicity: z })
                        .filter(|e| e.multiplicity > 0)
                        .chain(n.positive_modes().take_while(|e| e.eigenvalue <= cutoff));
                    for e in modes {
                        let mut k = k0.max(u64::from(e.eigenvalue == 0.0));
                        loop {
                            let v = e.eigenvalue + step * (k * k) as f64;
                            if v > cutoff {
                                break;
                            }
                            out.push(Eigen { eigenvalue: v, multiplicity: e.multiplicity });
                            k += 1;
                        }
                    }
                };
                family(&p.n_q, k0);
                if let Some(n) = &p.n_qm1 {
                    family(n, 1);
                }
            }
            Kind::ProductDtn(d) => {
                let ell = d.n_q.kernel_dim();
                if ell > 0 && 2.0 / d.a <= cutoff {
                    out.push(Eigen { eigenvalue: 2.0 / d.a, multiplicity: ell });
                }
                for e in d.n_q.positive_modes() {
                    let (hi, lo) = dtn_pair(d.a, e.eigenvalue);
                    if lo > cutoff {
                        break;
                    }
                    out.push(Eigen { eigenvalue: lo, multiplicity: e.multiplicity });
                    if hi <= cutoff {
                        out.push(Eigen { eigenvalue: hi, multiplicity: e.multiplicity });
                    }
                }
            }
        }
        merge(out)
    }

    /// Number of eigenvalues `<= cutoff`, with multiplicity.
    pub fn count(&self, cutoff: f64) -> u64 {
        self.enumerate(cutoff).iter().map(|e| e.multiplicity).sum()
    }
}

#[cfg(test)]
mod tests;
