//! Spectral zeta functions, their values and derivatives at `s = 0`, and
//! zeta-regularised determinants of the streams in [`crate::spectra`].
//!
//! Every structured stream is continued through an exact decomposition:
//! affine streams are images of the Riemann zeta function; product
//! Laplacians split by Poisson summation in the interval direction into
//! Riemann/cross-section zetas plus an exponentially convergent Bessel
//! sum; product Dirichlet-to-Neumann spectra split into the zeta function
//! of `sqrt(Δ_N)` plus an exponentially convergent correction sum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::gamma::gamma;
use crate::specfun::{riemann_zeta, riemann_zeta_deriv, Real};
pub use crate::report::{Check, Report, Status};
use crate::spectra::{dtn_pair, Affine, Boundary, Kind, SpectrumStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    #[serde(rename = "structured+correction")]
    StructuredCorrection,
    TruncatedSeries,
}

#[derive(Clone, Debug)]
pub struct ZetaValue {
    pub value: Real,
    /// Bound on the absolute error of `value`.
    pub error_bound: f64,
    pub method: Method,
}

impl ZetaValue {
    fn closed(value: Real) -> Self {
        ZetaValue { value, error_bound: ROUNDING, method: Method::ClosedForm }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Allowance for rounding in working-precision arithmetic.
const ROUNDING: f64 = 1e-50;
/// Exponentially small terms below this (relative) size end a sum.
const EPS: f64 = 1e-32;

fn r(x: f64) -> Real {
    Real::from_f64(x)
}

fn ri(x: i64) -> Real {
    Real::from_i64(x)
}

fn half() -> Real {
    Real::parse("0.5")
}

/// Sum of a sequence whose term sizes have nonincreasing consecutive
/// ratios once below one. The closure yields each term with a size that
/// bounds its magnitude. Stops when a size falls below `EPS * scale` and
/// bounds the remainder by the geometric series with the last ratio.
fn geometric_tail_sum(mut term: impl FnMut(u64) -> Result<Option<(Real, f64)>>, scale: f64) -> Result<(Real, f64)> {
    let mut sum = Real::zero();
    let mut prev: Option<f64> = None;
    for k in 1u64..=10_000_000 {
        let Some((t, size)) = term(k)? else {
            return Ok((sum, 0.0));
        };
        sum = sum + t;
        if let Some(p) = prev {
            let ratio = if p > 0.0 { size / p } else { 0.0 };
            if size < EPS * scale.max(1e-300) && ratio < 1.0 {
                return Ok((sum, size * ratio / (1.0 - ratio)));
            }
        }
        prev = Some(size);
    }
    Err(Error::NoConvergence("exponentially convergent sum did not settle".into()))
}

fn sized(t: Real) -> Option<(Real, f64)> {
    let size = t.abs().to_f64();
    Some((t, size))
}

fn check_s(s: f64) -> Result<Real> {
    if !s.is_finite() {
        return Err(Error::Invalid(format!("s = {s}")));
    }
    Ok(r(s))
}

// ---- cross-section (base) spectra -------------------------------------

/// `Σ' λ^{-s}` over the positive spectrum of a base stream.
fn base_zeta(n: &SpectrumStream, s: &Real) -> Result<Real> {
    match n.kind() {
        Kind::Affine(a) => affine_zeta(a, s),
        Kind::Explicit(e) => Ok(e
            .entries()
            .iter()
            .filter(|x| x.eigenvalue > 0.0)
            .fold(Real::zero(), |acc, x| acc + ri(x.multiplicity as i64) * (-(s * &r(x.eigenvalue).ln())).exp())),
        _ => Err(Error::Unsupported("cross-section must be a base stream".into())),
    }
}

fn affine_zeta(a: &Affine, s: &Real) -> Result<Real> {
    let ps = s * &ri(a.p as i64);
    if ps == Real::one() {
        return Err(Error::Pole(format!("affine zeta at s = {}", s.to_sci(6))));
    }
    Ok(ri(a.mult as i64) * (-(s * &r(a.c).ln())).exp() * riemann_zeta(&ps)?)
}

/// Derivative at zero of the base zeta function.
fn base_zeta_deriv0(n: &SpectrumStream) -> Result<Real> {
    match n.kind() {
        Kind::Affine(a) => {
            // mult (-ln c ζ(0) + p ζ'(0))
            let z0 = riemann_zeta(&Real::zero())?;
            let d0 = riemann_zeta_deriv(&Real::zero())?;
            Ok(ri(a.mult as i64) * (-(r(a.c).ln() * z0) + ri(a.p as i64) * d0))
        }
        Kind::Explicit(e) => Ok(e
            .entries()
            .iter()
            .filter(|x| x.eigenvalue > 0.0)
            .fold(Real::zero(), |acc, x| acc - ri(x.multiplicity as i64) * r(x.eigenvalue).ln())),
        _ => Err(Error::Unsupported("cross-section must be a base stream".into())),
    }
}

/// Positive modes of a base stream, indexed from 1; `None` past the end.
fn base_mode(n: &SpectrumStream, k: u64) -> Option<(Real, u64)> {
    match n.kind() {
        Kind::Affine(a) => Some((r(a.c) * ri(k as i64).powi(a.p as i32), a.mult)),
        Kind::Explicit(_) => n.positive_modes().nth(k as usize - 1).map(|e| (r(e.eigenvalue), e.multiplicity)),
        _ => None,
    }
}

// ---- product Laplacians --------------------------------------------------

/// `K_{m+1/2}(z)`.
fn bessel_k_half(m: u32, z: &Real) -> Real {
    let mut sum = Real::zero();
    let two_z = z * &ri(2);
    let mut coef = Real::one(); // (m+j)!/(j!(m-j)!)
    for j in 0..=m {
        if j > 0 {
            coef = coef * ri((m + j) as i64) * ri((m + 1 - j) as i64) / ri(j as i64);
        }
        sum = sum + &coef / two_z.powi(j as i32);
    }
    let pref = (Real::pi() / &two_z).sqrt() * (-z).exp();
    pref * sum
}

/// Contribution of one cross-section family to a product-Laplacian zeta:
/// `Σ_{λ ∈ N} Σ_{k >= k0} (λ + (πk/a)²)^{-s}` without the pair `(0, 0)`.
struct Family<'a> {
    a: f64,
    n: &'a SpectrumStream,
    /// `+1` when `k = 0` is included, `-1` otherwise.
    sign: i64,
}

impl Family<'_> {
    /// Value at an integer `s >= 2`.
    fn value(&self, s: i64) -> Result<(Real, f64)> {
        let a = r(self.a);
        let sr = ri(s);
        let pi = Real::pi();
        let zeros = ri(self.n.kernel_dim() as i64);
        let zero_part = zeros * (&a / &pi).powi(2 * s as i32) * riemann_zeta(&ri(2 * s))?;
        let sh = &sr - &half();
        let lead = &a / (ri(2) * pi.sqrt()) * gamma(&sh)? / gamma(&sr)? * base_zeta(self.n, &sh)?;
        let local = base_zeta(self.n, &sr)? * half() * ri(self.sign);
        let pref = ri(2) / (pi.sqrt() * gamma(&sr)?) * a.powr(&(&sr + &half()));
        let m = (s - 1) as u32;
        let scale = (&zero_part + &lead).abs().to_f64().max(1.0);
        let pref_f = pref.to_f64().abs();
        let mut bound = 0.0;
        let (bessel, outer) = geometric_tail_sum(
            |k| {
                let Some((lam, mult)) = base_mode(self.n, k) else { return Ok(None) };
                let root = lam.sqrt();
                let (chain, b) = geometric_tail_sum(
                    |n| {
                        let nr = ri(n as i64);
                        let z = ri(2) * &nr * &a * &root;
                        Ok(sized((&nr / &root).powr(&sh) * bessel_k_half(m, &z)))
                    },
                    scale / pref_f,
                )?;
                bound += b * pref_f * mult as f64;
                Ok(sized(&pref * chain * ri(mult as i64)))
            },
            scale,
        )?;
        Ok((zero_part + lead + bessel + local, bound + outer + ROUNDING))
    }

    fn value_at_zero(&self) -> Result<Real> {
        let zeros = ri(self.n.kernel_dim() as i64);
        Ok(-(zeros * half()) + base_zeta(self.n, &Real::zero())? * half() * ri(self.sign))
    }

    fn deriv_at_zero(&self) -> Result<(Real, f64)> {
        let a = r(self.a);
        let zeros = ri(self.n.kernel_dim() as i64);
        let zero_part = -(zeros * (ri(2) * &a).ln());
        let lead = -(&a * base_zeta(self.n, &-half())?);
        let local = base_zeta_deriv0(self.n)? * half() * ri(self.sign);
        let scale = (&zero_part + &lead).abs().to_f64().max(1.0);
        let (corr, bound) = geometric_tail_sum(
            |k| {
                let Some((lam, mult)) = base_mode(self.n, k) else { return Ok(None) };
                let q = (-(ri(2) * &a * lam.sqrt())).exp();
                Ok(sized(-((Real::one() - q).ln()) * ri(mult as i64)))
            },
            scale,
        )?;
        Ok((zero_part + lead + corr + local, bound + ROUNDING))
    }
}

fn families(p: &crate::spectra::ProductLaplacian) -> Vec<Family<'_>> {
    let sign = match p.bc {
        Boundary::Absolute => 1,
        Boundary::Dirichlet => -1,
    };
    let mut v = vec![Family { a: p.a, n: &p.n_q, sign }];
    if let Some(n) = &p.n_qm1 {
        v.push(Family { a: p.a, n, sign: -1 });
    }
    v
}

// ---- product Dirichlet-to-Neumann -------------------------------------

/// `λ^{-s/2} [(1 + c₊)^{-s} + (1 - c₋)^{-s} - 2]` summed over the positive
/// cross-section spectrum.
fn dtn_correction(a: f64, n: &SpectrumStream, s: &Real) -> Result<(Real, f64)> {
    let ar = r(a);
    geometric_tail_sum(
        |k| {
            let Some((lam, mult)) = base_mode(n, k) else { return Ok(None) };
            let root = lam.sqrt();
            let x = &ar * &root;
            let ex = x.exp();
            let cp = ri(2) / (&ex - Real::one());
            let cm = ri(2) / (&ex + Real::one());
            let f = |c: Real| (-(s * &c.ln())).exp();
            let t = f(Real::one() + cp) + f(Real::one() - cm) - ri(2);
            Ok(sized((-(s * &root.ln())).exp() * t * ri(mult as i64)))
        },
        1.0,
    )
}

/// `-Σ [ln(1 + c₊) + ln(1 - c₋)]`, the derivative at zero of the correction.
fn dtn_correction_deriv0(a: f64, n: &SpectrumStream) -> Result<(Real, f64)> {
    let ar = r(a);
    geometric_tail_sum(
        |k| {
            let Some((lam, mult)) = base_mode(n, k) else { return Ok(None) };
            let ex = (&ar * lam.sqrt()).exp();
            let cp = ri(2) / (&ex - Real::one());
            let cm = ri(2) / (&ex + Real::one());
            // the two logarithms cancel; their individual size drives the
            // stopping rule and the tail bound
            let size = 2.0 * (mult as f64) * (cp.to_f64() + cm.to_f64() / (1.0 - cm.to_f64()));
            let t = (Real::one() + &cp).ln() + (Real::one() - &cm).ln();
            Ok(Some((-(t * ri(mult as i64)), size)))
        },
        1.0,
    )
}

// ---- public API ----------------------------------------------------------

/// `ζ(s) = Σ' λ^{-s}`, zero modes excluded.
pub fn zeta(spec: &SpectrumStream, s: f64) -> Result<ZetaValue> {
    let sr = check_s(s)?;
    match spec.kind() {
        Kind::Affine(_) | Kind::Explicit(_) => Ok(ZetaValue::closed(base_zeta(spec, &sr)?)),
        Kind::ProductLaplacian(p) => {
            if s == 0.0 {
                let v = families(p).iter().try_fold(Real::zero(), |acc, f| Ok::<_, Error>(acc + f.value_at_zero()?))?;
                return Ok(ZetaValue { value: v, error_bound: ROUNDING, method: Method::StructuredCorrection });
            }
            if s == 1.0 {
                return Err(Error::Pole("product zeta at s = 1".into()));
            }
            if s.fract() == 0.0 && s >= 2.0 {
                let mut v = Real::zero();
                let mut b = 0.0;
                for f in families(p) {
                    let (x, e) = f.value(s as i64)?;
                    v = v + x;
                    b += e;
                }
                return Ok(ZetaValue { value: v, error_bound: b, method: Method::StructuredCorrection });
            }
            if s > 1.0 {
                return zeta_truncated(spec, s, 4000);
            }
            Err(Error::Unsupported(format!("product zeta at s = {s}: continuation only at integers")))
        }
        Kind::ProductDtn(d) => {
            let ell = ri(d.n_q.kernel_dim() as i64);
            let kernel = ell * (r(d.a / 2.0).ln() * &sr).exp();
            let main = base_zeta(&d.n_q, &(&sr * &half()))? * ri(2);
            let (corr, b) = dtn_correction(d.a, &d.n_q, &sr)?;
            Ok(ZetaValue { value: kernel + main + corr, error_bound: b + ROUNDING, method: Method::StructuredCorrection })
        }
    }
}

/// `ζ'(0)`.
pub fn zeta_deriv_at_zero(spec: &SpectrumStream) -> Result<ZetaValue> {
    match spec.kind() {
        Kind::Affine(_) | Kind::Explicit(_) => Ok(ZetaValue::closed(base_zeta_deriv0(spec)?)),
        Kind::ProductLaplacian(p) => {
            let mut v = Real::zero();
            let mut b = 0.0;
            for f in families(p) {
                let (x, e) = f.deriv_at_zero()?;
                v = v + x;
                b += e;
            }
            Ok(ZetaValue { value: v, error_bound: b, method: Method::StructuredCorrection })
        }
        Kind::ProductDtn(d) => {
            let ell = ri(d.n_q.kernel_dim() as i64);
            let kernel = ell * r(d.a / 2.0).ln();
            let main = base_zeta_deriv0(&d.n_q)?;
            let (corr, b) = dtn_correction_deriv0(d.a, &d.n_q)?;
            Ok(ZetaValue { value: kernel + main + corr, error_bound: b + ROUNDING, method: Method::StructuredCorrection })
        }
    }
}

/// `ln Det* = -ζ'(0)`.
pub fn logdet_star(spec: &SpectrumStream) -> Result<ZetaValue> {
    let d = zeta_deriv_at_zero(spec)?;
    Ok(ZetaValue { value: -d.value, ..d })
}

/// Affine tail `Σ_{k > K} mult (c k^p)^{-t}`, bounded by the integral from `K`.
fn affine_tail(a: &Affine, t: f64, k: u64) -> f64 {
    let e = a.p as f64 * t - 1.0;
    a.mult as f64 * a.c.powf(-t) * (k as f64).powf(-e) / e
}

/// Partial sum with a rigorous bound on the omitted tail; `terms` modes
/// are summed in each infinite direction. Requires `s` above the
/// convergence abscissa.
pub fn zeta_truncated(spec: &SpectrumStream, s: f64, terms: u64) -> Result<ZetaValue> {
    // compensated summation; the rounding error is at most
    // (2u + n u²) Σ|x| with u the unit roundoff
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut count = 0u64;
    let mut tail = 0.0f64;
    let mut add = |x: f64, m: u64, sum: &mut f64| {
        let y = m as f64 * x - comp;
        let t = *sum + y;
        comp = (t - *sum) - y;
        *sum = t;
        count += 1;
    };
    let below = |what: &str| Error::Unsupported(format!("{what}: s = {s} is below the convergence abscissa"));
    let cross = |n: &SpectrumStream| -> Result<(Vec<(f64, u64)>, Option<Affine>)> {
        match n.kind() {
            Kind::Affine(a) => Ok(((1..=terms).map(|k| (a.eigenvalue(k), a.mult)).collect(), Some(a.clone()))),
            Kind::Explicit(_) => Ok((n.positive_modes().map(|e| (e.eigenvalue, e.multiplicity)).collect(), None)),
            _ => Err(Error::Unsupported("nested product".into())),
        }
    };
    match spec.kind() {
        Kind::Affine(a) => {
            if a.p as f64 * s <= 1.0 {
                return Err(below("affine series"));
            }
            for k in 1..=terms {
                add(a.eigenvalue(k).powf(-s), a.mult, &mut sum);
            }
            tail += affine_tail(a, s, terms);
        }
        Kind::Explicit(_) => {
            for e in spec.positive_modes() {
                add(e.eigenvalue.powf(-s), e.multiplicity, &mut sum);
            }
        }
        Kind::ProductLaplacian(p) => {
            if s <= 1.0 {
                return Err(below("product series"));
            }
            let step = std::f64::consts::PI / p.a;
            // ∫_0^∞ (λ + (πx/a)²)^{-s} dx = (a/(2√π)) Γ(s-1/2)/Γ(s) λ^{1/2-s}
            let g = (p.a / (2.0 * std::f64::consts::PI.sqrt()))
                * (gamma(&r(s - 0.5))? / gamma(&r(s))?).to_f64();
            let fams: Vec<(&SpectrumStream, u64)> = families(p)
                .iter()
                .map(|f| (f.n, if f.sign > 0 { 0 } else { 1 }))
                .collect();
            for (n, k0) in fams {
                let (modes, aff) = cross(n)?;
                let mut lam = vec![(0.0, n.kernel_dim())];
                lam.extend(modes);
                for (l, m) in lam {
                    if m == 0 {
                        continue;
                    }
                    let start = k0.max(u64::from(l == 0.0));
                    for k in start..=terms {
                        add((l + (step * k as f64).powi(2)).powf(-s), m, &mut sum);
                    }
                    // Σ_{k > K} (λ + (πk/a)²)^{-s} <= ∫_K^∞ (πx/a)^{-2s} dx
                    tail += m as f64 * step.powf(-2.0 * s) * (terms as f64).powf(1.0 - 2.0 * s) / (2.0 * s - 1.0);
                }
                if let Some(a) = aff {
                    if a.p as f64 * (s - 0.5) <= 1.0 {
                        return Err(below("product series"));
                    }
                    // modes beyond the last: λ^{-s} + g λ^{1/2-s} each
                    tail += affine_tail(&a, s, terms) + g * affine_tail(&a, s - 0.5, terms);
                }
            }
        }
        Kind::ProductDtn(d) => {
            let ell = d.n_q.kernel_dim();
            add((2.0 / d.a).powf(-s), ell, &mut sum);
            let (modes, aff) = cross(&d.n_q)?;
            for &(l, m) in &modes {
                let (hi, lo) = dtn_pair(d.a, l);
                add(hi.powf(-s), m, &mut sum);
                add(lo.powf(-s), m, &mut sum);
            }
            if let Some(a) = aff {
                if a.p as f64 * s / 2.0 <= 1.0 {
                    return Err(below("DtN series"));
                }
                let next = a.eigenvalue(terms + 1);
                let t = (d.a * next.sqrt() / 2.0).tanh();
                tail += (1.0 + t.powf(-s)) * affine_tail(&a, s / 2.0, terms);
            }
        }
    }
    let u = f64::EPSILON / 2.0;
    // terms are positive, so Σ|x| is the sum itself; the extra `u` covers
    // the rounding of each term
    let rounding = (3.0 * u + count as f64 * u * u) * sum.abs() * 2.0;
    Ok(ZetaValue { value: r(sum), error_bound: tail + rounding, method: Method::TruncatedSeries })
}



/// The streams of a cylinder `[0, a] x N`.
pub struct Cylinder {
    pub abs: SpectrumStream,
    pub dir: SpectrumStream,
    pub dtn: SpectrumStream,
    pub n_q: SpectrumStream,
}

impl Cylinder {
    pub fn new(a: f64, n_q: &SpectrumStream, n_qm1: Option<&SpectrumStream>) -> Result<Cylinder> {
        use crate::spectra::{product_dtn_spectrum, product_laplacian_spectra};
        Ok(Cylinder {
            abs: product_laplacian_spectra(a, n_q, n_qm1, Boundary::Absolute)?,
            dir: product_laplacian_spectra(a, n_q, n_qm1, Boundary::Dirichlet)?,
            dtn: product_dtn_spectrum(a, n_q)?,
            n_q: n_q.clone(),
        })
    }

    pub fn ell(&self) -> u64 {
        self.n_q.kernel_dim()
    }
}

/// Determinant, zeta-difference and `ζ_Q(0)` identities on `[0, a] x N`,
/// each side computed independently.
pub fn verify_cylinder_identities(a: f64, n_q: &SpectrumStream, n_qm1: Option<&SpectrumStream>) -> Result<Report> {
    let cyl = Cylinder::new(a, n_q, n_qm1)?;
    let ell = cyl.ell() as f64;
    let mut checks = Vec::new();
    let ldq = logdet_star(&cyl.dtn)?;
    let ldn = logdet_star(n_q)?;
    checks.push(Check::new(
        "ln Det* Q",
        ldq.to_f64(),
        ell * (2.0 / a).ln() + ldn.to_f64(),
        1e-10,
        ldq.error_bound + ldn.error_bound,
        "product example: ln Det* Q = l_q ln(2/a) + ln Det* Delta_N",
    ));
    for s in [2.0, 3.0] {
        let za = zeta(&cyl.abs, s)?;
        let zd = zeta(&cyl.dir, s)?;
        let zn = zeta(n_q, s)?;
        checks.push(Check::new(
            &format!("zeta_abs({s}) - zeta_D({s})"),
            (za.value - zd.value).to_f64(),
            zn.to_f64(),
            1e-10,
            za.error_bound + zd.error_bound + zn.error_bound,
            "product example: zeta_abs - zeta_D = zeta_N",
        ));
    }
    let zq = zeta(&cyl.dtn, 0.0)?;
    let zn0 = zeta(n_q, 0.0)?;
    checks.push(Check::new(
        "zeta_Q(0)",
        zq.to_f64(),
        ell + 2.0 * zn0.to_f64(),
        1e-10,
        zq.error_bound,
        "product example: zeta_Q(0) = l_q + 2 zeta_N(0)",
    ));
    let worst = cyl
        .n_q
        .positive_modes()
        .take(200)
        .map(|e| {
            let x = a * e.eigenvalue.sqrt();
            ((2.0 / x.exp_m1()).ln_1p() + (-2.0 / (x.exp() + 1.0)).ln_1p()).abs()
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("max |ln(1+c+) + ln(1-c-)|", worst, 0.0, 1e-14, 0.0, "telescoping of paired DtN factors"));
    Ok(Report { title: format!("cylinder a = {a}"), checks })
}

/// `ζ_Q(0) + l_q = 2 [(ζ_abs(0) + l_q) - ζ_D(0)]` on `[0, a] x N`.
pub fn verify_zeta0_identity(a: f64, n_q: &SpectrumStream, n_qm1: Option<&SpectrumStream>) -> Result<Report> {
    let cyl = Cylinder::new(a, n_q, n_qm1)?;
    let ell = cyl.ell() as f64;
    let zq = zeta(&cyl.dtn, 0.0)?;
    let za = zeta(&cyl.abs, 0.0)?;
    let zd = zeta(&cyl.dir, 0.0)?;
    let lhs = zq.to_f64() + ell;
    let rhs = 2.0 * ((za.to_f64() + ell) - zd.to_f64());
    Ok(Report {
        title: format!("zeta(0) identity, cylinder a = {a}"),
        checks: vec![Check::new(
            "zeta_Q(0) + l_q",
            lhs,
            rhs,
            1e-10,
            zq.error_bound + za.error_bound + zd.error_bound,
            "zeta_Q(0) + l_q = 2[(zeta_abs(0) + l_q) - zeta_D(0)]",
        )],
    })
}

#[cfg(test)]
mod tests;
