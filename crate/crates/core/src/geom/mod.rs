//! Boundary quadrature geometries and the curvature integrals, Gram
//! determinants and variation checks evaluated on them.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden;
use crate::symbolint::invariants::{CDensity, Inv};
use crate::report::{Check, Report};

/// One boundary quadrature node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Node {
    /// Weight of the boundary measure `dy`.
    pub w: f64,
    /// Principal curvatures of the boundary at the node.
    pub kappa: Vec<f64>,
    #[serde(rename = "tau_M", default)]
    pub tau_m: f64,
    #[serde(rename = "tau_Y", default)]
    pub tau_y: f64,
    /// Optional ambient coordinates, used to sample test functions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
}

/// Boundary data of a compact manifold with boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometrySpec {
    pub m: u32,
    pub nodes: Vec<Node>,
    #[serde(rename = "V")]
    pub volume: f64,
    #[serde(rename = "ellY")]
    pub ell_y: f64,
    /// Boundary traces of an orthonormal basis of harmonic fields, one row
    /// per basis element, `nodes.len() * components` entries each.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<f64>>>,
}

/// Boundary traces of an orthonormal basis of harmonic fields.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicBasis {
    pub traces: Vec<Vec<f64>>,
}

/// Normalised first and second mean curvatures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanCurvatures {
    pub h1: f64,
    h2: Option<f64>,
}

impl MeanCurvatures {
    pub fn h2(&self) -> Result<f64> {
        self.h2.ok_or_else(|| Error::Invalid("H2 needs at least two principal curvatures".into()))
    }
}

pub fn mean_curvatures(kappas: &[f64]) -> Result<MeanCurvatures> {
    let n = kappas.len();
    if n == 0 {
        return Err(Error::Invalid("no principal curvatures".into()));
    }
    let h1 = kappas.iter().sum::<f64>() / n as f64;
    let h2 = (n >= 2).then(|| {
        let mut e2 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                e2 += kappas[i] * kappas[j];
            }
        }
        2.0 * e2 / (n * (n - 1)) as f64
    });
    Ok(MeanCurvatures { h1, h2 })
}

impl Node {
    fn invariant(&self, v: Inv) -> Result<f64> {
        let mc = mean_curvatures(&self.kappa)?;
        match v {
            Inv::Kappa if self.kappa.len() == 1 => Ok(self.kappa[0]),
            Inv::H1 => Ok(mc.h1),
            Inv::H2 => mc.h2(),
            Inv::TauM => Ok(self.tau_m),
            Inv::TauY => Ok(self.tau_y),
            _ => Err(Error::Unresolved(format!("{v} is not carried by a geometry node"))),
        }
    }
}

fn check_positive(what: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Schema(format!("{what} must be positive and finite, got {x}")))
    }
}

impl GeometrySpec {
    pub fn new(m: u32, nodes: Vec<Node>, volume: f64, ell_y: f64, basis: Option<Vec<Vec<f64>>>) -> Result<Self> {
        let g = GeometrySpec { m, nodes, volume, ell_y, basis };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.m) {
            return Err(Error::Unsupported(format!("dimension {}", self.m)));
        }
        check_positive("V", self.volume)?;
        check_positive("ellY", self.ell_y)?;
        if self.nodes.is_empty() {
            return Err(Error::Schema("no quadrature nodes".into()));
        }
        for (i, n) in self.nodes.iter().enumerate() {
            check_positive(&format!("weight of node {i}"), n.w)?;
            if n.kappa.len() != self.m as usize - 1 {
                return Err(Error::Schema(format!("node {i}: expected {} curvatures", self.m - 1)));
            }
            if n.kappa.iter().chain([&n.tau_m, &n.tau_y]).any(|x| !x.is_finite()) {
                return Err(Error::Schema(format!("node {i}: non-finite field")));
            }
            if self.m == 2 && n.tau_y != 0.0 {
                return Err(Error::Schema(format!("node {i}: tau_Y must vanish on a curve")));
            }
        }
        let total: f64 = self.nodes.iter().map(|n| n.w).sum();
        if (total - self.ell_y).abs() > 1e-12 * self.ell_y.max(1.0) {
            return Err(Error::Schema(format!("weights sum to {total}, ellY is {}", self.ell_y)));
        }
        if let Some(b) = &self.basis {
            self.harmonic_basis_from(b.clone())?;
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: GeometrySpec = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("geometry serialises")
    }

    /// `unit-disk`, `unit-ball` or `cylinder(a,L)`.
    pub fn builtin(name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "unit-disk" => unit_disk(256),
            "unit-ball" => unit_ball(32),
            _ => {
                let args = name
                    .strip_prefix("cylinder(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Invalid(format!("unknown geometry {name}")))?;
                let v: Vec<f64> = args
                    .split(',')
                    .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Invalid(format!("{t}: {e}"))))
                    .collect::<Result<_>>()?;
                match v[..] {
                    [a, l] => cylinder(a, l, 64),
                    _ => Err(Error::Invalid("cylinder takes (a,L)".into())),
                }
            }
        }
    }

    fn harmonic_basis_from(&self, traces: Vec<Vec<f64>>) -> Result<HarmonicBasis> {
        if traces.is_empty() {
            return Err(Error::Schema("empty harmonic basis".into()));
        }
        let n = self.nodes.len();
        let len = traces[0].len();
        if len == 0 || len % n != 0 || traces.iter().any(|t| t.len() != len) {
            return Err(Error::Schema(format!("basis traces must have a common length divisible by {n}")));
        }
        if traces.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Schema("non-finite basis trace".into()));
        }
        Ok(HarmonicBasis { traces })
    }

    pub fn harmonic_basis(&self) -> Result<HarmonicBasis> {
        let b = self.basis.clone().ok_or_else(|| Error::Invalid("geometry carries no harmonic basis".into()))?;
        self.harmonic_basis_from(b)
    }

    /// The same boundary for the metric `c² g`.
    pub fn rescale(&self, c: f64) -> Result<Self> {
        check_positive("scale", c)?;
        let m = self.m as i32;
        let nodes = self
            .nodes
            .iter()
            .map(|n| Node {
                w: n.w * c.powi(m - 1),
                kappa: n.kappa.iter().map(|k| k / c).collect(),
                tau_m: n.tau_m / (c * c),
                tau_y: n.tau_y / (c * c),
                x: n.x.as_ref().map(|x| x.iter().map(|t| t * c).collect()),
            })
            .collect();
        let f = c.powf(-(m as f64) / 2.0);
        let basis = self.basis.as_ref().map(|b| b.iter().map(|t| t.iter().map(|x| x * f).collect()).collect());
        GeometrySpec::new(self.m, nodes, self.volume * c.powi(m), self.ell_y * c.powi(m - 1), basis)
    }

    /// `∫_Y p dy` for a density with constant coefficients.
    pub fn integrate(&self, p: &CDensity) -> Result<f64> {
        let terms: Vec<_> = p.sorted_terms().into_iter().map(|(m, c)| (m.clone(), c.value().to_f64())).collect();
        let mut acc = 0.0;
        for n in &self.nodes {
            let mut v = 0.0;
            for (mono, c) in &terms {
                let mut t = *c;
                for (inv, e) in mono {
                    t *= n.invariant(*inv)?.powi(*e);
                }
                v += t;
            }
            acc += n.w * v;
        }
        Ok(acc)
    }
}

fn form_degree(m: u32, q: u32) -> Result<u8> {
    if q < m {
        Ok(q as u8)
    } else {
        Err(Error::Unsupported(format!("(m, q) = ({m}, {q})")))
    }
}

/// Constant term `a_0` of the gluing identity, as a boundary integral.
pub fn a0_constant(geom: &GeometrySpec, q: u32) -> Result<f64> {
    let q = form_degree(geom.m, q)?;
    let p = if geom.m == 2 { golden::a0_dim2(q)? } else { golden::a0_dim3(q)? };
    geom.integrate(&p)
}

/// `ζ_Q(0) + l_q` as a boundary integral.
pub fn zeta0_constant(geom: &GeometrySpec, q: u32) -> Result<f64> {
    let q = form_degree(geom.m, q)?;
    let p = if geom.m == 2 { golden::zeta0_dim2(q)? } else { golden::zeta0_dim3(q)? };
    geom.integrate(&p)
}

/// Gram matrix of the boundary traces.
pub fn gram_matrix(basis: &HarmonicBasis, geom: &GeometrySpec) -> Result<DMatrix<f64>> {
    let n = geom.nodes.len();
    let k = basis.traces.len();
    let len = basis.traces[0].len();
    if len % n != 0 || basis.traces.iter().any(|t| t.len() != len) {
        return Err(Error::Schema(format!("basis traces do not conform to {n} nodes")));
    }
    let comp = len / n;
    Ok(DMatrix::from_fn(k, k, |i, j| {
        let (a, b) = (&basis.traces[i], &basis.traces[j]);
        geom.nodes
            .iter()
            .enumerate()
            .map(|(p, node)| node.w * (0..comp).map(|c| a[p * comp + c] * b[p * comp + c]).sum::<f64>())
            .sum()
    }))
}

/// `det S` for the Gram matrix of boundary traces.
pub fn det_s(basis: &HarmonicBasis, geom: &GeometrySpec) -> Result<f64> {
    let s = gram_matrix(basis, geom)?;
    let scale = s.diagonal().iter().cloned().fold(0.0, f64::max);
    let chol = s
        .cholesky()
        .ok_or_else(|| Error::Invalid("singular Gram matrix: boundary traces are dependent".into()))?;
    let l = chol.l();
    let d: f64 = l.diagonal().iter().map(|x| x * x).product();
    let k = basis.traces.len() as i32;
    if !(d > 1e-13 * scale.powi(k)) {
        return Err(Error::Invalid("singular Gram matrix: boundary traces are dependent".into()));
    }
    Ok(d)
}

/// `(ln Det* Δ_abs − ln Det Δ_D) − (a_0 − ln det S + ln Det* Q)`.
pub fn assemble_gluing_identity(
    geom: &GeometrySpec,
    q: u32,
    logdet_abs: f64,
    logdet_d: f64,
    logdet_q: f64,
    basis: &HarmonicBasis,
) -> Result<f64> {
    let a0 = a0_constant(geom, q)?;
    let ds = det_s(basis, geom)?;
    Ok((logdet_abs - logdet_d) - (a0 - ds.ln() + logdet_q))
}

/// Samples of a test function for the conformal variation: value and
/// inward normal derivative at each boundary node, and `(weight, value)`
/// at interior quadrature points.
#[derive(Clone, Debug, Default)]
pub struct VariationSamples {
    pub boundary_value: Vec<f64>,
    pub boundary_normal: Vec<f64>,
    pub interior: Vec<(f64, f64)>,
}

/// Tensor Gauss rule on the unit disk: `(weight, [x1, x2])`.
pub fn disk_interior_nodes(radial: usize, angular: usize) -> Result<Vec<(f64, [f64; 2])>> {
    let nr = NonZeroUsize::new(radial).ok_or_else(|| Error::Invalid("radial order must be positive".into()))?;
    if angular == 0 {
        return Err(Error::Invalid("angular order must be positive".into()));
    }
    let rule = GaussLegendre::new(nr);
    let dt = 2.0 * PI / angular as f64;
    let mut out = Vec::with_capacity(radial * angular);
    for (x, w) in rule.iter() {
        let r = 0.5 * (x + 1.0);
        for k in 0..angular {
            let t = k as f64 * dt;
            out.push((0.5 * w * r * dt, [r * t.cos(), r * t.sin()]));
        }
    }
    Ok(out)
}

/// Samples `f` (returning value and gradient) on a geometry whose boundary
/// nodes carry coordinates on the unit circle, and on a Gauss rule of the
/// unit disk.
pub fn sample_on_disk(geom: &GeometrySpec, f: impl Fn([f64; 2]) -> (f64, [f64; 2])) -> Result<VariationSamples> {
    let mut s = VariationSamples::default();
    for (i, n) in geom.nodes.iter().enumerate() {
        let x = match n.x.as_deref() {
            Some(&[a, b]) => [a, b],
            _ => return Err(Error::Invalid(format!("node {i} has no planar coordinates"))),
        };
        let (v, g) = f(x);
        let r = x[0].hypot(x[1]);
        s.boundary_value.push(v);
        s.boundary_normal.push(-(g[0] * x[0] + g[1] * x[1]) / r);
    }
    for (w, x) in disk_interior_nodes(48, 96)? {
        s.interior.push((w, f(x).0));
    }
    Ok(s)
}

/// First variation of `ln(Det* Q / ℓ(Y))` for functions on a surface under
/// `g → e^{2εF} g`, assembled term by term from the variations of the
/// boundary length, curvature, volume and heat invariants.
pub fn conformal_variation_check(geom: &GeometrySpec, f: &VariationSamples) -> Result<Report> {
    if geom.m != 2 {
        return Err(Error::Unsupported(format!("conformal check in dimension {}", geom.m)));
    }
    let n = geom.nodes.len();
    if f.boundary_value.len() != n {
        return Err(Error::Invalid("boundary values do not match the nodes".into()));
    }
    if f.boundary_normal.len() != n {
        return Err(Error::Invalid("missing normal-derivative samples".into()));
    }
    if f.interior.is_empty() {
        return Err(Error::Invalid("missing interior samples".into()));
    }
    let by = |g: &dyn Fn(usize, &Node) -> f64| -> f64 { geom.nodes.iter().enumerate().map(|(i, nd)| nd.w * g(i, nd)).sum() };
    let (fv, fn_) = (&f.boundary_value, &f.boundary_normal);
    // d/dε of κ(ε) dy(ε): (−Fκ − F_n) dy + κ F dy
    let curvature = -by(&|i, nd| (-fv[i] * nd.kappa[0] - fn_[i]) + nd.kappa[0] * fv[i]) / (2.0 * PI);
    let int_f: f64 = f.interior.iter().map(|(w, v)| w * v).sum();
    let volume = -2.0 * int_f / geom.volume;
    let heat_diff = by(&|i, _| fn_[i]) / (4.0 * PI);
    let determinants = -2.0 * heat_diff + 2.0 * int_f / geom.volume;
    let total = curvature + volume + determinants;
    Ok(Report {
        title: "conformal variation of ln(Det* Q / l(Y)), functions on a surface".into(),
        checks: vec![Check::new(
            "d/de ln(Det* Q / l(Y))",
            total,
            0.0,
            1e-8,
            (curvature.abs() + volume.abs() + determinants.abs()) * 4.0 * f64::EPSILON,
            "conformal invariance of Det* Q / l(Y)",
        )],
    })
}

fn circle_nodes(count: usize, radius: f64, kappa: f64) -> Vec<Node> {
    let dt = 2.0 * PI / count as f64;
    (0..count)
        .map(|k| {
            let t = k as f64 * dt;
            Node { w: radius * dt, kappa: vec![kappa], tau_m: 0.0, tau_y: 0.0, x: Some(vec![radius * t.cos(), radius * t.sin()]) }
        })
        .collect()
}

/// Unit disk with `count` equally spaced boundary nodes and the constant
/// harmonic function as basis.
pub fn unit_disk(count: usize) -> Result<GeometrySpec> {
    let basis = vec![vec![1.0 / PI.sqrt(); count]];
    GeometrySpec::new(2, circle_nodes(count, 1.0, 1.0), PI, 2.0 * PI, Some(basis))
}

/// Unit ball in `R³`: Gauss–Legendre in the polar cosine, uniform in the
/// azimuth.
pub fn unit_ball(order: usize) -> Result<GeometrySpec> {
    let nz = NonZeroUsize::new(order).ok_or_else(|| Error::Invalid("order must be positive".into()))?;
    let rule = GaussLegendre::new(nz);
    let na = 2 * order;
    let dp = 2.0 * PI / na as f64;
    let mut nodes = Vec::with_capacity(order * na);
    for (z, w) in rule.iter() {
        let r = (1.0 - z * z).sqrt();
        for k in 0..na {
            let p = k as f64 * dp;
            nodes.push(Node { w: w * dp, kappa: vec![1.0, 1.0], tau_m: 0.0, tau_y: 2.0, x: Some(vec![r * p.cos(), r * p.sin(), *z]) });
        }
    }
    let v = 4.0 * PI / 3.0;
    let basis = vec![vec![1.0 / v.sqrt(); nodes.len()]];
    GeometrySpec::new(3, nodes, v, 4.0 * PI, Some(basis))
}

/// `[0, a] x S¹(L)`: two flat boundary circles. The basis holds the
/// normalised constant, which also traces the unit harmonic one-form along
/// the circle.
pub fn cylinder(a: f64, l: f64, per_end: usize) -> Result<GeometrySpec> {
    check_positive("a", a)?;
    check_positive("L", l)?;
    if per_end == 0 {
        return Err(Error::Invalid("node count must be positive".into()));
    }
    let r = l / (2.0 * PI);
    let mut nodes = circle_nodes(per_end, r, 0.0);
    nodes.extend(circle_nodes(per_end, r, 0.0));
    let basis = vec![vec![1.0 / (a * l).sqrt(); nodes.len()]];
    GeometrySpec::new(2, nodes, a * l, 2.0 * l, Some(basis))
}
