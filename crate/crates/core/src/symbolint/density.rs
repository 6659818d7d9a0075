//! Local densities of the boundary operator: `a_0`, `pi_j`, `q_j`, and the
//! term-by-term decomposition in dimension three.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::integrate::{integrate_trace, integrate_trace_even_first};
use super::invariants::{at_zero, recognise, render_cdensity, render_mono, render_sdensity, CDensity, SDensity};
use crate::error::{Error, Result};
use crate::specfun::{rat, Const};
use crate::symbolcas::resolvent::project;
use crate::symbolcas::symbol::{rinv_pow, Calculus};
use crate::symbolcas::{
    named_terms_r3, resolvent_expand, riccati_solve, ConnectionMode, Frame, JetModel, Resolvent, RiccatiSolution,
    SymMatrix,
};

/// Symbolic pipeline for a fixed dimension and form degree.
pub struct Pipeline {
    pub sol: RiccatiSolution,
    pub res: Resolvent,
}

impl Pipeline {
    pub fn new(m: u8, q: u8, mode: ConnectionMode) -> Result<Pipeline> {
        let frame = Frame::new(m, q)?;
        let sol = riccati_solve(&frame, mode)?;
        let res = resolvent_expand(&sol, m as usize)?;
        Ok(Pipeline { sol, res })
    }

    pub fn frame(&self) -> &Frame {
        self.sol.frame()
    }

    pub fn model(&self) -> &JetModel {
        &self.sol.lap.model
    }

    pub fn mode(&self) -> ConnectionMode {
        self.model().mode
    }

    fn d(&self) -> usize {
        self.frame().m as usize - 1
    }

    fn integrate(&self, mat: &SymMatrix) -> Result<SDensity> {
        recognise(&integrate_trace(mat, self.d())?, self.model())
    }

    /// `(2 pi)^{1-m} int int mu^{-s} Tr r_{-j}` as a density in `s`.
    pub fn resolvent_integral(&self, j: usize) -> Result<SDensity> {
        if j == 0 || j > self.res.r.len() {
            return Err(Error::Invalid(format!("resolvent term r_-{j} beyond the computed depth {}", self.res.r.len())));
        }
        self.integrate(self.res.r(j))
    }

    /// Same integral with odd monomials dropped before tracing.
    pub fn resolvent_integral_even_first(&self, j: usize) -> Result<SDensity> {
        recognise(&integrate_trace_even_first(self.res.r(j), self.d())?, self.model())
    }

    /// Named pieces of the top resolvent term `r_{-m}`.
    pub fn named_pieces(&self) -> Result<Vec<(&'static str, SymMatrix)>> {
        match self.frame().m {
            2 => {
                let c: &Calculus = &self.res.calc;
                let r1 = self.res.r(1);
                let a1 = project(&self.sol, &self.sol.alpha1);
                let a0 = project(&self.sol, &self.sol.alpha0);
                let rinv = rinv_pow(1);
                Ok(vec![
                    ("composition", c.compose_order(&a1, r1, 1).mul_sym(&rinv)),
                    ("alpha0", c.mat_mul(&a0, r1).mul_sym(&rinv)),
                ])
            }
            _ => named_terms_r3(&self.sol, &self.res),
        }
    }

    /// Integrals of the named pieces, in order.
    pub fn term_table(&self) -> Result<Vec<(&'static str, SDensity)>> {
        self.named_pieces()?.into_iter().map(|(l, t)| Ok((l, self.integrate(&t)?))).collect()
    }
}

/// A density together with the named pieces contributing to each monomial.
#[derive(Clone, Debug, Serialize)]
pub struct DensityResult {
    pub m: u8,
    pub q: u8,
    pub mode: String,
    pub quantity: String,
    #[serde(serialize_with = "ser_cdensity")]
    pub density: CDensity,
    pub sources: BTreeMap<String, Vec<String>>,
}

fn ser_cdensity<S: serde::Serializer>(p: &CDensity, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(p.len()))?;
    for (m, c) in p.sorted_terms() {
        map.serialize_entry(&render_mono(m), &c.to_string())?;
    }
    map.end()
}

impl DensityResult {
    pub fn render(&self) -> String {
        render_cdensity(&self.density)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).unwrap_or(Value::Null)
    }
}

fn mode_name(mode: ConnectionMode) -> String {
    match mode {
        ConnectionMode::Abstract => "abstract".into(),
        ConnectionMode::Concrete => "concrete".into(),
    }
}

/// `a_0(y) = d/ds|_{s=0}` of the integral of `Tr r_{-m}`.
pub fn density_a0(m: u8, q: u8, mode: ConnectionMode) -> Result<DensityResult> {
    let p = Pipeline::new(m, q, mode)?;
    let mut total = CDensity::zero();
    let mut sources: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (label, piece) in p.term_table()? {
        let (_, der) = at_zero(&piece)?;
        for (mono, c) in der.terms() {
            if !c.is_zero() {
                sources.entry(render_mono(mono)).or_default().push(label.to_string());
            }
        }
        total.add_assign(&der);
    }
    sources.retain(|k, _| total.terms().any(|(m, _)| render_mono(m) == *k));
    Ok(DensityResult { m, q, mode: mode_name(mode), quantity: "a0".into(), density: total, sources })
}

/// `pi_j(y) = -d/ds|_{s=0}` of the integral of `Tr r_{-1-j}`.
pub fn density_pi(j: usize, m: u8, q: u8, mode: ConnectionMode) -> Result<DensityResult> {
    if j + 1 > m as usize {
        return Err(Error::Invalid(format!("pi_{j} is beyond the computed depth for dimension {m}")));
    }
    let p = Pipeline::new(m, q, mode)?;
    let (_, der) = at_zero(&p.resolvent_integral(j + 1)?)?;
    let density = der.scale(&rat(-1, 1));
    Ok(DensityResult { m, q, mode: mode_name(mode), quantity: format!("pi{j}"), density, sources: BTreeMap::new() })
}

/// `q_j(y) = (1/2)` the integral of `Tr r_{-1-j}` at `s = 0`.
pub fn density_q(j: usize, m: u8, q: u8, mode: ConnectionMode) -> Result<DensityResult> {
    if j + 1 > m as usize {
        return Err(Error::Invalid(format!("q_{j} is beyond the computed depth for dimension {m}")));
    }
    let p = Pipeline::new(m, q, mode)?;
    let (val, _) = at_zero(&p.resolvent_integral(j + 1)?)?;
    let density = val.scale(&rat(1, 2));
    Ok(DensityResult { m, q, mode: mode_name(mode), quantity: format!("q{j}"), density, sources: BTreeMap::new() })
}

/// Difference of the first interior and boundary heat coefficients for
/// the absolute and Dirichlet problems on a surface boundary, a known
/// input rather than a derived quantity: `rank / (8 pi)`.
pub fn heat_difference_a1(q: u8) -> Result<Const> {
    let rank = Frame::new(3, q)?.n_t as i64;
    Ok(Const::sqrt_pi_pow(-2).scale(&rat(rank, 8)))
}

/// `a_1 = (heat difference) - pi_0` in dimension three.
pub fn a1_dim3(q: u8) -> Result<Const> {
    let pi0 = density_pi(0, 3, q, ConnectionMode::Concrete)?;
    let c = pi0.density.coeff(&Vec::new());
    if pi0.density.len() > usize::from(!c.is_zero()) {
        return Err(Error::Invalid("pi_0 is not a constant density".into()));
    }
    Ok(heat_difference_a1(q)? - c)
}

/// Structured derivation report: each named piece, its integral in `s`,
/// and value and derivative at zero.
pub fn derivation_report(m: u8, q: u8, mode: ConnectionMode) -> Result<Value> {
    let p = Pipeline::new(m, q, mode)?;
    let mut terms = Vec::new();
    let mut sum = SDensity::zero();
    for (label, piece) in p.term_table()? {
        let (val, der) = at_zero(&piece)?;
        sum.add_assign(&piece);
        terms.push(json!({
            "term": label,
            "integral": render_sdensity(&piece),
            "value_at_0": render_cdensity(&val),
            "derivative_at_0": render_cdensity(&der),
        }));
    }
    let (val, der) = at_zero(&sum)?;
    Ok(json!({
        "dimension": m,
        "form_degree": q,
        "mode": mode_name(mode),
        "terms": terms,
        "total": {
            "integral": render_sdensity(&sum),
            "value_at_0": render_cdensity(&val),
            "a0": render_cdensity(&der),
        }
    }))
}
