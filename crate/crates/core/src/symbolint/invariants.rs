//! Local invariants of a boundary point and recognition of integrated
//! densities in terms of them.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::specfun::{rat, Const, SFunction};
use crate::symbolcas::model::{at_base, ConnectionMode, JetModel};
use crate::symbolcas::symbol::{render_sym, var};
use crate::symbolcas::{Calculus, Frame, Poly, Sym, SymMatrix, Var};

/// Invariants in which densities are expressed. Traces are over the
/// tangential block and `TrOmAOmA` sums over tangential directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inv {
    /// Geodesic curvature of a boundary curve.
    Kappa,
    TauM,
    TauY,
    H1,
    H2,
    TrOmM,
    TrOmMOmM,
    TrOmAOmA,
    TrDOmA,
    TrDOmM,
    TrE,
}

impl Inv {
    pub fn name(self) -> &'static str {
        match self {
            Inv::Kappa => "kappa",
            Inv::TauM => "tau_M",
            Inv::TauY => "tau_Y",
            Inv::H1 => "H1",
            Inv::H2 => "H2",
            Inv::TrOmM => "Tr(w_m)",
            Inv::TrOmMOmM => "Tr(w_m w_m)",
            Inv::TrOmAOmA => "Tr(w_a w_a)",
            Inv::TrDOmA => "Tr(d_a w_a)",
            Inv::TrDOmM => "Tr(d_m w_m)",
            Inv::TrE => "Tr(E)",
        }
    }

    /// True for invariants built from the connection or the endomorphism.
    pub fn is_bundle(self) -> bool {
        matches!(
            self,
            Inv::TrOmM | Inv::TrOmMOmM | Inv::TrOmAOmA | Inv::TrDOmA | Inv::TrDOmM | Inv::TrE
        )
    }
}

impl fmt::Display for Inv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Inv {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

pub type InvMono = Vec<(Inv, i32)>;
/// Density as a function of `s`.
pub type SDensity = Poly<Inv, SFunction>;
/// Density with constant coefficients.
pub type CDensity = Poly<Inv, Const>;
/// Integrated density before recognition, over the geometric variables.
pub type GeoDensity = Poly<Var, SFunction>;

pub fn render_mono(m: &InvMono) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn render_sdensity(p: &SDensity) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.sorted_terms()
        .iter()
        .map(|(m, c)| format!("[{c}]*{}", render_mono(m)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_cdensity(p: &CDensity) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.sorted_terms()
        .iter()
        .map(|(m, c)| format!("({c})*{}", render_mono(m)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Renders a density whose coefficients share one constant monomial as
/// `common * (n1*m1 + n2*m2 + ...)` with integer `n_i`; otherwise as
/// `render_cdensity`.
pub fn render_factored(p: &CDensity) -> String {
    use num_integer::Integer;
    let terms = p.sorted_terms();
    let mut parts = Vec::new();
    for (m, c) in &terms {
        let mut it = c.terms();
        match (it.next(), it.next()) {
            (Some((cm, r)), None) => parts.push((*m, cm.clone(), r.clone())),
            _ => return render_cdensity(p),
        }
    }
    let Some(base) = parts.first().map(|t| t.1.clone()) else { return "0".into() };
    if parts.iter().any(|t| t.1 != base) {
        return render_cdensity(p);
    }
    let num = parts.iter().fold(num_bigint::BigInt::zero(), |g, t| g.gcd(t.2.numer()));
    let den = parts.iter().fold(num_bigint::BigInt::one(), |l, t| l.lcm(t.2.denom()));
    let common = BigRational::new(num, den);
    let mut body = String::new();
    for (i, (m, _, r)) in parts.iter().enumerate() {
        let k = (r / &common).to_integer();
        let neg = k < num_bigint::BigInt::zero();
        let a = if neg { -k } else { k };
        let sign = match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let coef = if a.is_one() { String::new() } else { format!("{a}*") };
        body.push_str(&format!("{sign}{coef}{}", render_mono(m)));
    }
    format!("{} * ({body})", Const::monomial(base, common))
}

fn inv(i: Inv) -> SDensity {
    SDensity::var(i)
}

fn real_part(c: &crate::symbolcas::QI) -> Result<BigRational> {
    if !c.im.is_zero() {
        return Err(Error::Invalid("invariant expansion with imaginary coefficient".into()));
    }
    Ok(c.re.clone())
}

/// Promote a rational polynomial to constant-coefficient form.
pub fn lift(p: &Sym) -> Result<GeoDensity> {
    let mut out = GeoDensity::zero();
    for (m, c) in p.terms() {
        out.add_term(m.clone(), SFunction::rational(real_part(c)?));
    }
    Ok(out)
}

struct Candidate {
    expansion: Sym,
    output: SDensity,
}

fn trace_t(frame: &Frame, m: &SymMatrix) -> Sym {
    (0..frame.n_t).fold(Sym::zero(), |acc, i| acc.add(m.get(i, i)))
}

/// Values at the base point of the connection data of a model.
pub struct BundleData {
    pub tr_om_m: Sym,
    pub tr_om_m_om_m: Sym,
    pub tr_om_a_om_a: Sym,
    pub tr_d_om_a: Sym,
    pub tr_d_om_m: Sym,
    pub tr_e: Sym,
}

impl BundleData {
    pub fn new(model: &JetModel) -> BundleData {
        let frame = &model.frame;
        let m = frame.m;
        let calc = Calculus::new(model);
        let base = |k: u8| model.omega[k as usize - 1].map(at_base);
        let om_m = base(m);
        let tr_om_m = trace_t(frame, &om_m);
        let tr_om_m_om_m = trace_t(frame, &om_m.mul(&om_m));
        let mut tr_om_a_om_a = Sym::zero();
        let mut tr_d_om_a = Sym::zero();
        for a in 1..m {
            let oa = base(a);
            tr_om_a_om_a.add_assign(&trace_t(frame, &oa.mul(&oa)));
            let d = model.omega[a as usize - 1].map(|e| at_base(&calc.d_coord(e, a)));
            tr_d_om_a.add_assign(&trace_t(frame, &d));
        }
        let d = model.omega[m as usize - 1].map(|e| at_base(&calc.d_coord(e, m)));
        let tr_d_om_m = trace_t(frame, &d);
        let tr_e = trace_t(frame, &model.endo);
        BundleData { tr_om_m, tr_om_m_om_m, tr_om_a_om_a, tr_d_om_a, tr_d_om_m, tr_e }
    }
}

fn kappa(a: u8) -> Sym {
    var(Var::Kappa(a))
}

fn candidates(model: &JetModel) -> Vec<Candidate> {
    let frame = &model.frame;
    let abstract_mode = model.mode == ConnectionMode::Abstract;
    let bundle = BundleData::new(model);
    let mut out = Vec::new();
    let mut push = |expansion: Sym, output: SDensity| {
        if !expansion.is_zero() {
            out.push(Candidate { expansion, output });
        }
    };
    let half = rat(1, 2);
    push(Sym::one(), SDensity::one());
    if frame.m == 2 {
        push(kappa(1), inv(Inv::Kappa));
    } else {
        push(
            var(Var::Rho(1, 1)).add(&var(Var::Rho(2, 2))),
            inv(Inv::TauM).scale(&half).sub(&inv(Inv::TauY).scale(&half)).add(&inv(Inv::H2)),
        );
        push(var(Var::CurvY), inv(Inv::TauY).scale(&half));
        push(
            kappa(1).mul(&kappa(1)).add(&kappa(2).mul(&kappa(2))),
            inv(Inv::H1).mul(&inv(Inv::H1)).scale(&rat(4, 1)).sub(&inv(Inv::H2).scale(&rat(2, 1))),
        );
        push(kappa(1).mul(&kappa(2)), inv(Inv::H2));
        push(kappa(1).add(&kappa(2)), inv(Inv::H1).scale(&rat(2, 1)));
    }
    if abstract_mode {
        push(bundle.tr_om_m.clone(), inv(Inv::TrOmM));
        if frame.m == 3 {
            push(
                kappa(1).add(&kappa(2)).mul(&bundle.tr_om_m),
                inv(Inv::H1).mul(&inv(Inv::TrOmM)).scale(&rat(2, 1)),
            );
        }
        push(bundle.tr_om_m_om_m.clone(), inv(Inv::TrOmMOmM));
        push(bundle.tr_om_a_om_a.clone(), inv(Inv::TrOmAOmA));
        push(bundle.tr_e.clone(), inv(Inv::TrE));
    }
    push(bundle.tr_d_om_a.clone(), inv(Inv::TrDOmA));
    push(bundle.tr_d_om_m.clone(), inv(Inv::TrDOmM));
    out
}

/// Rewrite an integrated density in terms of [`Inv`]. Fails with
/// [`Error::Unresolved`] when a remainder is not a combination of the
/// known invariants.
pub fn recognise(p: &GeoDensity, model: &JetModel) -> Result<SDensity> {
    let cands = candidates(model);
    let mut rest = p.clone();
    let mut out = SDensity::zero();
    for (i, c) in cands.iter().enumerate() {
        let sig = c
            .expansion
            .sorted_terms()
            .into_iter()
            .map(|(m, _)| m.clone())
            .find(|m| cands.iter().enumerate().all(|(j, o)| j == i || o.expansion.coeff(m).re.is_zero()))
            .ok_or_else(|| Error::Invalid(format!("no signature monomial for {}", render_sym(&c.expansion))))?;
        let lead = real_part(&c.expansion.coeff(&sig))?;
        let k = rest.coeff(&sig).scale_rational(&(BigRational::one() / lead));
        if k.is_zero() {
            continue;
        }
        for (m, e) in c.expansion.terms() {
            rest.add_term(m.clone(), -k.scale_rational(&real_part(e)?));
        }
        out.add_assign(&c.output.scale_c(&k));
    }
    if !rest.is_zero() {
        let left: Vec<String> = rest
            .sorted_terms()
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m.iter().map(|(v, e)| format!("{v}^{e}")).collect();
                format!("[{c}]*{}", mono.join("*"))
            })
            .collect();
        return Err(Error::Unresolved(left.join(" + ")));
    }
    Ok(out)
}

/// Replace bundle invariants of an abstract-mode density by their values
/// for the Hodge Laplacian on `q`-forms.
pub fn specialise(p: &SDensity, frame: &Frame) -> Result<SDensity> {
    let model = JetModel::new(frame, ConnectionMode::Concrete);
    let bundle = BundleData::new(&model);
    let value = |s: &Sym| -> Result<SDensity> { recognise(&lift(s)?, &model) };
    let table = [
        (Inv::TrOmM, value(&bundle.tr_om_m)?),
        (Inv::TrOmMOmM, value(&bundle.tr_om_m_om_m)?),
        (Inv::TrOmAOmA, value(&bundle.tr_om_a_om_a)?),
        (Inv::TrE, value(&bundle.tr_e)?),
    ];
    Ok(p.substitute(&mut |v| table.iter().find(|(k, _)| k == v).map(|(_, x)| x.clone())))
}

/// Value and derivative at `s = 0` of every coefficient.
pub fn at_zero(p: &SDensity) -> Result<(CDensity, CDensity)> {
    let mut val = CDensity::zero();
    let mut der = CDensity::zero();
    for (m, c) in p.terms() {
        let (v, d) = c.at_zero()?;
        val.add_term(m.clone(), v);
        der.add_term(m.clone(), d);
    }
    Ok((val, der))
}

pub fn sdensity_from_const(p: &CDensity) -> SDensity {
    let mut out = SDensity::zero();
    for (m, c) in p.terms() {
        out.add_term(m.clone(), SFunction::constant(c));
    }
    out
}

pub fn const_one() -> Const {
    Const::from_rational(BigRational::one())
}
