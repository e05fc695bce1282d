//! Admissible Hilbert spaces, vacua and the `D(2,1;α)` domain geometry.
//!
//! A lowest-weight vector `|x|^p e^{-x²/2}` is normalizable on the line iff
//! `p > -½`; every decision below reduces to that test. Reports list all
//! admissible options and never pick one on the caller's behalf.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{rat, rat_string, rat_to_f64, Rational};
use crate::error::{Error, Result};
use crate::generators::{Family, ModelSpec};
use crate::spectral::{lowest_weight_states, LowestWeight};

/// Exact rational when available, always a float.
#[derive(Clone, Debug, PartialEq)]
pub struct Num {
    pub exact: Option<Rational>,
    pub value: f64,
}

impl Num {
    pub fn exact(r: Rational) -> Self {
        Num { value: rat_to_f64(&r), exact: Some(r) }
    }

    pub fn approx(v: f64) -> Self {
        Num { exact: None, value: v }
    }

    pub fn to_json(&self) -> Value {
        json!({ "exact": self.exact.as_ref().map(rat_string), "value": self.value })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    HalfLineDirichlet,
    FullLineL2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LwvEntry {
    pub label: String,
    pub exponent: Num,
    pub normalizable: bool,
    pub energy: Num,
    pub bosonic: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HilbertOption {
    pub id: String,
    pub reps: Vec<String>,
    pub boundary: Boundary,
    /// Lowest-energy representations of the option (several when degenerate).
    pub vacuum: Vec<String>,
    pub vacuum_energy: Num,
    pub note: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum FundamentalDomain {
    FD1,
    FD2,
    FD3,
    FD4,
    FD5,
    FD6,
}

impl fmt::Display for FundamentalDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FundamentalDomain {
    pub const ALL: [FundamentalDomain; 6] = [Self::FD1, Self::FD2, Self::FD3, Self::FD4, Self::FD5, Self::FD6];

    /// `(lower, lower closed, upper, upper closed)`; `None` is infinite.
    pub fn interval(&self) -> (Option<Rational>, bool, Option<Rational>, bool) {
        match self {
            Self::FD1 => (None, false, Some(rat(-2, 1)), true),
            Self::FD2 => (Some(rat(-2, 1)), true, Some(rat(-1, 1)), false),
            Self::FD3 => (Some(rat(-1, 1)), false, Some(rat(-1, 2)), true),
            Self::FD4 => (Some(rat(-1, 2)), true, Some(rat(0, 1)), false),
            Self::FD5 => (Some(rat(0, 1)), false, Some(rat(1, 1)), true),
            Self::FD6 => (Some(rat(1, 1)), true, None, false),
        }
    }

    pub fn contains(&self, a: &Rational) -> bool {
        let (lo, lc, hi, hc) = self.interval();
        let above = lo.is_none_or(|l| if lc { *a >= l } else { *a > l });
        let below = hi.is_none_or(|h| if hc { *a <= h } else { *a < h });
        above && below
    }

    pub fn describe(&self) -> String {
        let (lo, lc, hi, hc) = self.interval();
        format!(
            "{}{}, {}{}",
            if lc { "[" } else { "(" },
            lo.map_or("-inf".into(), |r| rat_string(&r)),
            hi.map_or("inf".into(), |r| rat_string(&r)),
            if hc { "]" } else { ")" }
        )
    }
}

/// Domains containing `α`: two at a shared endpoint, none at `α ∈ {0, -1}`.
pub fn fundamental_domain(alpha: &Rational) -> Vec<FundamentalDomain> {
    FundamentalDomain::ALL.into_iter().filter(|d| d.contains(alpha)).collect()
}

pub fn alpha_of_beta(beta: &Rational) -> Rational {
    beta - rat(1, 2)
}

/// `D(2,1;α)` is not simple at these values.
pub fn is_degenerate_alpha(alpha: &Rational) -> bool {
    alpha.is_zero() || *alpha == rat(-1, 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport {
    pub alpha: Rational,
    /// `α, 1/α, -(1+α), -1/(1+α), -(1+α)/α, -α/(1+α)`; `None` where undefined.
    pub elements: Vec<(&'static str, Option<Rational>)>,
    pub degenerate: bool,
}

impl OrbitReport {
    pub fn values(&self) -> BTreeSet<Rational> {
        self.elements.iter().filter_map(|(_, v)| v.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": rat_string(&self.alpha),
            "elements": self.elements.iter().map(|(e, v)| json!({"expr": e, "value": v.as_ref().map(rat_string)})).collect::<Vec<_>>(),
            "values": self.values().iter().map(rat_string).collect::<Vec<_>>(),
            "degenerate": self.degenerate,
            "note": if self.degenerate { "alpha in {0,-1}: algebra no longer simple" } else { "" },
            "domains": self.values().iter().map(|v| json!({"value": rat_string(v), "domains": fundamental_domain(v).iter().map(|d| d.to_string()).collect::<Vec<_>>()})).collect::<Vec<_>>(),
        })
    }
}

pub fn s3_orbit(alpha: &Rational) -> OrbitReport {
    let a = alpha.clone();
    let one = Rational::one();
    let inv = |x: Rational| (!x.is_zero()).then(|| one.clone() / x);
    let ap1 = &a + &one;
    let elements = vec![
        ("alpha", Some(a.clone())),
        ("1/alpha", inv(a.clone())),
        ("-(1+alpha)", Some(-ap1.clone())),
        ("-1/(1+alpha)", inv(ap1.clone()).map(|x| -x)),
        ("-(1+alpha)/alpha", inv(a.clone()).map(|x| -(&ap1 * x))),
        ("-alpha/(1+alpha)", inv(ap1.clone()).map(|x| -(&a * x))),
    ];
    OrbitReport { degenerate: is_degenerate_alpha(&a), alpha: a, elements }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertModel {
    KleinN1,
    KleinN2,
    NonKleinN2,
    Dff,
}

impl FromStr for HilbertModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "klein-n1" => Ok(Self::KleinN1),
            "klein-n2" => Ok(Self::KleinN2),
            "nonklein-n2" | "nonklein" => Ok(Self::NonKleinN2),
            "dff" => Ok(Self::Dff),
            _ => Err(Error::UnknownModel(s.to_string())),
        }
    }
}

impl fmt::Display for HilbertModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::KleinN1 => "klein-n1",
            Self::KleinN2 => "klein-n2",
            Self::NonKleinN2 => "nonklein-n2",
            Self::Dff => "dff",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport {
    pub model: HilbertModel,
    pub param: (&'static str, Rational),
    pub case: String,
    pub lowest_weight: Vec<LwvEntry>,
    pub options: Vec<HilbertOption>,
    pub alpha: Option<Rational>,
    pub domains: Vec<FundamentalDomain>,
    pub flags: Vec<String>,
    pub chosen: Option<String>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        !self.options.is_empty()
    }

    pub fn option(&self, id: &str) -> Option<&HilbertOption> {
        self.options.iter().find(|o| o.id == id)
    }

    /// Record the caller's selection.
    pub fn choose(mut self, id: &str) -> Result<Self> {
        if self.option(id).is_none() {
            let ids: Vec<_> = self.options.iter().map(|o| o.id.as_str()).collect();
            return Err(Error::InvalidArgument(format!("unknown option `{id}`; available: {}", ids.join(", "))));
        }
        self.chosen = Some(id.to_string());
        Ok(self)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "model": self.model.to_string(),
            "parameter": { "name": self.param.0, "value": rat_string(&self.param.1) },
            "case": self.case,
            "admissible": self.admissible(),
            "lowest_weight_states": self.lowest_weight.iter().map(|l| json!({
                "label": l.label,
                "exponent": l.exponent.to_json(),
                "normalizable": l.normalizable,
                "energy": l.energy.to_json(),
                "grading": l.bosonic.map(|b| if b { "bosonic" } else { "fermionic" }),
            })).collect::<Vec<_>>(),
            "options": self.options.iter().map(|o| json!({
                "id": o.id,
                "representations": o.reps,
                "boundary": o.boundary,
                "vacuum": o.vacuum,
                "vacuum_energy": o.vacuum_energy.to_json(),
                "note": o.note,
            })).collect::<Vec<_>>(),
            "alpha": self.alpha.as_ref().map(rat_string),
            "fundamental_domains": self.domains.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "flags": self.flags,
            "chosen": self.chosen,
        })
    }
}

fn normalizable(p: &Rational) -> bool {
    *p > rat(-1, 2)
}

/// Lowest-weight vectors of a deformed model at a rational parameter value.
pub fn evaluated_lwvs(family: Family, v: &Rational) -> Result<Vec<(LowestWeight, Rational, Rational)>> {
    let name = family.parameter().ok_or_else(|| Error::Unsupported(format!("{family} has no parameter")))?;
    let sub = BTreeMap::from([(name.to_string(), v.clone())]);
    let gs = ModelSpec::symbolic(family).build()?;
    lowest_weight_states(&gs)
        .into_iter()
        .map(|lw| {
            let p = lw.exponent.substitute(&sub).as_constant().cloned();
            let e = lw.energy.substitute(&sub).as_rational();
            match (p, e) {
                (Some(p), Some(e)) => Ok((lw, p, e)),
                _ => Err(Error::InvalidArgument(format!("{family}: lowest weight {} does not evaluate", lw.label))),
            }
        })
        .collect()
}

fn option_from(id: &str, reps: &[&(LowestWeight, Rational, Rational)], note: &str) -> HilbertOption {
    let e0 = reps.iter().map(|r| r.2.clone()).min().expect("non-empty option");
    HilbertOption {
        id: id.to_string(),
        reps: reps.iter().map(|r| r.0.label.clone()).collect(),
        boundary: Boundary::FullLineL2,
        vacuum: reps.iter().filter(|r| r.2 == e0).map(|r| r.0.label.clone()).collect(),
        vacuum_energy: Num::exact(e0),
        note: note.to_string(),
    }
}

fn lwv_entries(lws: &[(LowestWeight, Rational, Rational)]) -> Vec<LwvEntry> {
    lws.iter()
        .map(|(lw, p, e)| LwvEntry {
            label: lw.label.clone(),
            exponent: Num::exact(p.clone()),
            normalizable: normalizable(p),
            energy: Num::exact(e.clone()),
            bosonic: Some(lw.is_bosonic()),
        })
        .collect()
}

pub fn classify_klein_n1(beta: &Rational) -> Result<AdmissibilityReport> {
    let lws = evaluated_lwvs(Family::KleinN1, beta)?;
    let norm: Vec<_> = lws.iter().filter(|l| normalizable(&l.1)).collect();
    let (case, options) = match norm.as_slice() {
        [one] if one.0.is_bosonic() => ("i", vec![option_from("single-bos", &norm, "single lowest weight representation")]),
        [_] => ("ii", vec![option_from("single-fer", &norm, "single lowest weight representation")]),
        [b, f] => {
            let delta = &b.2 - &f.2;
            let note = format!("direct sum; Delta = E_Bos - E_Fer = {}", rat_string(&delta));
            (
                "iii",
                vec![
                    option_from("iiia-bos", &[*b], "single representation on the bosonic lowest weight"),
                    option_from("iiia-fer", &[*f], "single representation on the fermionic lowest weight"),
                    option_from("iiib-sum", &norm, &note),
                ],
            )
        }
        _ => ("none", vec![]),
    };
    let mut flags = Vec::new();
    if beta.is_zero() {
        flags.push("degenerate ground state: undeformed oscillator".into());
    }
    Ok(AdmissibilityReport {
        model: HilbertModel::KleinN1,
        param: ("beta", beta.clone()),
        case: case.into(),
        lowest_weight: lwv_entries(&lws),
        options,
        alpha: None,
        domains: vec![],
        flags,
        chosen: None,
    })
}

pub fn classify_klein_n2(beta: &Rational) -> Result<AdmissibilityReport> {
    let lws = evaluated_lwvs(Family::KleinN2, beta)?;
    let norm: Vec<_> = lws.iter().filter(|l| normalizable(&l.1)).collect();
    let bos = norm.iter().filter(|l| l.0.is_bosonic()).count();
    let fer = norm.len() - bos;
    let (case, id) = match (bos, fer) {
        (2, 0) => ("i", "sum-bos"),
        (0, 2) => ("ii", "sum-fer"),
        (2, 2) => ("iii", "sum-all"),
        _ => ("none", ""),
    };
    let options = if id.is_empty() { vec![] } else { vec![option_from(id, &norm, "direct sum of lowest weight representations")] };
    let alpha = alpha_of_beta(beta);
    let mut flags = Vec::new();
    if is_degenerate_alpha(&alpha) {
        flags.push(format!("alpha = {}: superalgebra A(1,1) + su(2), not simple", rat_string(&alpha)));
    }
    if let Some(o) = options.first() {
        if o.vacuum_energy.exact.as_ref() == Some(&-alpha.clone()) {
            flags.push("vacuum energy equals -alpha".into());
        }
    }
    Ok(AdmissibilityReport {
        model: HilbertModel::KleinN2,
        param: ("beta", beta.clone()),
        case: case.into(),
        lowest_weight: lwv_entries(&lws),
        options,
        domains: fundamental_domain(&alpha),
        alpha: Some(alpha),
        flags,
        chosen: None,
    })
}

pub fn classify_nonklein(nu: &Rational) -> Result<AdmissibilityReport> {
    let lws = evaluated_lwvs(Family::NonKleinN2, nu)?;
    let norm: Vec<_> = lws.iter().filter(|l| normalizable(&l.1)).collect();
    let options = if norm.is_empty() { vec![] } else { vec![option_from("single", &norm, "single lowest weight representation")] };
    let mut flags = Vec::new();
    if nu.is_zero() {
        flags.push("nu = 0: no normalizable lowest weight vector".into());
    }
    Ok(AdmissibilityReport {
        model: HilbertModel::NonKleinN2,
        param: ("nu", nu.clone()),
        case: if norm.is_empty() { "none".into() } else { "single".into() },
        lowest_weight: lwv_entries(&lws),
        options,
        alpha: None,
        domains: vec![],
        flags,
        chosen: None,
    })
}

/// Exact rational square root, if any.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// `β_± = (1 ± √(1+4g))/2`.
pub fn dff_betas(g: &Rational) -> Option<(Num, Num)> {
    let disc = rat(1, 1) + g * rat(4, 1);
    if disc.is_negative() {
        return None;
    }
    let half = rat(1, 2);
    Some(match rational_sqrt(&disc) {
        Some(s) => (Num::exact((rat(1, 1) + &s) * &half), Num::exact((rat(1, 1) - s) * half)),
        None => {
            let s = rat_to_f64(&disc).sqrt();
            (Num::approx((1.0 + s) / 2.0), Num::approx((1.0 - s) / 2.0))
        }
    })
}

/// `H = ½(-∂² + g/x² + x²)`, lowest weights `Ψ_β = x^β e^{-x²/2}` with `g = β² - β`.
pub fn classify_dff(g: &Rational) -> AdmissibilityReport {
    let mut rep = AdmissibilityReport {
        model: HilbertModel::Dff,
        param: ("g", g.clone()),
        case: "none".into(),
        lowest_weight: vec![],
        options: vec![],
        alpha: None,
        domains: vec![],
        flags: vec![],
        chosen: None,
    };
    let Some((bp, bm)) = dff_betas(g) else {
        rep.flags.push("g < -1/4: complex beta, no real spectrum".into());
        return rep;
    };
    let energy = |b: &Num| match &b.exact {
        Some(r) => Num::exact(r + rat(1, 2)),
        None => Num::approx(b.value + 0.5),
    };
    let quarter = rat(-1, 4);
    let three_q = rat(3, 4);
    // β₊ ≥ ½ always; β₋ > -½ iff g < ¾
    let minus_ok = *g < three_q;
    let entry = |label: &str, b: &Num, ok: bool| LwvEntry {
        label: label.into(),
        exponent: b.clone(),
        normalizable: ok,
        energy: energy(b),
        bosonic: None,
    };
    let opt = |id: &str, reps: &[(&str, &Num)], boundary, note: &str| {
        let (vl, vb) = reps.iter().min_by(|a, b| a.1.value.total_cmp(&b.1.value)).expect("non-empty");
        HilbertOption {
            id: id.into(),
            reps: reps.iter().map(|r| r.0.to_string()).collect(),
            boundary,
            vacuum: vec![vl.to_string()],
            vacuum_energy: energy(vb),
            note: note.into(),
        }
    };
    if *g == quarter {
        rep.case = "i".into();
        rep.lowest_weight = vec![entry("Psi_beta", &bp, true)];
        rep.options = vec![opt("single", &[("Psi_beta", &bp)], Boundary::HalfLineDirichlet, "beta_+ = beta_- = 1/2")];
        return rep;
    }
    rep.lowest_weight = vec![entry("Psi_beta+", &bp, true), entry("Psi_beta-", &bm, minus_ok)];
    let both = [("Psi_beta+", &bp), ("Psi_beta-", &bm)];
    let plus = [("Psi_beta+", &bp)];
    if g.is_negative() {
        rep.case = "ii".into();
        rep.options = vec![opt("sum", &both, Boundary::HalfLineDirichlet, "both beta positive; ground state Psi_beta-")];
    } else if g.is_zero() {
        rep.case = "iii".into();
        rep.options = vec![opt("sum", &both, Boundary::FullLineL2, "ordinary oscillator: even tower on beta_- = 0, odd tower on beta_+ = 1")];
    } else if minus_ok {
        rep.case = "iv".into();
        rep.options = vec![
            opt("single-plus", &plus, Boundary::HalfLineDirichlet, "single representation on Psi_beta+"),
            opt("sum", &both, Boundary::FullLineL2, "direct sum; ground state Psi_beta-"),
        ];
    } else {
        rep.case = "v".into();
        rep.options = vec![opt("single-plus", &plus, Boundary::HalfLineDirichlet, "beta_- <= -1/2 is not normalizable")];
    }
    rep
}

/// Dispatch on a model id.
pub fn classify(model: HilbertModel, v: &Rational) -> Result<AdmissibilityReport> {
    match model {
        HilbertModel::KleinN1 => classify_klein_n1(v),
        HilbertModel::KleinN2 => classify_klein_n2(v),
        HilbertModel::NonKleinN2 => classify_nonklein(v),
        HilbertModel::Dff => Ok(classify_dff(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_n1_middle_range_offers_three_options() {
        let r = classify_klein_n1(&rat(3, 10)).unwrap();
        assert_eq!(r.case, "iii");
        let ids: Vec<_> = r.options.iter().map(|o| o.id.as_str()).collect();
        assert_eq!(ids, ["iiia-bos", "iiia-fer", "iiib-sum"]);
        let sum = r.option("iiib-sum").unwrap();
        assert_eq!(sum.vacuum, ["Bos"]);
        assert_eq!(sum.vacuum_energy.exact, Some(rat(1, 5)));
        assert!(r.chosen.is_none());
        assert!(r.clone().choose("nope").is_err());
        assert_eq!(r.choose("iiia-fer").unwrap().chosen.as_deref(), Some("iiia-fer"));
    }

    #[test]
    fn klein_n1_edges() {
        let r = classify_klein_n1(&rat(1, 1)).unwrap();
        assert_eq!((r.case.as_str(), r.options[0].vacuum_energy.exact.clone()), ("ii", Some(rat(3, 2))));
        assert_eq!(classify_klein_n1(&rat(1, 2)).unwrap().case, "ii");
        assert_eq!(classify_klein_n1(&rat(-1, 2)).unwrap().case, "i");
        let r = classify_klein_n1(&rat(0, 1)).unwrap();
        assert_eq!(r.option("iiib-sum").unwrap().vacuum.len(), 2);
    }

    #[test]
    fn klein_n2_fd4_vacuum_is_minus_alpha() {
        let r = classify_klein_n2(&rat(1, 5)).unwrap();
        assert_eq!(r.alpha, Some(rat(-3, 10)));
        assert_eq!(r.domains, [FundamentalDomain::FD4]);
        let o = &r.options[0];
        assert_eq!(o.reps.len(), 4);
        assert_eq!(o.vacuum.len(), 2);
        assert_eq!(o.vacuum_energy.exact, Some(rat(3, 10)));
        let r = classify_klein_n2(&rat(1, 2)).unwrap();
        assert!(r.flags.iter().any(|f| f.contains("not simple")));
        assert!(r.domains.is_empty());
    }

    #[test]
    fn nonklein_vacuum() {
        assert!(!classify_nonklein(&rat(0, 1)).unwrap().admissible());
        let r = classify_nonklein(&rat(7, 10)).unwrap();
        assert_eq!(r.options[0].vacuum, ["Psi2"]);
        let r = classify_nonklein(&rat(-3, 10)).unwrap();
        assert_eq!(r.options[0].vacuum, ["Psi1"]);
        assert_eq!(r.options[0].vacuum_energy.exact, Some(rat(3, 10)));
    }

    #[test]
    fn dff_cases() {
        let cases: Vec<_> = [rat(-1, 2), rat(-1, 4), rat(-1, 10), rat(0, 1), rat(1, 2), rat(3, 4), rat(1, 1)]
            .iter()
            .map(|g| classify_dff(g).case)
            .collect();
        assert_eq!(cases, ["none", "i", "ii", "iii", "iv", "v", "v"]);
        let r = classify_dff(&rat(1, 1));
        assert!((r.lowest_weight[0].exponent.value - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
        assert_eq!(classify_dff(&rat(1, 2)).options.len(), 2);
    }

    #[test]
    fn domains_at_endpoints() {
        let fd = |a: Rational| fundamental_domain(&a);
        use FundamentalDomain::*;
        assert_eq!(fd(rat(-2, 1)), [FD1, FD2]);
        assert_eq!(fd(rat(-1, 2)), [FD3, FD4]);
        assert_eq!(fd(rat(1, 1)), [FD5, FD6]);
        assert!(fd(rat(0, 1)).is_empty() && fd(rat(-1, 1)).is_empty());
        assert_eq!(fd(rat(-1, 4)), [FD4]);
    }

    #[test]
    fn orbit_of_one() {
        let o = s3_orbit(&rat(1, 1));
        assert_eq!(o.values(), BTreeSet::from([rat(1, 1), rat(-2, 1), rat(-1, 2)]));
        assert!(s3_orbit(&rat(0, 1)).degenerate);
    }
}
