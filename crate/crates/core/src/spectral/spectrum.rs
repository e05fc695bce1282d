//! Energy levels of an admissible Hilbert space.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::linear::Echelon;
use crate::algebra::{json as js, rat_string, rat_to_f64, ParamPoly, Rational};
use crate::error::{Error, Result};
use crate::generators::{Family, ModelSpec};
use crate::hilbert::{classify, AdmissibilityReport, HilbertModel};

use super::lwv::lowest_weight_states;
use super::tower::{creators, level_words, raise};

#[derive(Clone, Debug, PartialEq)]
pub struct LevelLabel {
    pub rep: String,
    pub epsilon: i8,
    pub rho: Option<i8>,
    /// Number of creation operators applied.
    pub n: usize,
    /// Fermion parity of the states.
    pub parity: i8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub energy: Rational,
    /// Symbolic energies of the contributing towers.
    pub formulas: Vec<ParamPoly>,
    pub degeneracy: usize,
    pub labels: Vec<LevelLabel>,
}

impl Level {
    /// Common parity of the level, if there is one.
    pub fn parity(&self) -> Option<i8> {
        let p = self.labels.first()?.parity;
        self.labels.iter().all(|l| l.parity == p).then_some(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRecord {
    pub family: Family,
    pub param: Rational,
    pub option: String,
    pub levels: Vec<Level>,
}

impl SpectrumRecord {
    /// Energies repeated by degeneracy, lowest first.
    pub fn expanded(&self) -> Vec<f64> {
        self.levels.iter().flat_map(|l| std::iter::repeat_n(rat_to_f64(&l.energy), l.degeneracy)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "model": self.family.to_string(),
            "parameter": { "name": self.family.parameter(), "value": rat_string(&self.param) },
            "hilbert_option": self.option,
            "levels": self.levels.iter().map(|l| json!({
                "energy": rat_string(&l.energy),
                "energy_value": rat_to_f64(&l.energy),
                "formulas": l.formulas.iter().map(js::poly).collect::<Vec<_>>(),
                "degeneracy": l.degeneracy,
                "parity": l.parity(),
                "labels": l.labels.iter().map(|b| json!({
                    "rep": b.rep, "epsilon": b.epsilon, "rho": b.rho, "n": b.n, "parity": b.parity,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn hilbert_model(f: Family) -> Result<HilbertModel> {
    match f {
        Family::KleinN1 => Ok(HilbertModel::KleinN1),
        Family::KleinN2 => Ok(HilbertModel::KleinN2),
        Family::NonKleinN2 => Ok(HilbertModel::NonKleinN2),
        Family::Undeformed(_) => Err(Error::Unsupported("spectrum needs a deformed family".into())),
    }
}

/// Admissibility report, and the option the spectrum is taken in: the
/// caller's choice, else the option with the most representations.
pub fn spectrum_option(family: Family, v: &Rational, choice: Option<&str>) -> Result<(AdmissibilityReport, String)> {
    let report = classify(hilbert_model(family)?, v)?;
    if !report.admissible() {
        return Err(Error::Inadmissible(format!(
            "{family} at {} = {}: no normalizable lowest weight vector (see classify)",
            family.parameter().unwrap_or("?"),
            rat_string(v)
        )));
    }
    let id = match choice {
        Some(c) => report.option(c).map(|o| o.id.clone()).ok_or_else(|| {
            Error::InvalidArgument(format!("option `{c}` not offered at this parameter (see classify)"))
        })?,
        None => report.options.iter().max_by_key(|o| o.reps.len()).expect("admissible").id.clone(),
    };
    Ok((report, id))
}

/// Lowest `n_levels` distinct energies; degeneracies are exact ranks of the
/// tower states at each energy.
pub fn spectrum(family: Family, v: &Rational, n_levels: usize, choice: Option<&str>) -> Result<SpectrumRecord> {
    let (report, id) = spectrum_option(family, v, choice)?;
    let reps = report.option(&id).expect("chosen option").reps.clone();
    let param = family.parameter().expect("deformed family");
    let sub = BTreeMap::from([(param.to_string(), v.clone())]);
    let gs = ModelSpec::with_value(family, v.clone()).build()?;
    let sym = lowest_weight_states(&ModelSpec::symbolic(family).build()?);
    let lws: Vec<_> = lowest_weight_states(&gs).into_iter().filter(|l| reps.contains(&l.label)).collect();
    let cr = creators(&gs);
    let mut by_energy: BTreeMap<Rational, Vec<(usize, usize)>> = BTreeMap::new();
    for (k, lw) in lws.iter().enumerate() {
        let e0 = lw.energy.as_rational().ok_or_else(|| Error::InvalidArgument("non-rational energy".into()))?;
        for n in 0..n_levels {
            by_energy.entry(&e0 + Rational::from_integer(n.into())).or_default().push((k, n));
        }
    }
    let levels = by_energy
        .into_iter()
        .take(n_levels)
        .map(|(energy, contrib)| {
            let mut coords = Vec::new();
            let mut labels = Vec::new();
            let mut formulas: Vec<ParamPoly> = Vec::new();
            for (k, n) in contrib {
                let lw = &lws[k];
                for w in level_words(family, n) {
                    coords.push(raise(&cr, &w, &lw.state).coords());
                }
                let parity = if n % 2 == 0 { lw.grading } else { -lw.grading };
                labels.push(LevelLabel { rep: lw.label.clone(), epsilon: lw.grading, rho: lw.rho, n, parity });
                if let Some(s) = sym.iter().find(|s| s.label == lw.label) {
                    let f = &s.energy + &ParamPoly::from_int(n as i64);
                    debug_assert_eq!(f.substitute(&sub).as_rational(), Some(energy.clone()));
                    if !formulas.contains(&f) {
                        formulas.push(f);
                    }
                }
            }
            Level { degeneracy: Echelon::new(&coords).rank(), energy, formulas, labels }
        })
        .collect();
    Ok(SpectrumRecord { family, param: v.clone(), option: id, levels })
}
