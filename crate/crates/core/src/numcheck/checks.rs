//! Quadrature norms and Gram matrices of tower states against closed forms.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{rat_string, rat_to_f64, Rational};
use crate::error::{Error, Result};
use crate::generators::{Family, ModelSpec, BETA};
use crate::spectral::norms::{klein_vacuum_norm, nonklein_inverse_norm_sq, nonklein_vacuum_norm};
use crate::spectral::{lowest_weight_states, norm_closed_form, tower, StateFn};

use super::quad::{quad_norm, quad_overlap};
use super::report::NumReport;

/// A state with the factor that should make it unit norm.
#[derive(Clone, Debug)]
pub struct NamedState {
    pub label: String,
    pub state: StateFn,
    pub scale: f64,
}

/// `scale_i scale_j ⟨i|j⟩` against the identity: diagonal within `tol`
/// relative, off-diagonal within `tol` absolute.
pub fn gram_matrix(states: &[NamedState], tol: f64) -> Result<NumReport> {
    let none = BTreeMap::new();
    let pairs: Vec<(usize, usize)> = (0..states.len()).flat_map(|i| (i..states.len()).map(move |j| (i, j))).collect();
    let entries = pairs
        .par_iter()
        .map(|&(i, j)| {
            let v = quad_overlap(&states[i].state, &states[j].state, &none)?;
            Ok(v.norm() * states[i].scale * states[j].scale)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut rep = NumReport::new(format!("gram matrix of {} states", states.len()));
    for (&(i, j), v) in pairs.iter().zip(entries) {
        let label = format!("<{}|{}>", states[i].label, states[j].label);
        rep.push(label, v, f64::from(u8::from(i == j)), tol, i == j);
    }
    Ok(rep)
}

fn beta_values(beta: &Rational) -> BTreeMap<String, Rational> {
    BTreeMap::from([(BETA.to_string(), beta.clone())])
}

/// klein-n1 towers up to `n_max` at `β`. Unit scale when `normalized` is false,
/// so the diagonal then reads `M_n Γ(½-εβ)` instead of 1.
pub fn klein_n1_states(beta: &Rational, n_max: usize, normalized: bool) -> Result<Vec<NamedState>> {
    let gs = ModelSpec::with_value(Family::KleinN1, beta.clone()).build()?;
    let mut out = Vec::new();
    for lw in lowest_weight_states(&gs) {
        let eps = lw.grading;
        let vac = klein_vacuum_norm(eps, rat_to_f64(beta))?;
        for t in tower(&gs, &lw, n_max) {
            let m = norm_closed_form(eps, t.level as u32).substitute(&beta_values(beta));
            let m = m.as_rational().map(|r| rat_to_f64(&r)).ok_or_else(|| Error::InvalidArgument("symbolic norm".into()))?;
            let scale = if normalized { vac / m.sqrt() } else { 1.0 };
            out.push(NamedState { label: format!("{}{}", lw.label, t.level), state: t.state, scale });
        }
    }
    Ok(out)
}

/// nonklein tower of the `ν > 0` vacuum: `|n,0⟩` and `|n-1,1⟩`, normalized.
pub fn nonklein_states(nu: &Rational, n_max: usize) -> Result<Vec<NamedState>> {
    let nuf = rat_to_f64(nu);
    if nuf <= 0.0 {
        return Err(Error::Inadmissible(format!("closed forms hold for nu > 0, got {}", rat_string(nu))));
    }
    let gs = ModelSpec::with_value(Family::NonKleinN2, nu.clone()).build()?;
    let vac = nonklein_vacuum_norm(nuf)?;
    let lw = lowest_weight_states(&gs).into_iter().find(|l| l.label == "Psi2").expect("Psi2");
    let sub = BTreeMap::from([(crate::generators::NU.to_string(), nu.clone())]);
    tower(&gs, &lw, n_max)
        .into_iter()
        .map(|t| {
            let (n, slot) = if t.word.last() == Some(&2) { (t.level - 1, 1u8) } else { (t.level, 0) };
            let inv = nonklein_inverse_norm_sq(n as u32, slot)?.substitute(&sub);
            let inv = inv.as_rational().map(|r| rat_to_f64(&r)).unwrap_or(f64::NAN);
            Ok(NamedState { label: format!("|{n},{slot}>"), state: t.state, scale: vac / inv.sqrt() })
        })
        .collect()
}

/// Quadrature norms against the `Γ` closed forms.
///
/// Vacua: `|∫|ψ₀|² - N⁻²| ≤ tol` absolute. Tower states up to `n_max`:
/// `∫|ψ_n|² / (M_n Γ(½-εβ))` within `tol` of 1.
pub fn norms_check(betas: &[Rational], nus: &[Rational], n_max: usize, tol: f64) -> Result<NumReport> {
    let mut rep = NumReport::new("quadrature norms against Gamma closed forms");
    let none = BTreeMap::new();
    for beta in betas {
        let b = rat_string(beta);
        let states = klein_n1_states(beta, n_max, false)?;
        let gs = ModelSpec::with_value(Family::KleinN1, beta.clone()).build()?;
        for lw in lowest_weight_states(&gs) {
            let eps = lw.grading;
            let reference = klein_vacuum_norm(eps, rat_to_f64(beta))?.powi(-2);
            let c = quad_norm(&lw.state, &none)?;
            rep.push(format!("klein-n1 beta={b} eps={eps:+} vacuum C_beta"), c, reference, tol, false);
            for n in 1..=n_max {
                let s = states.iter().find(|s| s.label == format!("{}{n}", lw.label)).expect("tower state");
                let m = norm_closed_form(eps, n as u32).substitute(&beta_values(beta));
                let m = rat_to_f64(&m.as_rational().expect("numeric"));
                rep.push(format!("klein-n1 beta={b} eps={eps:+} n={n} norm / M_n"), quad_norm(&s.state, &none)? / (m * reference), 1.0, tol, true);
            }
        }
    }
    for nu in nus {
        let gs = ModelSpec::with_value(Family::NonKleinN2, nu.clone()).build()?;
        let lw = lowest_weight_states(&gs).into_iter().find(|l| l.label == "Psi2").expect("Psi2");
        let reference = nonklein_vacuum_norm(rat_to_f64(nu))?.powi(-2);
        rep.push(format!("nonklein nu={} vacuum", rat_string(nu)), quad_norm(&lw.state, &none)?, reference, tol, false);
    }
    rep.notes.push("tolerances are the numerical contract of this tool".into());
    Ok(rep)
}
