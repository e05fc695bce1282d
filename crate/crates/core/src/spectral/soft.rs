//! Soft supersymmetry, ladder relations, phase equivalence and similarity checks.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{json as js, MatrixConst, Operator, ParamPoly, Scalar};
use crate::error::{Error, Result};
use crate::generators::{hamiltonian_osc, ladder_ops, z_operator, Family, GeneratorSet};

use super::lwv::lowest_weight_states;
use super::tower::{creators, raise};

#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub residual: Operator,
}

impl Identity {
    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub model: String,
    pub identities: Vec<Identity>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.identities.iter().all(Identity::pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "model": self.model,
            "pass": self.pass(),
            "identities": self.identities.iter().map(|i| json!({
                "name": i.name,
                "pass": i.pass(),
                "residual": js::operator(&i.residual),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `{a_I†, a_J†} = δ_IJ Z`, `[Z, a_I†] = 0` and `[H_osc, a_I^±] = ±a_I^±`.
pub fn soft_susy_check(gs: &GeneratorSet) -> Result<IdentityReport> {
    let z = z_operator(gs);
    let h = hamiltonian_osc(gs);
    let ladders = ladder_ops(gs);
    let mut ids = Vec::new();
    for (i, (_, ai)) in ladders.iter().enumerate() {
        for (j, (_, aj)) in ladders.iter().enumerate().skip(i) {
            let mut r = ai.anticommutator(aj)?;
            if i == j {
                r = &r - &z;
            }
            ids.push(Identity { name: format!("{{a{}+, a{}+}}", i + 1, j + 1), residual: r });
        }
    }
    for (i, (a, ad)) in ladders.iter().enumerate() {
        ids.push(Identity { name: format!("[Z, a{}+]", i + 1), residual: z.commutator(ad)? });
        ids.push(Identity { name: format!("[Hosc, a{}] + a{}", i + 1, i + 1), residual: &h.commutator(a)? + a });
        ids.push(Identity { name: format!("[Hosc, a{}+] - a{}+", i + 1, i + 1), residual: &h.commutator(ad)? - ad });
    }
    Ok(IdentityReport { model: gs.family.to_string(), identities: ids })
}

#[derive(Clone, Debug)]
pub struct PhaseEntry {
    pub rep: String,
    pub n: usize,
    /// `(a₂†)^n ψ = phase · (a₁†)^n ψ`.
    pub phase: Option<Scalar>,
}

#[derive(Clone, Debug)]
pub struct PhaseReport {
    pub entries: Vec<PhaseEntry>,
}

impl PhaseReport {
    /// Every ratio exists and lies in `{±1, ±i}`.
    pub fn pass(&self) -> bool {
        let units = [Scalar::one(), -&Scalar::one(), Scalar::i(), -&Scalar::i()];
        self.entries.iter().all(|e| e.phase.as_ref().is_some_and(|p| units.contains(p)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "entries": self.entries.iter().map(|e| json!({
                "rep": e.rep,
                "n": e.n,
                "phase": e.phase.as_ref().map(js::scalar),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Compare `(a₂†)^n` and `(a₁†)^n` on every lowest-weight vector of a two-supercharge model.
pub fn phase_equivalence_check(gs: &GeneratorSet, n_max: usize) -> Result<PhaseReport> {
    if gs.num_supercharges() != 2 {
        return Err(Error::Unsupported(format!("{} has {} supercharges", gs.family, gs.num_supercharges())));
    }
    let cr = creators(gs);
    let mut entries = Vec::new();
    for lw in lowest_weight_states(gs) {
        for n in 1..=n_max {
            let one = raise(&cr, &vec![1; n], &lw.state);
            let two = raise(&cr, &vec![2; n], &lw.state);
            entries.push(PhaseEntry { rep: lw.label.clone(), n, phase: two.ratio_to(&one) });
        }
    }
    Ok(PhaseReport { entries })
}

/// `S g(p) S = g(-p)` for the Hamiltonian and `H_osc`, with `S` an involutive constant matrix.
pub fn similarity_check(gs: &GeneratorSet, s: &MatrixConst) -> Result<IdentityReport> {
    let param = gs
        .family
        .parameter()
        .ok_or_else(|| Error::Unsupported(format!("{} has no parameter", gs.family)))?;
    if !(&(s * s) - &MatrixConst::identity(gs.dim())).is_zero() {
        return Err(Error::InvalidArgument("similarity matrix must square to the identity".into()));
    }
    let flip = BTreeMap::from([(param.to_string(), -&ParamPoly::var(param))]);
    let mut ids = Vec::new();
    for (name, op) in [("H", gs.h().clone()), ("Hosc", hamiltonian_osc(gs))] {
        let conj = op.sandwich(s, s);
        ids.push(Identity { name: format!("S {name}(p) S - {name}(-p)"), residual: &conj - &op.substitute_polys(&flip) });
    }
    Ok(IdentityReport { model: gs.family.to_string(), identities: ids })
}

/// The similarity matrix of each Klein family: `σ₁` at `n = 1`, `γ₄` at `n = 2`.
pub fn klein_similarity(gs: &GeneratorSet) -> Option<MatrixConst> {
    match gs.family {
        Family::KleinN1 => Some(gs.gammas.gamma(1).clone()),
        Family::KleinN2 => Some(gs.gammas.gamma(4).clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::pauli;
    use crate::generators::{build_klein_n1, build_klein_n2, build_nonklein};

    #[test]
    fn soft_algebra_holds() {
        for gs in [build_klein_n2(), build_nonklein()] {
            let r = soft_susy_check(&gs).unwrap();
            assert!(r.pass(), "{}", r.to_json());
        }
    }

    #[test]
    fn klein_n1_phases() {
        let r = phase_equivalence_check(&build_klein_n1(), 6).unwrap();
        assert!(r.pass(), "{}", r.to_json());
        assert_eq!(r.entries.len(), 12);
    }

    #[test]
    fn klein_similarities() {
        let gs = build_klein_n1();
        assert_eq!(klein_similarity(&gs).unwrap(), pauli()[0]);
        assert!(similarity_check(&gs, &pauli()[0]).unwrap().pass());
        let gs = build_klein_n2();
        assert!(similarity_check(&gs, &klein_similarity(&gs).unwrap()).unwrap().pass());
        // σ₃ commutes with H and does not flip β
        assert!(!similarity_check(&build_klein_n1(), &pauli()[2]).unwrap().pass());
    }
}
