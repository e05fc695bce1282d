//! Excited states obtained by applying creation operators to a lowest-weight vector.

use crate::algebra::{Operator, ParamPoly};
use crate::generators::{ladder_ops, Family, GeneratorSet};

use super::lwv::LowestWeight;
use super::state::{apply, StateFn};

/// `a†_{w_0} a†_{w_1} ⋯ a†_{w_k} ψ` (1-based ladder indices, rightmost acts first).
pub fn raise(creators: &[Operator], word: &[usize], psi: &StateFn) -> StateFn {
    word.iter().rev().fold(psi.clone(), |s, &i| apply(&creators[i - 1], &s).expect("dims agree"))
}

pub fn creators(gs: &GeneratorSet) -> Vec<Operator> {
    ladder_ops(gs).into_iter().map(|(_, ad)| ad).collect()
}

pub fn annihilators(gs: &GeneratorSet) -> Vec<Operator> {
    ladder_ops(gs).into_iter().map(|(a, _)| a).collect()
}

/// Creation words spanning level `n` of one lowest-weight representation.
///
/// klein-n1: `(a₁†)^n`; klein-n2: `(a₁†)^k (a₃†)^{n-k}`; nonklein:
/// `(a₁†)^n` and `(a₁†)^{n-1} a₂†`.
pub fn level_words(family: Family, n: usize) -> Vec<Vec<usize>> {
    match family {
        Family::KleinN2 => (0..=n).rev().map(|k| [vec![1; k], vec![3; n - k]].concat()).collect(),
        Family::NonKleinN2 if n > 0 => vec![vec![1; n], [vec![1; n - 1], vec![2]].concat()],
        _ => vec![vec![1; n]],
    }
}

#[derive(Clone, Debug)]
pub struct TowerState {
    pub rep: String,
    pub word: Vec<usize>,
    pub level: usize,
    pub energy: ParamPoly,
    pub state: StateFn,
}

/// Level `n` words applied to `lw`, energies `E_lwv + n`.
pub fn tower(gs: &GeneratorSet, lw: &LowestWeight, n_max: usize) -> Vec<TowerState> {
    let cr = creators(gs);
    let mut out = Vec::new();
    for n in 0..=n_max {
        for word in level_words(gs.family, n) {
            out.push(TowerState {
                rep: lw.label.clone(),
                state: raise(&cr, &word, &lw.state),
                energy: &lw.energy + &ParamPoly::from_int(n as i64),
                level: n,
                word,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{build_klein_n1, build_klein_n2, build_nonklein, hamiltonian_osc};
    use crate::spectral::{eigenvalue, lowest_weight_states};
    use crate::algebra::linear::Echelon;

    #[test]
    fn tower_states_are_eigenstates() {
        for gs in [build_klein_n1(), build_klein_n2(), build_nonklein()] {
            let h = hamiltonian_osc(&gs);
            for lw in lowest_weight_states(&gs) {
                for t in tower(&gs, &lw, 3) {
                    assert_eq!(eigenvalue(&h, &t.state), Some(t.energy.clone()), "{} {:?}", t.rep, t.word);
                }
            }
        }
    }

    fn rank(states: &[&StateFn]) -> usize {
        let c: Vec<_> = states.iter().map(|s| s.coords()).collect();
        Echelon::new(&c).rank()
    }

    #[test]
    fn klein_n2_same_grading_towers_share_levels() {
        let gs = build_klein_n2();
        let l = lowest_weight_states(&gs);
        let (t0, t1) = (tower(&gs, &l[0], 3), tower(&gs, &l[1], 3));
        for n in 0..=3 {
            let one: Vec<_> = t0.iter().filter(|s| s.level == n).map(|s| &s.state).collect();
            let both: Vec<_> = t0.iter().chain(&t1).filter(|s| s.level == n).map(|s| &s.state).collect();
            assert_eq!(rank(&one), if n == 0 { 1 } else { 2 });
            assert_eq!(rank(&both), 2);
        }
    }

    #[test]
    fn nonklein_psi3_is_excited_but_annihilated_by_a2() {
        let gs = build_nonklein();
        let lws = lowest_weight_states(&gs);
        let psi3 = raise(&creators(&gs), &[1], &lws[0].state);
        assert!(apply(&annihilators(&gs)[1], &psi3).unwrap().is_zero());
        assert!(!apply(&annihilators(&gs)[0], &psi3).unwrap().is_zero());
        let e = eigenvalue(&hamiltonian_osc(&gs), &psi3).unwrap();
        assert_eq!(e, &lws[0].energy + &ParamPoly::from_int(1));
    }
}
