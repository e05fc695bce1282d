use std::collections::BTreeMap;

use superosc::algebra::linear::reduce_operator;
use superosc::algebra::{rat, Operator, ParamPoly, Scalar};
use superosc::defsolver::*;
use superosc::generators::{dilatation, hamiltonian, oscillator_k, BETA};

/// Brute-force oracle: `{Q_I, Q_J} = 2δ_IJ H` and every graded bracket of
/// `{H, D, K, Q, Q̃, Σ}` lies in their span.
fn closes(c: &DeformationCandidate) -> bool {
    let v = c.potentials()[0].clone();
    let h = hamiltonian(&v);
    let qs = c.supercharges();
    for (i, a) in qs.iter().enumerate() {
        for (j, b) in qs.iter().enumerate() {
            let want = if i == j { h.scale(&Scalar::from_int(2)) } else { Operator::zero(c.dim()) };
            if !(&a.anticommutator(b).unwrap() - &want).is_zero() {
                return false;
            }
        }
    }
    let mut gens: Vec<(Operator, bool)> = vec![(h, false), (dilatation(c.dim()), false), (oscillator_k(c.dim()), false)];
    gens.extend(qs.into_iter().map(|q| (q, true)));
    gens.extend(c.conformal_supercharges().into_iter().map(|q| (q, true)));
    gens.extend(sigma_def(c).into_iter().map(|(_, m)| (Operator::constant(m), false)));
    let basis: Vec<Operator> = gens.iter().map(|g| g.0.clone()).collect();
    (0..gens.len()).all(|i| {
        (i..gens.len()).all(|j| {
            let b = gens[i].0.bracket(&gens[j].0, gens[i].1 && gens[j].1).unwrap();
            reduce_operator(&b, &basis).0.in_span()
        })
    })
}

#[test]
fn two_supercharge_nonklein_candidate_closes() {
    let c = DeformationCandidate::nonklein(&ParamPoly::from_rational(rat(1, 2)));
    assert!(closes(&c));
}

#[test]
fn four_supercharge_nonklein_family_closes() {
    let a = Ansatz::new(
        "paired",
        2,
        vec![1, 2, 3, 4],
        vec![vec![vec![2], vec![1, 0]], vec![vec![1], vec![2, 0]], vec![vec![4], vec![3, 0]], vec![vec![3], vec![4, 0]]],
    )
    .unwrap();
    let (sols, unresolved) = solve_ansatz(&a);
    assert_eq!(unresolved, 0);
    let fam: Vec<_> =
        sols.iter().filter(|s| s.classification == Classification::NonKlein && s.free.len() == 1).collect();
    assert_eq!(fam.len(), 2);
    for s in fam {
        assert!(closes(&s.candidate));
        assert!(check_rsym_multiplet(&s.candidate).pass);
    }
}

#[test]
fn klein_n2_closes_but_n3_witness_vanishes_at_zero() {
    assert!(closes(&DeformationCandidate::klein(2).unwrap()));
    let c3 = DeformationCandidate::klein(3).unwrap();
    let rep = ConstraintReport::build(&c3, true);
    assert_eq!(rep.classification, Classification::Klein);
    let m = rep.multiplet.unwrap();
    assert!(!m.pass);
    let w = m.witness.unwrap();
    let zero = BTreeMap::from([(BETA.to_string(), rat(0, 1))]);
    assert!(w.residual.substitute(&zero).is_zero());
    assert!(!w.residual.substitute(&BTreeMap::from([(BETA.to_string(), rat(1, 3))])).is_zero());
}

#[test]
fn report_json_has_expected_shape() {
    let c = DeformationCandidate::klein(1).unwrap();
    let j = ConstraintReport::build(&c, true).to_json();
    assert_eq!(j["classification"], "klein");
    assert_eq!(j["pass"], true);
    assert!(j["constraints"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert!(j["multiplet"]["rule"].is_string());
}
