//! Lowest-weight vectors `a_I ψ = 0`, solved component by component.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{json as js, ParamPoly, Rational};
use crate::generators::{hamiltonian_osc, ladder_ops, Family, GeneratorSet};

use super::state::{apply, Affine, StateFn};

const TRIAL: &str = "p_trial";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowestWeight {
    pub label: String,
    /// Zero-based matrix component carrying the state.
    pub component: usize,
    pub exponent: Affine,
    /// Fermion parity `F_jj`.
    pub grading: i8,
    /// Second label of the klein-n2 columns.
    pub rho: Option<i8>,
    /// `H_osc` eigenvalue.
    pub energy: ParamPoly,
    pub state: StateFn,
}

impl LowestWeight {
    pub fn is_bosonic(&self) -> bool {
        self.grading > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "component": self.component + 1,
            "exponent": js::poly(&self.exponent.to_poly()),
            "grading": if self.is_bosonic() { "bosonic" } else { "fermionic" },
            "energy": js::poly(&self.energy),
            "state": self.state.to_json(),
        })
    }
}

fn label(family: Family, j: usize) -> String {
    match (family, j) {
        (Family::KleinN1, 0) => "Bos".into(),
        (Family::KleinN1, 1) => "Fer".into(),
        (Family::KleinN2, _) => {
            let eps = if j < 2 { "1" } else { "-1" };
            let rho = if j.is_multiple_of(2) { "1" } else { "-1" };
            format!("0[{eps},{rho}]")
        }
        (Family::NonKleinN2, _) => format!("Psi{}", j + 1),
        _ => format!("lwv{}", j + 1),
    }
}

/// Exact eigenvalue of `op` on `s`, if `s` is an eigenvector.
pub fn eigenvalue(op: &crate::algebra::Operator, s: &StateFn) -> Option<ParamPoly> {
    let out = apply(op, s).ok()?;
    let j = *s.support().first()?;
    let (b, v) = s.component(j).next()?;
    let w = out.component(j).find(|(ob, _)| *ob == b).map(|(_, w)| w.clone()).unwrap_or_default();
    let e = w.div_exact(v)?;
    out.sub(&s.scale(&e)).is_zero().then_some(e)
}

/// Affine root of `a·p + b` with constant nonzero `a`.
fn linear_root(e: &ParamPoly) -> Option<Option<Affine>> {
    let cs = e.coefficients_in(TRIAL);
    match cs.keys().max() {
        None => Some(None),
        Some(0) => None,
        Some(1) => {
            let a = cs[&1].as_constant()?;
            let b = cs.get(&0).cloned().unwrap_or_default();
            Affine::from_poly(&(-&b).scale(&a.inv()?)).map(Some)
        }
        _ => None,
    }
}

/// All single-component lowest-weight vectors `|x|^p e^{-x²/2} e_j`.
pub fn lowest_weight_states(gs: &GeneratorSet) -> Vec<LowestWeight> {
    let dim = gs.dim();
    let ladders = ladder_ops(gs);
    let hosc = hamiltonian_osc(gs);
    let parity = &gs.gammas.parity;
    let mut out = Vec::new();
    'comp: for j in 0..dim {
        let trial = StateFn::single(dim, j, Affine::var(TRIAL), ParamPoly::one());
        let mut root: Option<Affine> = None;
        let mut eqs = Vec::new();
        for (a, _) in &ladders {
            let r = apply(a, &trial).expect("dims agree");
            for i in 0..dim {
                eqs.extend(r.component(i).map(|(_, v)| v.clone()));
            }
        }
        for e in &eqs {
            match linear_root(e) {
                Some(Some(p)) => {
                    root = Some(p);
                    break;
                }
                Some(None) => {}
                None => {
                    if e.vars().contains(TRIAL) {
                        continue;
                    }
                    continue 'comp;
                }
            }
        }
        let Some(p) = root else { continue };
        let sub = BTreeMap::from([(TRIAL.to_string(), p.to_poly())]);
        if !eqs.iter().all(|e| e.substitute_polys(&sub).is_zero()) {
            continue;
        }
        let state = StateFn::single(dim, j, p.clone(), ParamPoly::one());
        let Some(energy) = eigenvalue(&hosc, &state) else { continue };
        let f = parity.get(j, j).as_rational().unwrap_or_else(Rational::zero);
        out.push(LowestWeight {
            label: label(gs.family, j),
            component: j,
            exponent: p,
            grading: if f > Rational::zero() { 1 } else { -1 },
            rho: (gs.family == Family::KleinN2).then_some(if j % 2 == 0 { 1 } else { -1 }),
            energy,
            state,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::generators::{build_klein_n1, build_klein_n2, build_nonklein, build_undeformed, BETA, NU};

    fn aff(c: Rational, v: &str, r: Rational) -> Affine {
        Affine::var(v).scale(&r).shift(&c)
    }

    #[test]
    fn klein_n1_pair() {
        let l = lowest_weight_states(&build_klein_n1());
        assert_eq!(l.len(), 2);
        assert_eq!((l[0].label.as_str(), l[0].component), ("Bos", 0));
        assert_eq!(l[0].exponent, aff(rat(0, 1), BETA, rat(-1, 1)));
        assert_eq!(l[1].exponent, aff(rat(0, 1), BETA, rat(1, 1)));
        let b = ParamPoly::var(BETA);
        assert_eq!(l[0].energy, &ParamPoly::from_rational(rat(1, 2)) - &b);
        assert_eq!(l[1].energy, &ParamPoly::from_rational(rat(1, 2)) + &b);
        assert!(l[0].is_bosonic() && !l[1].is_bosonic());
    }

    #[test]
    fn klein_n2_four_columns() {
        let l = lowest_weight_states(&build_klein_n2());
        let comps: Vec<_> = l.iter().map(|w| w.component).collect();
        assert_eq!(comps, vec![0, 1, 2, 3]);
        for w in &l {
            let s = if w.component < 2 { -1 } else { 1 };
            assert_eq!(w.exponent, aff(rat(0, 1), BETA, rat(s, 1)));
        }
    }

    #[test]
    fn nonklein_psi1_psi2() {
        let l = lowest_weight_states(&build_nonklein());
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].exponent, aff(rat(-1, 2), NU, rat(-1, 1)));
        assert_eq!(l[1].exponent, aff(rat(-1, 2), NU, rat(1, 1)));
        assert!(l.iter().all(|w| w.is_bosonic()));
        // H_osc eigenvalue is p + ½
        assert_eq!(l[1].energy, ParamPoly::var(NU));
        assert_eq!(l[0].energy, -&ParamPoly::var(NU));
    }

    #[test]
    fn undeformed_gaussian_is_only_lwv() {
        let l = lowest_weight_states(&build_undeformed(2).unwrap());
        assert!(!l.is_empty());
        assert!(l.iter().all(|w| w.exponent == Affine::default()));
    }
}
