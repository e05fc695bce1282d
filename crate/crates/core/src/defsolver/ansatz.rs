use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use super::polysys::{solve_system, SolveOutcome};
use super::{check_dilatation, check_rsym_multiplet, check_susy_closure, klein_test, Classification, Constraint, ConstraintReport, DeformationCandidate};
use crate::algebra::{json, MatrixConst, ParamPoly, Scalar};
use crate::clifford::{build_gamma_set, GammaSet};
use crate::error::{Error, Result};

/// `M_I = Σ_k c{I}_{k} · basis[I][k]` with real unknowns `c{I}_{k}`.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub label: String,
    pub gammas: GammaSet,
    pub slots: Vec<usize>,
    pub basis: Vec<Vec<MatrixConst>>,
}

/// Gamma monomial by index list; `0` stands for the parity matrix.
fn monomial(g: &GammaSet, idx: &[usize]) -> MatrixConst {
    idx.iter().fold(MatrixConst::identity(g.dim()), |acc, &i| {
        let f = if i == 0 { &g.parity } else { g.gamma(i) };
        &acc * f
    })
}

/// Make a gamma monomial Hermitian by an `i` factor if needed.
fn hermitian_form(m: MatrixConst) -> Result<MatrixConst> {
    if !m.is_block_antidiagonal() {
        return Err(Error::InvalidArgument("basis element is not block-antidiagonal".into()));
    }
    if m.is_hermitian() {
        return Ok(m);
    }
    let im = m.scale(&Scalar::i());
    if im.is_hermitian() {
        Ok(im)
    } else {
        Err(Error::InvalidArgument("basis element is neither Hermitian nor anti-Hermitian".into()))
    }
}

#[derive(Deserialize)]
struct CustomAnsatz {
    n: usize,
    slots: Vec<usize>,
    basis: Vec<Vec<Vec<usize>>>,
}

impl Ansatz {
    pub fn new(label: impl Into<String>, n: usize, slots: Vec<usize>, basis: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let gammas = build_gamma_set(n)?;
        if basis.len() != slots.len() {
            return Err(Error::InvalidArgument(format!("{} slots but {} basis lists", slots.len(), basis.len())));
        }
        for idx in basis.iter().flatten().flatten() {
            if *idx > 2 * n {
                return Err(Error::InvalidArgument(format!("gamma index {idx} outside 0..={}", 2 * n)));
            }
        }
        let basis = basis
            .iter()
            .map(|list| list.iter().map(|idx| hermitian_form(monomial(&gammas, idx))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Ansatz { label: label.into(), gammas, slots, basis })
    }

    /// Every supercharge spans `{iγ_J F}` over all gammas.
    pub fn klein(n: usize) -> Result<Self> {
        let m = 2 * n;
        let per: Vec<Vec<usize>> = (1..=m).map(|j| vec![j, 0]).collect();
        Ansatz::new("klein", n, (1..=m).collect(), vec![per; m])
    }

    /// Two supercharges on `γ₁, γ₃` spanning `{γ̃_I, iγ_Iγ₅}` with
    /// `γ̃₁ = γ₂`, `γ̃₂ = γ₄`.
    pub fn nonklein() -> Result<Self> {
        Ansatz::new("nonklein", 2, vec![1, 3], vec![vec![vec![2], vec![1, 0]], vec![vec![4], vec![3, 0]]])
    }

    /// No deformation parameters at all.
    pub fn empty(n: usize) -> Result<Self> {
        let m = 2 * n;
        Ansatz::new("empty", n, (1..=m).collect(), vec![Vec::new(); m])
    }

    /// `{"n": 2, "slots": [1, 3], "basis": [[[2], [1, 0]], [[4], [3, 0]]]}`;
    /// index `0` denotes the parity matrix.
    pub fn from_json(v: &Value) -> Result<Self> {
        let c: CustomAnsatz =
            serde_json::from_value(v.clone()).map_err(|e| Error::InvalidArgument(format!("ansatz json: {e}")))?;
        Ansatz::new("custom", c.n, c.slots, c.basis)
    }

    pub fn unknown(k: usize, l: usize) -> String {
        format!("c{}_{}", k + 1, l + 1)
    }

    pub fn unknowns(&self) -> Vec<String> {
        self.basis.iter().enumerate().flat_map(|(k, b)| (0..b.len()).map(move |l| Ansatz::unknown(k, l))).collect()
    }

    pub fn template(&self) -> DeformationCandidate {
        let d = self.gammas.dim();
        let ms = self
            .basis
            .iter()
            .enumerate()
            .map(|(k, b)| {
                b.iter().enumerate().fold(MatrixConst::zero(d), |acc, (l, m)| {
                    &acc + &m.scale_poly(&ParamPoly::var(&Ansatz::unknown(k, l)))
                })
            })
            .collect();
        DeformationCandidate { gammas: self.gammas.clone(), slots: self.slots.clone(), ms }
    }
}

/// Real polynomial equations equivalent to the vanishing of every residual,
/// identically in `params`.
pub fn equations(constraints: &[Constraint], params: &BTreeSet<String>) -> Vec<ParamPoly> {
    let mut out = Vec::new();
    for c in constraints {
        for (_, m) in c.residual.terms() {
            for e in m.entries() {
                for part in e.real_parts() {
                    out.extend(part.split_by(params).into_values());
                }
            }
        }
    }
    out
}

pub fn solve_constraints(constraints: &[Constraint], unknowns: &[String], params: &BTreeSet<String>) -> SolveOutcome {
    solve_system(equations(constraints, params), unknowns)
}

#[derive(Clone, Debug)]
pub struct SolvedCandidate {
    pub candidate: DeformationCandidate,
    pub assignment: BTreeMap<String, ParamPoly>,
    pub free: Vec<String>,
    pub sampled: bool,
    pub classification: Classification,
}

impl SolvedCandidate {
    pub fn to_json(&self) -> Value {
        let asg: BTreeMap<&String, Value> = self.assignment.iter().map(|(k, v)| (k, json::poly(v))).collect();
        json!({
            "candidate": self.candidate.to_json(),
            "assignment": asg,
            "free": self.free,
            "sampled": self.sampled,
            "classification": self.classification,
        })
    }
}

/// Solve every algebraic constraint on a template whose matrices are
/// polynomial in `unknowns`; each solution is confirmed by an exact re-check.
pub fn solve_candidate(
    template: &DeformationCandidate,
    unknowns: &[String],
    params: &BTreeSet<String>,
) -> (Vec<SolvedCandidate>, usize) {
    let mut cons = check_susy_closure(template).constraints;
    cons.extend(check_dilatation(template));
    let outcome = solve_constraints(&cons, unknowns, params);
    let solved = outcome
        .solutions
        .into_par_iter()
        .filter_map(|s| {
            let cand = template.substitute_polys(&s.assignment);
            let rep = ConstraintReport::build(&cand, false);
            rep.pass().then(|| SolvedCandidate {
                classification: klein_test(&cand).classification,
                candidate: cand,
                assignment: s.assignment,
                free: s.free,
                sampled: s.sampled,
            })
        })
        .collect();
    (solved, outcome.unresolved)
}

/// All candidates in the span of the ansatz that pass every constraint.
pub fn solve_ansatz(a: &Ansatz) -> (Vec<SolvedCandidate>, usize) {
    solve_candidate(&a.template(), &a.unknowns(), &BTreeSet::new())
}

#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub supercharges: usize,
    pub configurations: usize,
    /// Configurations admitting a solution classified non-Klein.
    pub nonklein_configurations: usize,
    /// Of those, configurations where some non-Klein solution also passes
    /// the R-symmetry multiplet check; `(slots, partners)`.
    pub superconformal: Vec<(Vec<usize>, Vec<usize>)>,
    pub unresolved: usize,
}

impl EnumerationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "supercharges": self.supercharges,
            "configurations": self.configurations,
            "nonklein_configurations": self.nonklein_configurations,
            "superconformal_nonklein": self.superconformal.iter()
                .map(|(s, p)| json!({"slots": s, "partners": p})).collect::<Vec<_>>(),
            "unresolved": self.unresolved,
        })
    }
}

/// Every choice of `k` slots among `γ₁…γ₄` and of a partner gamma
/// `γ̃_I ≠ γ_I` per supercharge, with `M_I` spanning `{γ̃_I, iγ_Iγ₅}`.
pub fn nonklein_enumeration(k: usize) -> Result<EnumerationReport> {
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidArgument(format!("{k} supercharges at n = 2")));
    }
    let subsets: Vec<Vec<usize>> =
        (0u32..16).filter(|m| m.count_ones() as usize == k).map(|m| (1..=4).filter(|i| m >> (i - 1) & 1 == 1).collect()).collect();
    let mut configs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for s in &subsets {
        let partners: Vec<Vec<usize>> = s.iter().map(|&i| (1..=4).filter(|&j| j != i).collect()).collect();
        let total: usize = partners.iter().map(Vec::len).product();
        for code in 0..total {
            let mut rest = code;
            let pick = partners
                .iter()
                .map(|p| {
                    let v = p[rest % p.len()];
                    rest /= p.len();
                    v
                })
                .collect();
            configs.push((s.clone(), pick));
        }
    }
    let results: Vec<Result<(bool, bool, usize)>> = configs
        .par_iter()
        .map(|(slots, partners)| {
            let basis = slots.iter().zip(partners).map(|(&s, &p)| vec![vec![p], vec![s, 0]]).collect();
            let a = Ansatz::new("nonklein-enum", 2, slots.clone(), basis)?;
            let (sols, unresolved) = solve_ansatz(&a);
            let nk: Vec<_> = sols.iter().filter(|s| s.classification == Classification::NonKlein).collect();
            let sc = nk.iter().any(|s| check_rsym_multiplet(&s.candidate).pass);
            Ok((!nk.is_empty(), sc, unresolved))
        })
        .collect();
    let mut rep = EnumerationReport {
        supercharges: k,
        configurations: configs.len(),
        nonklein_configurations: 0,
        superconformal: Vec::new(),
        unresolved: 0,
    };
    for (r, cfg) in results.into_iter().zip(configs) {
        let (nk, sc, u) = r?;
        rep.nonklein_configurations += nk as usize;
        if sc {
            rep.superconformal.push(cfg);
        }
        rep.unresolved += u;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::generators::NU;

    #[test]
    fn klein_n1_ansatz_gives_one_parameter_family() {
        let (sols, unresolved) = solve_ansatz(&Ansatz::klein(1).unwrap());
        assert_eq!(unresolved, 0);
        let fam: Vec<_> = sols.iter().filter(|s| s.free.len() == 1).collect();
        assert_eq!(fam.len(), 1);
        let s = fam[0];
        assert_eq!(s.classification, Classification::Klein);
        // cross terms vanish, diagonal coefficients coincide
        assert_eq!(s.assignment["c1_2"], ParamPoly::zero());
        assert_eq!(s.assignment["c2_1"], ParamPoly::zero());
        let free = &s.free[0];
        let other = if free == "c1_1" { "c2_2" } else { "c1_1" };
        assert_eq!(s.assignment[other], ParamPoly::var(free));
    }

    #[test]
    fn empty_ansatz_gives_only_zero() {
        let (sols, _) = solve_ansatz(&Ansatz::empty(2).unwrap());
        assert_eq!(sols.len(), 1);
        assert!(sols[0].candidate.ms.iter().all(MatrixConst::is_zero));
    }

    #[test]
    fn nonklein_ansatz_forces_half() {
        let (sols, unresolved) = solve_ansatz(&Ansatz::nonklein().unwrap());
        assert_eq!(unresolved, 0);
        let nk: Vec<_> = sols.iter().filter(|s| s.classification == Classification::NonKlein).collect();
        assert!(!nk.is_empty());
        for s in nk {
            let half = ParamPoly::from_rational(rat(1, 2));
            assert!(s.assignment.get("c1_2") == Some(&half) || s.assignment.get("c1_2") == Some(&-&half), "{:?}", s.assignment);
        }
    }

    #[test]
    fn symbolic_b_is_forced_to_half_by_potential_constraints() {
        let t = DeformationCandidate::nonklein(&ParamPoly::var("b"));
        let cons: Vec<Constraint> =
            check_susy_closure(&t).constraints.into_iter().filter(|c| c.name.starts_with('V')).collect();
        let out = solve_constraints(&cons, &["b".to_string()], &BTreeSet::from([NU.to_string()]));
        assert_eq!(out.solutions.len(), 1);
        assert_eq!(out.solutions[0].assignment["b"], ParamPoly::from_rational(rat(1, 2)));
    }

    #[test]
    fn non_block_antidiagonal_basis_is_rejected() {
        assert!(Ansatz::new("bad", 1, vec![1], vec![vec![vec![0]]]).is_err());
    }

    #[test]
    fn nonklein_supercharge_counts() {
        let two = nonklein_enumeration(2).unwrap();
        assert_eq!(two.unresolved, 0);
        assert!(two.superconformal.contains(&(vec![1, 3], vec![2, 4])));
        // Three supercharges satisfy the algebraic constraints in some
        // configurations but never the multiplet condition.
        let three = nonklein_enumeration(3).unwrap();
        assert!(three.nonklein_configurations > 0);
        assert!(three.superconformal.is_empty());
        // Four supercharges with paired partners survive everything.
        let four = nonklein_enumeration(4).unwrap();
        assert_eq!(four.superconformal, vec![(vec![1, 2, 3, 4], vec![2, 1, 4, 3])]);
    }
}
