//! Inverse-square deformations `Q_I = (i/√2)(γ_I∂ - iM_I/x)`: constraint
//! checks, R-symmetry multiplet test, Klein classification and an
//! ansatz-driven solver.

mod ansatz;
pub mod polysys;

pub use ansatz::{
    nonklein_enumeration, solve_ansatz, solve_candidate, Ansatz, EnumerationReport, SolvedCandidate,
};

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::algebra::{json, linear::reduce_operator, MatrixConst, Operator, ParamPoly, Rational, Scalar};
use crate::clifford::{build_gamma_set, GammaSet};
use crate::error::{Error, Result};
use crate::generators::{
    conformal_supercharge, deformed_supercharge, hamiltonian, klein_ms, pair_name, oscillator_k, potential_of, NU,
};

/// Constant matrices `M_I`, one per supercharge; supercharge `k` uses
/// `γ_{slots[k]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationCandidate {
    pub gammas: GammaSet,
    pub slots: Vec<usize>,
    pub ms: Vec<MatrixConst>,
}

impl DeformationCandidate {
    pub fn new(gammas: GammaSet, slots: Vec<usize>, ms: Vec<MatrixConst>) -> Result<Self> {
        if slots.len() != ms.len() {
            return Err(Error::InvalidArgument(format!("{} slots but {} matrices", slots.len(), ms.len())));
        }
        let d = gammas.dim();
        for &s in &slots {
            if s == 0 || s > gammas.gammas.len() {
                return Err(Error::InvalidArgument(format!("slot {s} outside 1..={}", gammas.gammas.len())));
            }
        }
        let mut seen = BTreeSet::new();
        if !slots.iter().all(|s| seen.insert(*s)) {
            return Err(Error::InvalidArgument("repeated slot".into()));
        }
        for (k, m) in ms.iter().enumerate() {
            if m.dim() != d {
                return Err(Error::DimensionMismatch { left: d, right: m.dim() });
            }
            if !m.is_hermitian() {
                return Err(Error::InvalidArgument(format!("M{} is not Hermitian", k + 1)));
            }
            if !m.is_block_antidiagonal() {
                return Err(Error::InvalidArgument(format!("M{} is not block-antidiagonal", k + 1)));
            }
        }
        Ok(DeformationCandidate { gammas, slots, ms })
    }

    /// `M_I = iβγ_I F` on all `2n` gammas.
    pub fn klein(n: usize) -> Result<Self> {
        let gammas = build_gamma_set(n)?;
        let ms = klein_ms(&gammas);
        Ok(DeformationCandidate { slots: (1..=2 * n).collect(), gammas, ms })
    }

    /// `M_I = 0` on all `2n` gammas.
    pub fn undeformed(n: usize) -> Result<Self> {
        let gammas = build_gamma_set(n)?;
        let d = gammas.dim();
        Ok(DeformationCandidate { slots: (1..=2 * n).collect(), ms: vec![MatrixConst::zero(d); 2 * n], gammas })
    }

    /// `M₁ = νγ₂ + ibγ₁γ₅`, `M₂ = -νγ₄ + ibγ₃γ₅` with a given `b`.
    pub fn nonklein(b: &ParamPoly) -> Self {
        let g = build_gamma_set(2).expect("n = 2");
        let nu = ParamPoly::var(NU);
        let ib = b.scale(&Scalar::i());
        let m1 = &g.gamma(2).scale_poly(&nu) + &(g.gamma(1) * &g.parity).scale_poly(&ib);
        let m2 = &g.gamma(4).scale_poly(&-&nu) + &(g.gamma(3) * &g.parity).scale_poly(&ib);
        DeformationCandidate { gammas: g, slots: vec![1, 3], ms: vec![m1, m2] }
    }

    pub fn n(&self) -> usize {
        self.gammas.n
    }

    pub fn dim(&self) -> usize {
        self.gammas.dim()
    }

    pub fn num_supercharges(&self) -> usize {
        self.slots.len()
    }

    /// Gamma of supercharge `k` (0-based).
    pub fn gamma(&self, k: usize) -> &MatrixConst {
        self.gammas.gamma(self.slots[k])
    }

    pub fn substitute_polys(&self, assign: &BTreeMap<String, ParamPoly>) -> Self {
        DeformationCandidate {
            gammas: self.gammas.clone(),
            slots: self.slots.clone(),
            ms: self.ms.iter().map(|m| m.substitute_polys(assign)).collect(),
        }
    }

    pub fn substitute(&self, assign: &BTreeMap<String, Rational>) -> Self {
        let polys = assign.iter().map(|(k, v)| (k.clone(), ParamPoly::from_rational(v.clone()))).collect();
        self.substitute_polys(&polys)
    }

    /// Conjugate gammas, parity and every `M_I` by a unitary `P`.
    pub fn conjugate(&self, p: &MatrixConst) -> Self {
        let pd = p.conj_transpose();
        let c = |m: &MatrixConst| &(p * m) * &pd;
        DeformationCandidate {
            gammas: GammaSet {
                n: self.gammas.n,
                gammas: self.gammas.gammas.iter().map(c).collect(),
                parity: c(&self.gammas.parity),
            },
            slots: self.slots.clone(),
            ms: self.ms.iter().map(c).collect(),
        }
    }

    pub fn supercharges(&self) -> Vec<Operator> {
        (0..self.num_supercharges()).map(|k| deformed_supercharge(self.gamma(k), &self.ms[k])).collect()
    }

    pub fn conformal_supercharges(&self) -> Vec<Operator> {
        (0..self.num_supercharges()).map(|k| conformal_supercharge(self.gamma(k))).collect()
    }

    /// `V_I = ½(M_I² - iγ_I M_I)` for every supercharge.
    pub fn potentials(&self) -> Vec<MatrixConst> {
        (0..self.num_supercharges()).map(|k| potential_of(self.gamma(k), &self.ms[k])).collect()
    }

    /// `(a_I, a_I†)` with `a = Q + iQ̃`.
    pub fn ladders(&self) -> Vec<(Operator, Operator)> {
        let i = Scalar::i();
        self.supercharges()
            .into_iter()
            .zip(self.conformal_supercharges())
            .map(|(q, qt)| {
                let it = qt.scale(&i);
                (&q + &it, &q - &it)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "slots": self.slots,
            "ms": self.ms.iter().map(json::matrix).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub name: String,
    pub residual: Operator,
}

impl Constraint {
    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }

    fn to_json(&self) -> Value {
        let mut v = json!({"name": self.name, "pass": self.pass()});
        if !self.pass() {
            v["residual"] = json::operator(&self.residual);
        }
        v
    }
}

/// Off-diagonal part of a matrix.
fn off_diagonal(m: &MatrixConst) -> MatrixConst {
    let mut out = m.clone();
    for i in 0..m.dim() {
        out.set(i, i, ParamPoly::zero());
    }
    out
}

#[derive(Clone, Debug)]
pub struct SusyReport {
    pub constraints: Vec<Constraint>,
    /// `V_1`, meaningful when every constraint passes.
    pub potential: MatrixConst,
}

impl SusyReport {
    pub fn pass(&self) -> bool {
        self.constraints.iter().all(Constraint::pass)
    }
}

/// Cross relations for `I ≠ J`, diagonality of every `V_I` and `V_I = V_1`.
pub fn check_susy_closure(c: &DeformationCandidate) -> SusyReport {
    let i = Scalar::i();
    let mut out = Vec::new();
    let n = c.num_supercharges();
    for a in 0..n {
        for b in a + 1..n {
            let (ga, gb, ma, mb) = (c.gamma(a), c.gamma(b), &c.ms[a], &c.ms[b]);
            out.push(Constraint {
                name: format!("{{g{0},M{1}}}+{{g{1},M{0}}}", a + 1, b + 1),
                residual: Operator::constant(&ga.anticommutator(mb) + &gb.anticommutator(ma)),
            });
            let r = &(&ma.anticommutator(mb) - &(ga * mb).scale(&i)) - &(gb * ma).scale(&i);
            out.push(Constraint { name: format!("{{M{0},M{1}}}-ig{0}M{1}-ig{1}M{0}", a + 1, b + 1), residual: Operator::constant(r) });
        }
    }
    let vs = c.potentials();
    for (k, v) in vs.iter().enumerate() {
        out.push(Constraint { name: format!("V{} diagonal", k + 1), residual: Operator::constant(off_diagonal(v)) });
    }
    for (k, v) in vs.iter().enumerate().skip(1) {
        out.push(Constraint { name: format!("V{} = V1", k + 1), residual: Operator::constant(v - &vs[0]) });
    }
    SusyReport { constraints: out, potential: vs.into_iter().next().unwrap_or_else(|| MatrixConst::zero(c.dim())) }
}

/// `{M_I, γ_I} = 0` for every supercharge.
pub fn check_dilatation(c: &DeformationCandidate) -> Vec<Constraint> {
    (0..c.num_supercharges())
        .map(|k| Constraint { name: format!("{{M{0},g{0}}}", k + 1), residual: Operator::constant(c.ms[k].anticommutator(c.gamma(k))) })
        .collect()
}

/// `Σ_IJ = ½((i/2)[γ_I, γ_J] + {M_I, γ_J})` for supercharge pairs `I < J`.
pub fn sigma_def(c: &DeformationCandidate) -> Vec<((usize, usize), MatrixConst)> {
    let half = Scalar::from_frac(1, 2);
    let half_i = &Scalar::i() * &half;
    let n = c.num_supercharges();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let s = &c.gamma(a).commutator(c.gamma(b)).scale(&half_i) + &c.ms[a].anticommutator(c.gamma(b));
            out.push(((a + 1, b + 1), s.scale(&half)));
        }
    }
    out
}

pub const MULTIPLET_RULE: &str = "[Sigma_IJ, Q_K] in span{Q_L}, [Sigma_IJ, Qt_K] in span{Qt_L}, \
[Sigma_IJ, Sigma_KL] in span{Sigma}, coefficients independent of x";

#[derive(Clone, Debug)]
pub struct Witness {
    pub bracket: String,
    /// `scale · bracket - Σ c_L · basis_L`, nonzero.
    pub residual: Operator,
}

#[derive(Clone, Debug)]
pub struct MultipletReport {
    pub pass: bool,
    pub brackets_checked: usize,
    pub witness: Option<Witness>,
}

impl MultipletReport {
    fn to_json(&self) -> Value {
        let mut v = json!({"pass": self.pass, "brackets_checked": self.brackets_checked, "rule": MULTIPLET_RULE});
        if let Some(w) = &self.witness {
            v["witness"] = json!({"bracket": w.bracket, "residual": json::operator(&w.residual)});
        }
        v
    }
}

/// Span-closure formalization of the R-symmetry multiplet condition.
pub fn check_rsym_multiplet(c: &DeformationCandidate) -> MultipletReport {
    let qs = c.supercharges();
    let qts = c.conformal_supercharges();
    let sig = sigma_def(c);
    let sig_ops: Vec<Operator> = sig.iter().map(|(_, m)| Operator::constant(m.clone())).collect();
    let mut jobs: Vec<(String, Operator, &[Operator])> = Vec::new();
    for (((i, j), _), s) in sig.iter().zip(&sig_ops) {
        let sij = pair_name("Sigma", *i, *j);
        for (k, q) in qs.iter().enumerate() {
            let op = s.commutator(q).expect("same dimension");
            jobs.push((format!("[{sij}, Q{}]", k + 1), op, &qs));
        }
        for (k, q) in qts.iter().enumerate() {
            let op = s.commutator(q).expect("same dimension");
            jobs.push((format!("[{sij}, Qt{}]", k + 1), op, &qts));
        }
    }
    for (a, (((i, j), _), s)) in sig.iter().zip(&sig_ops).enumerate() {
        for (((k, l), _), t) in sig.iter().zip(&sig_ops).skip(a + 1) {
            let op = s.commutator(t).expect("same dimension");
            jobs.push((format!("[{}, {}]", pair_name("Sigma", *i, *j), pair_name("Sigma", *k, *l)), op, &sig_ops));
        }
    }
    use rayon::prelude::*;
    let results: Vec<Option<Witness>> = jobs
        .par_iter()
        .map(|(label, op, basis)| {
            let (red, residual) = reduce_operator(op, basis);
            (!red.in_span()).then(|| Witness { bracket: label.clone(), residual })
        })
        .collect();
    let witness = results.into_iter().flatten().next();
    MultipletReport { pass: witness.is_none(), brackets_checked: jobs.len(), witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Klein,
    NonKlein,
    Fails,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Klein => "klein",
            Classification::NonKlein => "non-klein",
            Classification::Fails => "fails",
        })
    }
}

#[derive(Clone, Debug)]
pub struct KleinTest {
    pub classification: Classification,
    /// `G_I = [a_I, a_I†] - I` when constant.
    pub defects: Vec<Option<MatrixConst>>,
}

/// Klein iff every defect `G_I` is a constant matrix with `G_I² ∝ I` that
/// anticommutes with `a_I` and `a_I†`.
pub fn klein_test(c: &DeformationCandidate) -> KleinTest {
    let id = Operator::identity(c.dim());
    let mut defects = Vec::new();
    let mut klein = true;
    for (a, ad) in c.ladders() {
        let g = &a.commutator(&ad).expect("same dimension") - &id;
        let constant = g.terms().all(|(m, _)| m.k == 0 && m.m == 0);
        if !constant {
            defects.push(None);
            klein = false;
            continue;
        }
        let gm = g.term(0, 0).cloned().unwrap_or_else(|| MatrixConst::zero(c.dim()));
        let squares = (&gm * &gm).as_multiple_of_identity().is_some();
        let anti = g.anticommutator(&a).expect("same dimension").is_zero()
            && g.anticommutator(&ad).expect("same dimension").is_zero();
        klein &= squares && anti;
        defects.push(Some(gm));
    }
    let classification = if klein { Classification::Klein } else { Classification::NonKlein };
    KleinTest { classification, defects }
}

/// `[H_osc, a] = -a` and `[H_osc, a†] = a†` residuals for the candidate's
/// own Hamiltonian.
pub fn ladder_residuals(c: &DeformationCandidate, v: &MatrixConst) -> Vec<Constraint> {
    let hosc = &hamiltonian(v) + &oscillator_k(c.dim());
    let mut out = Vec::new();
    for (k, (a, ad)) in c.ladders().iter().enumerate() {
        let ra = &hosc.commutator(a).expect("same dimension") + a;
        let rad = &hosc.commutator(ad).expect("same dimension") - ad;
        out.push(Constraint { name: format!("[Hosc,a{0}]+a{0}", k + 1), residual: ra });
        out.push(Constraint { name: format!("[Hosc,a{0}+]-a{0}+", k + 1), residual: rad });
    }
    out
}

#[derive(Clone, Debug)]
pub struct ConstraintReport {
    pub candidate: DeformationCandidate,
    pub susy: SusyReport,
    pub dilatation: Vec<Constraint>,
    pub ladder: Vec<Constraint>,
    pub sigma: Vec<((usize, usize), MatrixConst)>,
    pub multiplet: Option<MultipletReport>,
    pub klein: Option<KleinTest>,
    pub classification: Classification,
}

impl ConstraintReport {
    /// Every constraint checked; the multiplet test and classification only
    /// run when the algebraic constraints pass.
    pub fn build(c: &DeformationCandidate, with_multiplet: bool) -> ConstraintReport {
        let susy = check_susy_closure(c);
        let dil = check_dilatation(c);
        let ok = susy.pass() && dil.iter().all(Constraint::pass);
        let ladder = if ok { ladder_residuals(c, &susy.potential) } else { Vec::new() };
        let multiplet = (ok && with_multiplet).then(|| check_rsym_multiplet(c));
        let klein = ok.then(|| klein_test(c));
        let classification = klein.as_ref().map_or(Classification::Fails, |k| k.classification);
        ConstraintReport {
            candidate: c.clone(),
            sigma: if ok { sigma_def(c) } else { Vec::new() },
            susy,
            dilatation: dil,
            ladder,
            multiplet,
            klein,
            classification,
        }
    }

    pub fn pass(&self) -> bool {
        self.susy.pass()
            && self.dilatation.iter().all(Constraint::pass)
            && self.ladder.iter().all(Constraint::pass)
            && self.multiplet.as_ref().is_none_or(|m| m.pass)
    }

    pub fn to_json(&self) -> Value {
        let all: Vec<Value> = self
            .susy
            .constraints
            .iter()
            .chain(&self.dilatation)
            .chain(&self.ladder)
            .map(Constraint::to_json)
            .collect();
        let sigma: Vec<Value> =
            self.sigma.iter().map(|((i, j), m)| json!({"i": i, "j": j, "matrix": json::matrix(m)})).collect();
        let mut v = json!({
            "candidate": self.candidate.to_json(),
            "pass": self.pass(),
            "constraints": all,
            "potential": json::matrix(&self.susy.potential),
            "sigma": sigma,
            "classification": self.classification,
        });
        if let Some(m) = &self.multiplet {
            v["multiplet"] = m.to_json();
        }
        if let Some(k) = &self.klein {
            v["defects"] = k.defects.iter().map(|d| d.as_ref().map_or(Value::Null, json::matrix)).collect();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::generators::BETA;

    fn beta_at(r: Rational) -> BTreeMap<String, Rational> {
        BTreeMap::from([(BETA.to_string(), r)])
    }

    #[test]
    fn klein_candidates_pass_for_small_n() {
        for n in 1..=3 {
            let c = DeformationCandidate::klein(n).unwrap();
            assert!(check_susy_closure(&c).pass(), "n = {n}");
            assert!(check_dilatation(&c).iter().all(Constraint::pass));
        }
    }

    #[test]
    fn klein_potential_is_half_beta_squared_plus_beta_f() {
        let c = DeformationCandidate::klein(2).unwrap();
        let v = check_susy_closure(&c).potential;
        let b = ParamPoly::var(BETA);
        let expected = (&MatrixConst::identity(4).scale_poly(&(&b * &b)) + &c.gammas.parity.scale_poly(&b))
            .scale(&Scalar::from_frac(1, 2));
        assert_eq!(v, expected);
    }

    #[test]
    fn zero_deformation_passes_with_zero_potential() {
        let c = DeformationCandidate::undeformed(2).unwrap();
        let r = check_susy_closure(&c);
        assert!(r.pass());
        assert!(r.potential.is_zero());
    }

    #[test]
    fn dilatation_constraint_rejects_parallel_m() {
        let g = build_gamma_set(1).unwrap();
        let ok = DeformationCandidate::new(g.clone(), vec![1], vec![g.gamma(2).clone()]).unwrap();
        assert!(check_dilatation(&ok).iter().all(Constraint::pass));
        let bad = DeformationCandidate::new(g.clone(), vec![1], vec![g.gamma(1).clone()]).unwrap();
        assert!(!check_dilatation(&bad)[0].pass());
    }

    #[test]
    fn rejects_block_diagonal_m() {
        let g = build_gamma_set(1).unwrap();
        let f = g.parity.clone();
        assert!(DeformationCandidate::new(g, vec![1], vec![f]).is_err());
    }

    #[test]
    fn klein_n1_sigma_and_multiplet() {
        let c = DeformationCandidate::klein(1).unwrap();
        let s = sigma_def(&c);
        let b2 = ParamPoly::var(BETA).scale(&Scalar::from_int(2));
        let f = &MatrixConst::identity(2) - &c.gammas.parity.scale_poly(&b2);
        let expected = &c.gammas.product(&[1, 2]).scale(&Scalar::gaussian(rat(0, 1), rat(1, 2))) * &f;
        assert_eq!(s[0].1, expected);
        assert!(check_rsym_multiplet(&c).pass);
    }

    #[test]
    fn klein_n2_multiplet_passes() {
        assert!(check_rsym_multiplet(&DeformationCandidate::klein(2).unwrap()).pass);
    }

    #[test]
    fn klein_n3_multiplet_fails_with_beta_witness() {
        let c = DeformationCandidate::klein(3).unwrap();
        let r = check_rsym_multiplet(&c);
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert!(!w.residual.is_zero());
        assert!(w.residual.substitute(&beta_at(rat(0, 1))).is_zero());
    }

    #[test]
    fn nonklein_with_half_b_passes_and_is_not_klein() {
        let c = DeformationCandidate::nonklein(&ParamPoly::from_rational(rat(1, 2)));
        let rep = ConstraintReport::build(&c, true);
        assert!(rep.pass(), "{}", rep.to_json());
        assert_eq!(rep.classification, Classification::NonKlein);
    }

    #[test]
    fn klein_defect_is_minus_two_beta_f() {
        let c = DeformationCandidate::klein(2).unwrap();
        let k = klein_test(&c);
        assert_eq!(k.classification, Classification::Klein);
        let g = c.gammas.parity.scale_poly(&ParamPoly::var(BETA).scale(&Scalar::from_int(-2)));
        for d in k.defects {
            assert_eq!(d.unwrap(), g);
        }
    }

    #[test]
    fn conjugation_by_gamma_products_preserves_passing() {
        let c = DeformationCandidate::klein(2).unwrap();
        for idx in [vec![1], vec![2, 3], vec![1, 2, 4]] {
            let p = c.gammas.product(&idx);
            let r = ConstraintReport::build(&c.conjugate(&p), false);
            assert!(r.pass());
        }
    }
}
