//! Named generator sets of the undeformed and deformed matrix oscillators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::algebra::{json, rat, MatrixConst, Operator, ParamPoly, Rational, Scalar};
use crate::clifford::{build_gamma_set, GammaSet};
use crate::error::{Error, Result};

pub const BETA: &str = "beta";
pub const NU: &str = "nu";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Undeformed(usize),
    KleinN1,
    KleinN2,
    NonKleinN2,
}

impl Family {
    /// Number of supercharges.
    pub fn susy_count(&self) -> usize {
        match self {
            Family::Undeformed(n) => 2 * n,
            Family::KleinN1 | Family::NonKleinN2 => 2,
            Family::KleinN2 => 4,
        }
    }

    /// Half the log2 of the matrix size.
    pub fn n(&self) -> usize {
        match self {
            Family::Undeformed(n) => *n,
            Family::KleinN1 => 1,
            Family::KleinN2 | Family::NonKleinN2 => 2,
        }
    }

    /// The deformation parameter, if any.
    pub fn parameter(&self) -> Option<&'static str> {
        match self {
            Family::Undeformed(_) => None,
            Family::KleinN1 | Family::KleinN2 => Some(BETA),
            Family::NonKleinN2 => Some(NU),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Undeformed(n) => write!(f, "undeformed:{n}"),
            Family::KleinN1 => write!(f, "klein-n1"),
            Family::KleinN2 => write!(f, "klein-n2"),
            Family::NonKleinN2 => write!(f, "nonklein-n2"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "klein-n1" => Ok(Family::KleinN1),
            "klein-n2" => Ok(Family::KleinN2),
            "nonklein-n2" | "nonklein" => Ok(Family::NonKleinN2),
            _ => {
                let n = s
                    .strip_prefix("undeformed:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|n| (1..=5).contains(n))
                    .ok_or_else(|| Error::UnknownModel(s.to_string()))?;
                Ok(Family::Undeformed(n))
            }
        }
    }
}

/// A parameter binding: kept formal, or fixed to an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Symbolic,
    Value(Rational),
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "sym" {
            return Ok(Param::Symbolic);
        }
        crate::algebra::parse_rational(s)
            .map(Param::Value)
            .ok_or_else(|| Error::InvalidArgument(format!("cannot parse `{s}` as a rational or `sym`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub family: Family,
    pub param: Param,
}

impl ModelSpec {
    pub fn symbolic(family: Family) -> Self {
        ModelSpec { family, param: Param::Symbolic }
    }

    pub fn with_value(family: Family, v: Rational) -> Self {
        ModelSpec { family, param: Param::Value(v) }
    }

    pub fn build(&self) -> Result<GeneratorSet> {
        let gs = match self.family {
            Family::Undeformed(n) => build_undeformed(n)?,
            Family::KleinN1 => build_klein_n1(),
            Family::KleinN2 => build_klein_n2(),
            Family::NonKleinN2 => build_nonklein(),
        };
        match (&self.param, self.family.parameter()) {
            (Param::Value(v), Some(name)) => Ok(gs.substitute(&BTreeMap::from([(name.to_string(), v.clone())]))),
            _ => Ok(gs),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Hamiltonian,
    Dilatation,
    Conformal,
    Supercharge,
    ConformalSupercharge,
    RSymmetry,
}

impl Role {
    pub fn is_odd(&self) -> bool {
        matches!(self, Role::Supercharge | Role::ConformalSupercharge)
    }

    /// Expected dilatation weight.
    pub fn grade(&self) -> Rational {
        match self {
            Role::Hamiltonian => rat(1, 1),
            Role::Conformal => rat(-1, 1),
            Role::Supercharge => rat(1, 2),
            Role::ConformalSupercharge => rat(-1, 2),
            Role::Dilatation | Role::RSymmetry => rat(0, 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub role: Role,
    pub op: Operator,
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub family: Family,
    pub gammas: GammaSet,
    /// Gamma index carried by each supercharge (`Q_k` uses `γ_{slots[k-1]}`).
    pub slots: Vec<usize>,
    generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn dim(&self) -> usize {
        self.gammas.dim()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn find(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    /// Operator by name; panics on unknown names (internal use).
    pub fn get(&self, name: &str) -> &Operator {
        &self.find(name).unwrap_or_else(|| panic!("no generator `{name}`")).op
    }

    pub fn h(&self) -> &Operator {
        self.get("H")
    }

    pub fn d(&self) -> &Operator {
        self.get("D")
    }

    pub fn k(&self) -> &Operator {
        self.get("K")
    }

    pub fn num_supercharges(&self) -> usize {
        self.slots.len()
    }

    pub fn q(&self, i: usize) -> &Operator {
        self.get(&format!("Q{i}"))
    }

    pub fn qt(&self, i: usize) -> &Operator {
        self.get(&format!("Qt{i}"))
    }

    pub fn substitute(&self, assign: &BTreeMap<String, Rational>) -> GeneratorSet {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.op = g.op.substitute(assign);
        }
        out
    }

    pub fn map_operators(&self, f: impl Fn(&Operator) -> Operator) -> GeneratorSet {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.op = f(&g.op);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| json!({"name": g.name, "odd": g.role.is_odd(), "operator": json::operator(&g.op)}))
            .collect();
        json!({"model": self.family.to_string(), "dim": self.dim(), "generators": gens})
    }

    fn push(&mut self, name: impl Into<String>, role: Role, op: Operator) {
        self.generators.push(Generator { name: name.into(), role, op });
    }
}

/// Name of an antisymmetric pair generator such as `Sigma12` or `W23`.
pub fn pair_name(prefix: &str, i: usize, j: usize) -> String {
    if i >= 10 || j >= 10 {
        format!("{prefix}{i}_{j}")
    } else {
        format!("{prefix}{i}{j}")
    }
}

fn sc(re: i64, im: i64, den: i64) -> Scalar {
    Scalar::gaussian(rat(re, den), rat(im, den))
}

pub fn dilatation(dim: usize) -> Operator {
    let c = sc(0, -1, 2);
    &Operator::mono(1, 1, MatrixConst::identity(dim).scale(&c))
        + &Operator::identity(dim).scale(&(&c * &sc(1, 0, 2)))
}

pub fn oscillator_k(dim: usize) -> Operator {
    Operator::mono(2, 0, MatrixConst::identity(dim).scale(&sc(1, 0, 2)))
}

/// `-½∂² + V/x²`.
pub fn hamiltonian(v: &MatrixConst) -> Operator {
    let d = v.dim();
    &Operator::mono(0, 2, MatrixConst::identity(d).scale(&sc(-1, 0, 2))) + &Operator::mono(-2, 0, v.clone())
}

/// `(i/√2)(γ∂ - iM/x)`.
pub fn deformed_supercharge(gamma: &MatrixConst, m: &MatrixConst) -> Operator {
    let c = &Scalar::i() * &Scalar::inv_sqrt2();
    let first = Operator::mono(0, 1, gamma.scale(&c));
    let second = Operator::mono(-1, 0, m.scale(&(&c * &-&Scalar::i())));
    &first + &second
}

/// `x γ / √2`.
pub fn conformal_supercharge(gamma: &MatrixConst) -> Operator {
    Operator::mono(1, 0, gamma.scale(&Scalar::inv_sqrt2()))
}

/// `V = ½(M² - iγM)` for one supercharge.
pub fn potential_of(gamma: &MatrixConst, m: &MatrixConst) -> MatrixConst {
    let m2 = m * m;
    let gm = (gamma * m).scale(&Scalar::i());
    (&m2 - &gm).scale(&sc(1, 0, 2))
}

/// Common skeleton: `H, D, K` plus one `Q`/`Q̃` pair per slot.
fn skeleton(family: Family, gammas: GammaSet, slots: Vec<usize>, ms: &[MatrixConst]) -> GeneratorSet {
    let dim = gammas.dim();
    let v = match ms.first() {
        Some(m) => potential_of(gammas.gamma(slots[0]), m),
        None => MatrixConst::zero(dim),
    };
    let mut gs = GeneratorSet { family, gammas, slots: slots.clone(), generators: Vec::new() };
    gs.push("H", Role::Hamiltonian, hamiltonian(&v));
    gs.push("D", Role::Dilatation, dilatation(dim));
    gs.push("K", Role::Conformal, oscillator_k(dim));
    for (k, &s) in slots.iter().enumerate() {
        let g = gs.gammas.gamma(s).clone();
        let m = ms.get(k).cloned().unwrap_or_else(|| MatrixConst::zero(dim));
        gs.push(format!("Q{}", k + 1), Role::Supercharge, deformed_supercharge(&g, &m));
    }
    for (k, &s) in slots.iter().enumerate() {
        let g = gs.gammas.gamma(s).clone();
        gs.push(format!("Qt{}", k + 1), Role::ConformalSupercharge, conformal_supercharge(&g));
    }
    gs
}

/// The free `2^n × 2^n` oscillator with `osp(2n|2)` generators.
pub fn build_undeformed(n: usize) -> Result<GeneratorSet> {
    let gammas = build_gamma_set(n)?;
    let m = 2 * n;
    let mut gs = skeleton(Family::Undeformed(n), gammas, (1..=m).collect(), &[]);
    let half_i = sc(0, 1, 2);
    for i in 1..=m {
        for j in i + 1..=m {
            let s = gs.gammas.product(&[i, j]).scale(&half_i);
            gs.push(pair_name("Sigma", i, j), Role::RSymmetry, Operator::constant(s));
        }
    }
    Ok(gs)
}

/// Klein deformation `M_I = iβγ_I F` of an arbitrary gamma set.
pub fn klein_ms(gammas: &GammaSet) -> Vec<MatrixConst> {
    let beta = ParamPoly::var(BETA);
    gammas
        .gammas
        .iter()
        .map(|g| (g * &gammas.parity).scale(&Scalar::i()).scale_poly(&beta))
        .collect()
}

/// `n = 1` Klein-deformed oscillator, symbolic `β`.
pub fn build_klein_n1() -> GeneratorSet {
    let gammas = build_gamma_set(1).expect("n = 1");
    let ms = klein_ms(&gammas);
    let mut gs = skeleton(Family::KleinN1, gammas, vec![1, 2], &ms);
    let j = &gs.gammas.parity.scale(&sc(-1, 0, 2)) + &MatrixConst::identity(2).scale_poly(&ParamPoly::var(BETA));
    gs.push("J", Role::RSymmetry, Operator::constant(j));
    gs
}

/// `1 - 2βγ₅` for the `n = 2` Klein model.
fn klein_factor(gammas: &GammaSet) -> MatrixConst {
    let two_beta = ParamPoly::var(BETA).scale(&Scalar::from_int(2));
    &MatrixConst::identity(gammas.dim()) - &gammas.parity.scale_poly(&two_beta)
}

/// `n = 2` Klein-deformed oscillator with `D(2,1;α)` generators, symbolic `β`.
pub fn build_klein_n2() -> GeneratorSet {
    let gammas = build_gamma_set(2).expect("n = 2");
    let ms = klein_ms(&gammas);
    let mut gs = skeleton(Family::KleinN2, gammas, vec![1, 2, 3, 4], &ms);
    let f = klein_factor(&gs.gammas);
    let half_i = sc(0, 1, 2);
    for i in 1..=3 {
        let s = &gs.gammas.product(&[4, i]).scale(&half_i) * &f;
        gs.push(format!("S{i}"), Role::RSymmetry, Operator::constant(s));
    }
    for i in 1..=3 {
        for j in i + 1..=3 {
            let w = &gs.gammas.product(&[i, j]).scale(&half_i) * &f;
            gs.push(pair_name("W", i, j), Role::RSymmetry, Operator::constant(w));
        }
    }
    gs
}

/// `M₁ = νγ₂ + (i/2)γ₁γ₅`, `M₂ = -νγ₄ + (i/2)γ₃γ₅`.
pub fn nonklein_ms(gammas: &GammaSet) -> Vec<MatrixConst> {
    let nu = ParamPoly::var(NU);
    let half_i = sc(0, 1, 2);
    let m1 = &gammas.gamma(2).scale_poly(&nu) + &(gammas.gamma(1) * &gammas.parity).scale(&half_i);
    let m2 = &gammas.gamma(4).scale_poly(&-&nu) + &(gammas.gamma(3) * &gammas.parity).scale(&half_i);
    vec![m1, m2]
}

/// `n = 2` non-Klein deformed oscillator, symbolic `ν`.
pub fn build_nonklein() -> GeneratorSet {
    let gammas = build_gamma_set(2).expect("n = 2");
    let ms = nonklein_ms(&gammas);
    let mut gs = skeleton(Family::NonKleinN2, gammas, vec![1, 3], &ms);
    let j = &MatrixConst::unit(4, 4, 3).scale(&Scalar::i()) - &MatrixConst::unit(4, 3, 4).scale(&Scalar::i());
    gs.push("J", Role::RSymmetry, Operator::constant(j));
    gs
}

/// `(a_I, a_I†)` with `a = Q + iQ̃`, `a† = Q - iQ̃`, one pair per supercharge.
pub fn ladder_ops(gs: &GeneratorSet) -> Vec<(Operator, Operator)> {
    let i = Scalar::i();
    (1..=gs.num_supercharges())
        .map(|k| {
            let it = gs.qt(k).scale(&i);
            (gs.q(k) + &it, gs.q(k) - &it)
        })
        .collect()
}

/// `H_osc = H + K`.
pub fn hamiltonian_osc(gs: &GeneratorSet) -> Operator {
    gs.h() + gs.k()
}

/// `Z = 2H - 2K + 4iD`.
pub fn z_operator(gs: &GeneratorSet) -> Operator {
    let two = Scalar::from_int(2);
    &(&gs.h().scale(&two) - &gs.k().scale(&two)) + &gs.d().scale(&sc(0, 4, 1))
}

/// Diagonal potential matrix `V` read off the `x^{-2}` term of `H`.
pub fn potential(gs: &GeneratorSet) -> MatrixConst {
    gs.h().term(-2, 0).cloned().unwrap_or_else(|| MatrixConst::zero(gs.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    fn beta_zero() -> BTreeMap<String, Rational> {
        BTreeMap::from([(BETA.to_string(), rat(0, 1))])
    }

    #[test]
    fn family_ids_roundtrip() {
        for f in [Family::Undeformed(3), Family::KleinN1, Family::KleinN2, Family::NonKleinN2] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("klein-n3".parse::<Family>().is_err());
    }

    #[test]
    fn every_generator_is_hermitian() {
        for gs in [build_undeformed(2).unwrap(), build_klein_n1(), build_klein_n2(), build_nonklein()] {
            for g in gs.generators() {
                assert!(g.op.is_hermitian(), "{} of {}", g.name, gs.family);
            }
        }
    }

    #[test]
    fn klein_n1_hamiltonian_potential() {
        let gs = build_klein_n1();
        let b = ParamPoly::var(BETA);
        let v = potential(&gs);
        let half = Scalar::from_frac(1, 2);
        assert_eq!(*v.get(0, 0), (&(&b * &b) + &b).scale(&half));
        assert_eq!(*v.get(1, 1), (&(&b * &b) - &b).scale(&half));
    }

    #[test]
    fn klein_n1_at_zero_is_free() {
        let k = build_klein_n1().substitute(&beta_zero());
        let u = build_undeformed(1).unwrap();
        for name in ["H", "D", "K", "Q1", "Q2", "Qt1", "Qt2"] {
            assert_eq!(k.get(name), u.get(name), "{name}");
        }
    }

    #[test]
    fn nonklein_potential_is_closed_form_diagonal() {
        let gs = build_nonklein();
        let nu = ParamPoly::var(NU);
        let nu2 = &nu * &nu;
        let e = |a: i64, b: i64, c: i64| {
            (&(&nu2.scale(&Scalar::from_int(a)) + &nu.scale(&Scalar::from_int(b))) + &ParamPoly::from_int(c))
                .scale(&Scalar::from_frac(1, 8))
        };
        let expected = MatrixConst::diagonal(vec![e(4, 8, 3), e(4, -8, 3), e(4, 0, -1), e(4, 0, -1)]);
        assert_eq!(potential(&gs), expected);
    }

    #[test]
    fn ladder_adjoints() {
        for gs in [build_klein_n1(), build_klein_n2(), build_nonklein()] {
            for (a, ad) in ladder_ops(&gs) {
                assert_eq!(a.adjoint(), ad);
            }
        }
    }
}
