//! Gamma matrices of the complex Clifford algebra in dimension 2^n and the
//! fermion parity that anticommutes with all of them.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{json, MatrixConst, Scalar};
use crate::error::{Error, Result};

/// The three Pauli matrices.
pub fn pauli() -> [MatrixConst; 3] {
    let (z, o, i) = (Scalar::zero(), Scalar::one(), Scalar::i());
    [
        MatrixConst::from_scalars(2, vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]]),
        MatrixConst::from_scalars(2, vec![vec![z.clone(), -&i], vec![i, z.clone()]]),
        MatrixConst::from_scalars(2, vec![vec![o.clone(), z.clone()], vec![z, -&o]]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSet {
    pub n: usize,
    pub gammas: Vec<MatrixConst>,
    pub parity: MatrixConst,
}

impl GammaSet {
    pub fn dim(&self) -> usize {
        self.parity.dim()
    }

    /// `γ_I` with a 1-based index.
    pub fn gamma(&self, i: usize) -> &MatrixConst {
        &self.gammas[i - 1]
    }

    /// Ordered product `γ_{i1} γ_{i2} …` (1-based indices).
    pub fn product(&self, idx: &[usize]) -> MatrixConst {
        idx.iter().fold(MatrixConst::identity(self.dim()), |acc, &i| &acc * self.gamma(i))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "dim": self.dim(),
            "gammas": self.gammas.iter().map(json::matrix).collect::<Vec<_>>(),
            "parity": json::matrix(&self.parity),
        })
    }
}

/// Recursive construction: `γ = σ₁, σ₂`, `F = σ₃` at `n = 1`; then
/// `σ₂ ⊗ {γ_1 … γ_{2n-2}, F}` followed by `σ₁ ⊗ I`, with `F = σ₃ ⊗ I`.
pub fn build_gamma_set(n: usize) -> Result<GammaSet> {
    if n < 1 {
        return Err(Error::InvalidArgument("gamma set needs n >= 1".into()));
    }
    let [s1, s2, s3] = pauli();
    let mut gs = GammaSet { n: 1, gammas: vec![s1.clone(), s2.clone()], parity: s3.clone() };
    for level in 2..=n {
        let id = MatrixConst::identity(gs.dim());
        let mut gammas: Vec<MatrixConst> = gs.gammas.iter().map(|g| s2.kron(g)).collect();
        gammas.push(s2.kron(&gs.parity));
        gammas.push(s1.kron(&id));
        gs = GammaSet { n: level, gammas, parity: s3.kron(&id) };
    }
    Ok(gs)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RelationReport {
    pub relation: &'static str,
    pub pass: bool,
    /// Failing index pairs (1-based; index 0 denotes the parity matrix).
    pub failures: Vec<(usize, usize)>,
}

/// `{γ_I, γ_J} = 2δ_IJ` for every pair.
pub fn verify_clifford(gs: &GammaSet) -> RelationReport {
    let d = gs.dim();
    let two = MatrixConst::identity(d).scale(&Scalar::from_int(2));
    let zero = MatrixConst::zero(d);
    let mut failures = Vec::new();
    for i in 1..=gs.gammas.len() {
        for j in i..=gs.gammas.len() {
            let ac = gs.gamma(i).anticommutator(gs.gamma(j));
            if ac != if i == j { two.clone() } else { zero.clone() } {
                failures.push((i, j));
            }
        }
    }
    RelationReport { relation: "clifford", pass: failures.is_empty(), failures }
}

/// `F² = I`, `{F, γ_I} = 0`, `F = diag(I, -I)`, every `γ_I` Hermitian and
/// block-antidiagonal.
pub fn verify_parity(gs: &GammaSet) -> RelationReport {
    let d = gs.dim();
    let f = &gs.parity;
    let mut failures = Vec::new();
    let expected = MatrixConst::diagonal(
        (0..d).map(|k| crate::algebra::ParamPoly::from_int(if k < d / 2 { 1 } else { -1 })).collect(),
    );
    if *f != expected || (f * f) != MatrixConst::identity(d) {
        failures.push((0, 0));
    }
    for i in 1..=gs.gammas.len() {
        let g = gs.gamma(i);
        if !f.anticommutator(g).is_zero() || !g.is_hermitian() || !g.is_block_antidiagonal() {
            failures.push((0, i));
        }
    }
    RelationReport { relation: "parity", pass: failures.is_empty(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ParamPoly;

    #[test]
    fn pauli_products() {
        let [s1, s2, s3] = pauli();
        assert_eq!(&s1 * &s2, s3.scale(&Scalar::i()));
        assert_eq!(&s3 * &s3, MatrixConst::identity(2));
        assert_eq!(*s2.get(0, 1), ParamPoly::constant(-&Scalar::i()));
        assert_eq!(*s2.get(1, 0), ParamPoly::constant(Scalar::i()));
    }

    #[test]
    fn n2_matches_tensor_forms() {
        let [s1, s2, s3] = pauli();
        let i2 = MatrixConst::identity(2);
        let gs = build_gamma_set(2).unwrap();
        assert_eq!(gs.gammas, vec![s2.kron(&s1), s2.kron(&s2), s2.kron(&s3), s1.kron(&i2)]);
        assert_eq!(gs.parity, s3.kron(&i2));
        assert_eq!(gs.product(&[1, 2, 3, 4]), gs.parity);
    }

    #[test]
    fn relations_hold_up_to_n4() {
        for n in 1..=4 {
            let gs = build_gamma_set(n).unwrap();
            assert!(verify_clifford(&gs).pass, "clifford n={n}");
            assert!(verify_parity(&gs).pass, "parity n={n}");
            for g in &gs.gammas {
                assert!(g.trace().is_zero());
            }
        }
    }

    #[test]
    fn corrupted_set_reports_pair() {
        let mut gs = build_gamma_set(1).unwrap();
        gs.gammas[1] = gs.gammas[0].clone();
        let r = verify_clifford(&gs);
        assert!(!r.pass);
        assert_eq!(r.failures, vec![(1, 2)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(build_gamma_set(0).is_err());
    }
}
