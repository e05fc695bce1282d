//! Matrix-valued differential operators `Σ M_{k,m} x^k ∂^m` in normal order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::MatrixConst;
use super::poly::ParamPoly;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Normal-ordered monomial `x^k ∂_x^m`; `k` may be negative.
///
/// Ordered lexicographically by `(k, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffMono {
    pub k: i32,
    pub m: u32,
}

impl DiffMono {
    pub fn new(k: i32, m: u32) -> Self {
        DiffMono { k, m }
    }

    /// Scaling weight `m - k`; `x∂` commutes with `x^k ∂^m` up to `(k - m)`.
    pub fn weight(&self) -> i32 {
        self.m as i32 - self.k
    }
}

/// Falling factorial `k (k-1) ⋯ (k-j+1)` for any integer `k`.
fn falling(k: i32, j: u32) -> BigInt {
    (0..j as i32).fold(BigInt::one(), |acc, t| acc * BigInt::from(k - t))
}

fn binomial(m: u32, j: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..j {
        num *= BigInt::from(m - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operator {
    dim: usize,
    terms: BTreeMap<DiffMono, MatrixConst>,
}

impl Operator {
    pub fn zero(dim: usize) -> Self {
        Operator { dim, terms: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        Operator::constant(MatrixConst::identity(dim))
    }

    pub fn constant(m: MatrixConst) -> Self {
        Operator::mono(0, 0, m)
    }

    /// `M · x^k ∂^m`.
    pub fn mono(k: i32, m: u32, mat: MatrixConst) -> Self {
        let dim = mat.dim();
        let mut terms = BTreeMap::new();
        if !mat.is_zero() {
            terms.insert(DiffMono::new(k, m), mat);
        }
        Operator { dim, terms }
    }

    /// `x^k · I`.
    pub fn x_pow(dim: usize, k: i32) -> Self {
        Operator::mono(k, 0, MatrixConst::identity(dim))
    }

    /// `∂^m · I`.
    pub fn d_pow(dim: usize, m: u32) -> Self {
        Operator::mono(0, m, MatrixConst::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMono, &MatrixConst)> {
        self.terms.iter()
    }

    pub fn term(&self, k: i32, m: u32) -> Option<&MatrixConst> {
        self.terms.get(&DiffMono::new(k, m))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mono: DiffMono, mat: &MatrixConst) {
        if mat.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(cur) => {
                *cur = &*cur + mat;
                if cur.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, mat.clone());
            }
        }
    }

    fn check_dim(&self, o: &Operator) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: o.dim });
        }
        Ok(())
    }

    /// Product `self ∘ o`, normal ordered with `∂^m x^k = Σ_j C(m,j) k^{(j)} x^{k-j} ∂^{m-j}`.
    pub fn compose(&self, o: &Operator) -> Result<Operator> {
        self.check_dim(o)?;
        let mut out = Operator::zero(self.dim);
        for (a, ma) in &self.terms {
            for (b, mb) in &o.terms {
                let prod = ma * mb;
                if prod.is_zero() {
                    continue;
                }
                for j in 0..=a.m {
                    let c = binomial(a.m, j) * falling(b.k, j);
                    if c.is_zero() {
                        continue;
                    }
                    let mono = DiffMono::new(a.k + b.k - j as i32, a.m - j + b.m);
                    let coeff = Scalar::from_rational(Rational::from_integer(c));
                    if coeff.is_one() {
                        out.add_term(mono, &prod);
                    } else {
                        out.add_term(mono, &prod.scale(&coeff));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Operator) -> Result<Operator> {
        Ok(&self.compose(o)? - &o.compose(self)?)
    }

    pub fn anticommutator(&self, o: &Operator) -> Result<Operator> {
        Ok(&self.compose(o)? + &o.compose(self)?)
    }

    /// Graded bracket: anticommutator when both arguments are odd.
    pub fn bracket(&self, o: &Operator, both_odd: bool) -> Result<Operator> {
        if both_odd {
            self.anticommutator(o)
        } else {
            self.commutator(o)
        }
    }

    /// Formal adjoint for `∫dx`, boundary terms dropped:
    /// `(M x^k ∂^m)† = (-∂)^m x^k M†`.
    pub fn adjoint(&self) -> Operator {
        let mut out = Operator::zero(self.dim);
        for (mono, mat) in &self.terms {
            let sign = if mono.m % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            let left = Operator::mono(0, mono.m, MatrixConst::identity(self.dim).scale(&sign));
            let right = Operator::mono(mono.k, 0, mat.conj_transpose());
            out = &out + &(&left * &right);
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }

    pub fn substitute(&self, assign: &BTreeMap<String, Rational>) -> Operator {
        let mut out = Operator::zero(self.dim);
        for (mono, mat) in &self.terms {
            out.add_term(*mono, &mat.substitute(assign));
        }
        out
    }

    pub fn substitute_polys(&self, assign: &BTreeMap<String, ParamPoly>) -> Operator {
        let mut out = Operator::zero(self.dim);
        for (mono, mat) in &self.terms {
            out.add_term(*mono, &mat.substitute_polys(assign));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Operator {
        let mut out = Operator::zero(self.dim);
        for (mono, mat) in &self.terms {
            out.add_term(*mono, &mat.scale(c));
        }
        out
    }

    pub fn scale_poly(&self, p: &ParamPoly) -> Operator {
        let mut out = Operator::zero(self.dim);
        for (mono, mat) in &self.terms {
            out.add_term(*mono, &mat.scale_poly(p));
        }
        out
    }

    /// `S · self · S'` for constant matrices (similarity maps).
    pub fn sandwich(&self, left: &MatrixConst, right: &MatrixConst) -> Operator {
        let mut out = Operator::zero(self.dim);
        for (mono, mat) in &self.terms {
            out.add_term(*mono, &(&(left * mat) * right));
        }
        out
    }

    /// Dilatation weight `λ` with `[D, A] = iλA`, for the standard
    /// `D = -(i/2)(x∂ + 1/2)` supplied as `dilatation`.
    ///
    /// Returns `None` when `A` is not an eigen-operator.
    pub fn grade(&self, dilatation: &Operator) -> Option<Rational> {
        let c = dilatation.commutator(self).ok()?;
        if self.is_zero() {
            return None;
        }
        // Find λ from one entry, then verify the identity exactly.
        if c.is_zero() {
            return Some(Rational::zero());
        }
        let (mono, mat) = self.terms.iter().next()?;
        let idx = mat.entries().iter().position(|e| !e.is_zero())?;
        let a = &mat.entries()[idx];
        let (am, ac) = a.leading()?;
        let bc = c.terms.get(mono).map_or_else(Scalar::zero, |cm| cm.entries()[idx].coeff(am));
        let ratio = &bc * &(&Scalar::i() * ac).inv()?;
        let lambda = ratio.as_rational()?.clone();
        let expect = self.scale(&(&Scalar::i() * &Scalar::from_rational(lambda.clone())));
        if expect == c {
            Some(lambda)
        } else {
            None
        }
    }

    /// Whether all matrix coefficients are diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.terms.values().all(MatrixConst::is_diagonal)
    }
}

impl<'a> Add<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn add(self, o: &Operator) -> Operator {
        assert_eq!(self.dim, o.dim, "operator dimension mismatch");
        let mut out = self.clone();
        for (mono, mat) in &o.terms {
            out.add_term(*mono, mat);
        }
        out
    }
}

impl<'a> Sub<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn sub(self, o: &Operator) -> Operator {
        assert_eq!(self.dim, o.dim, "operator dimension mismatch");
        let mut out = self.clone();
        for (mono, mat) in &o.terms {
            out.add_term(*mono, &-mat);
        }
        out
    }
}

/// Composition; panics on dimension mismatch (use [`Operator::compose`] for a `Result`).
impl<'a> Mul<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn mul(self, o: &Operator) -> Operator {
        self.compose(o).expect("operator dimension mismatch")
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (mono, mat) in &self.terms {
            writeln!(f, "x^{} d^{} *", mono.k, mono.m)?;
            write!(f, "{mat}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> Operator {
        Operator::d_pow(1, 1)
    }

    fn x(k: i32) -> Operator {
        Operator::x_pow(1, k)
    }

    fn c(n: i64) -> MatrixConst {
        MatrixConst::identity(1).scale(&Scalar::from_int(n))
    }

    #[test]
    fn leibniz_on_degree_one() {
        // ∂x = x∂ + 1
        let want = &Operator::mono(1, 1, c(1)) + &Operator::identity(1);
        assert_eq!(d().compose(&x(1)).unwrap(), want);
    }

    #[test]
    fn second_derivative_through_cube() {
        // Oracle: apply ∂ twice by hand: ∂²x³ = x³∂² + 6x²∂ + 6x
        let want = &(&Operator::mono(3, 2, c(1)) + &Operator::mono(2, 1, c(6))) + &Operator::mono(1, 0, c(6));
        let got = Operator::d_pow(1, 2).compose(&x(3)).unwrap();
        assert_eq!(got, want);
        // independent route: (∂∘∂)∘x³ equals ∂∘(∂∘x³)
        assert_eq!(d().compose(&d().compose(&x(3)).unwrap()).unwrap(), want);
    }

    #[test]
    fn reorders_negative_powers() {
        // ∂ x^{-1} = x^{-1}∂ - x^{-2}
        let want = &Operator::mono(-1, 1, c(1)) + &Operator::mono(-2, 0, c(-1));
        assert_eq!(d().compose(&x(-1)).unwrap(), want);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Operator::identity(2);
        let b = Operator::identity(4);
        assert_eq!(a.compose(&b), Err(Error::DimensionMismatch { left: 2, right: 4 }));
    }

    #[test]
    fn adjoint_of_derivative() {
        assert_eq!(d().adjoint(), -&d());
        assert_eq!(x(3).adjoint(), x(3));
    }

    #[test]
    fn dilatation_is_formally_self_adjoint() {
        // D = -(i/2)(x∂ + 1/2)
        let mi2 = Scalar::gaussian(Rational::zero(), Rational::new((-1).into(), 2.into()));
        let d_op = &Operator::mono(1, 1, MatrixConst::identity(1).scale(&mi2))
            + &Operator::identity(1).scale(&(&mi2 * &Scalar::from_frac(1, 2)));
        assert!(d_op.is_hermitian());
        assert_eq!(d_op.grade(&d_op), Some(Rational::zero()));
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let a = &Operator::mono(-1, 2, c(3)) + &x(2);
        assert!(a.commutator(&a).unwrap().is_zero());
    }
}
