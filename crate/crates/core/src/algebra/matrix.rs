//! Dense constant matrices with parameter-polynomial entries.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::ParamPoly;
use super::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixConst {
    dim: usize,
    entries: Vec<ParamPoly>,
}

impl MatrixConst {
    pub fn zero(dim: usize) -> Self {
        MatrixConst { dim, entries: vec![ParamPoly::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = MatrixConst::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ParamPoly::one();
        }
        m
    }

    pub fn from_scalars(dim: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert_eq!(rows.len(), dim);
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim);
            entries.extend(r.into_iter().map(ParamPoly::constant));
        }
        MatrixConst { dim, entries }
    }

    pub fn from_entries(dim: usize, entries: Vec<ParamPoly>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        MatrixConst { dim, entries }
    }

    pub fn diagonal(entries: Vec<ParamPoly>) -> Self {
        let dim = entries.len();
        let mut m = MatrixConst::zero(dim);
        for (i, e) in entries.into_iter().enumerate() {
            m.entries[i * dim + i] = e;
        }
        m
    }

    /// `e_{ij}` with 1-based indices.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = MatrixConst::zero(dim);
        m.entries[(i - 1) * dim + (j - 1)] = ParamPoly::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &ParamPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ParamPoly) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[ParamPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ParamPoly::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        MatrixConst { dim: self.dim, entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn scale_poly(&self, p: &ParamPoly) -> Self {
        MatrixConst { dim: self.dim, entries: self.entries.iter().map(|e| e * p).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        let d = self.dim;
        let mut out = MatrixConst::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.conj_transpose() == *self
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|j| i == j || self.entries[i * d + j].is_zero()))
    }

    pub fn diag(&self) -> Vec<ParamPoly> {
        (0..self.dim).map(|i| self.entries[i * self.dim + i].clone()).collect()
    }

    pub fn trace(&self) -> ParamPoly {
        let mut t = ParamPoly::zero();
        for i in 0..self.dim {
            t.add_assign_ref(&self.entries[i * self.dim + i]);
        }
        t
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_multiple_of_identity(&self) -> Option<ParamPoly> {
        if !self.is_diagonal() {
            return None;
        }
        let d = self.diag();
        if d.iter().all(|x| *x == d[0]) {
            Some(d[0].clone())
        } else {
            None
        }
    }

    /// Block-antidiagonal with respect to the even/odd split of the index range.
    pub fn is_block_antidiagonal(&self) -> bool {
        let d = self.dim;
        let h = d / 2;
        (0..d).all(|i| (0..d).all(|j| ((i < h) != (j < h)) || self.entries[i * d + j].is_zero()))
    }

    pub fn kron(&self, o: &MatrixConst) -> MatrixConst {
        let (a, b) = (self.dim, o.dim);
        let d = a * b;
        let mut out = MatrixConst::zero(d);
        for i in 0..a {
            for j in 0..a {
                let x = &self.entries[i * a + j];
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        let y = &o.entries[k * b + l];
                        if y.is_zero() {
                            continue;
                        }
                        out.entries[(i * b + k) * d + (j * b + l)] = x * y;
                    }
                }
            }
        }
        out
    }

    pub fn substitute(&self, assign: &BTreeMap<String, Rational>) -> Self {
        MatrixConst { dim: self.dim, entries: self.entries.iter().map(|e| e.substitute(assign)).collect() }
    }

    pub fn substitute_polys(&self, assign: &BTreeMap<String, ParamPoly>) -> Self {
        MatrixConst {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.substitute_polys(assign)).collect(),
        }
    }

    pub fn commutator(&self, o: &MatrixConst) -> MatrixConst {
        &(self * o) - &(o * self)
    }

    pub fn anticommutator(&self, o: &MatrixConst) -> MatrixConst {
        &(self * o) + &(o * self)
    }

    pub fn pow(&self, e: u32) -> MatrixConst {
        let mut out = MatrixConst::identity(self.dim);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl<'a> Mul<&'a MatrixConst> for &'a MatrixConst {
    type Output = MatrixConst;
    fn mul(self, o: &MatrixConst) -> MatrixConst {
        assert_eq!(self.dim, o.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = MatrixConst::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &o.entries[k * d + j];
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * d + j].add_product(a, b);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a MatrixConst> for &'a MatrixConst {
    type Output = MatrixConst;
    fn add(self, o: &MatrixConst) -> MatrixConst {
        assert_eq!(self.dim, o.dim, "matrix dimension mismatch");
        MatrixConst {
            dim: self.dim,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a MatrixConst> for &'a MatrixConst {
    type Output = MatrixConst;
    fn sub(self, o: &MatrixConst) -> MatrixConst {
        assert_eq!(self.dim, o.dim, "matrix dimension mismatch");
        MatrixConst {
            dim: self.dim,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &MatrixConst {
    type Output = MatrixConst;
    fn neg(self) -> MatrixConst {
        MatrixConst { dim: self.dim, entries: self.entries.iter().map(|e| -e).collect() }
    }
}

impl fmt::Display for MatrixConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
