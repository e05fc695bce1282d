//! Span membership over the field of rational functions in the parameters,
//! carried out without division: every reduction step either divides by a
//! constant pivot or multiplies through by a polynomial pivot.

use std::collections::BTreeMap;

use super::operator::Operator;
use super::poly::ParamPoly;

pub type Coords<K> = BTreeMap<K, ParamPoly>;

/// Coordinates of an operator: `(k, m, row, col) -> entry`.
pub fn operator_coords(op: &Operator) -> Coords<(i32, u32, usize, usize)> {
    let mut out = BTreeMap::new();
    let d = op.dim();
    for (mono, mat) in op.terms() {
        for i in 0..d {
            for j in 0..d {
                let e = mat.get(i, j);
                if !e.is_zero() {
                    out.insert((mono.k, mono.m, i, j), e.clone());
                }
            }
        }
    }
    out
}

fn axpy<K: Ord + Clone>(t: &mut Coords<K>, a: &ParamPoly, row: &Coords<K>) {
    for (k, v) in row {
        let e = t.entry(k.clone()).or_default();
        e.add_product(a, v);
        if e.is_zero() {
            t.remove(k);
        }
    }
}

fn scale_in_place<K: Ord>(t: &mut Coords<K>, p: &ParamPoly) {
    for v in t.values_mut() {
        *v = &*v * p;
    }
    t.retain(|_, v| !v.is_zero());
}

struct Row<K> {
    pivot: K,
    value: ParamPoly,
    coords: Coords<K>,
    combo: Vec<ParamPoly>,
}

/// Outcome of reducing a target against a basis:
/// `scale · target - Σ coeffs[l] · basis[l] = residual`.
#[derive(Clone, Debug)]
pub struct Reduction<K> {
    pub scale: ParamPoly,
    pub coeffs: Vec<ParamPoly>,
    pub residual: Coords<K>,
}

impl<K> Reduction<K> {
    pub fn in_span(&self) -> bool {
        self.residual.is_empty()
    }

    /// Coefficients as polynomials, available when the scale is a constant.
    pub fn polynomial_coeffs(&self) -> Option<Vec<ParamPoly>> {
        let s = self.scale.as_constant()?.inv()?;
        Some(self.coeffs.iter().map(|c| c.scale(&s)).collect())
    }
}

/// Row-echelon form of a list of vectors with polynomial entries.
pub struct Echelon<K: Ord + Clone> {
    n: usize,
    rows: Vec<Row<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(basis: &[Coords<K>]) -> Self {
        let n = basis.len();
        let mut ech = Echelon { n, rows: Vec::new() };
        for (l, b) in basis.iter().enumerate() {
            let mut combo = vec![ParamPoly::zero(); n];
            combo[l] = ParamPoly::one();
            let (coords, combo) = ech.reduce_raw(b.clone(), combo);
            if coords.is_empty() {
                continue;
            }
            let pivot = coords
                .iter()
                .find(|(_, v)| v.as_constant().is_some())
                .or_else(|| coords.iter().next())
                .map(|(k, _)| k.clone())
                .expect("non-empty row");
            let value = coords[&pivot].clone();
            ech.rows.push(Row { pivot, value, coords, combo });
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_raw(&self, mut t: Coords<K>, mut combo: Vec<ParamPoly>) -> (Coords<K>, Vec<ParamPoly>) {
        // Here `combo` tracks t = Σ combo·basis (scaled along with t).
        for row in &self.rows {
            let Some(v) = t.get(&row.pivot).cloned() else { continue };
            match row.value.as_constant().and_then(|c| c.inv()) {
                Some(pinv) => {
                    let f = -&v.scale(&pinv);
                    axpy(&mut t, &f, &row.coords);
                    for (c, rc) in combo.iter_mut().zip(&row.combo) {
                        c.add_product(&f, rc);
                    }
                }
                None => {
                    scale_in_place(&mut t, &row.value);
                    let f = -&v;
                    axpy(&mut t, &f, &row.coords);
                    for (c, rc) in combo.iter_mut().zip(&row.combo) {
                        *c = &*c * &row.value;
                        c.add_product(&f, rc);
                    }
                }
            }
        }
        (t, combo)
    }

    /// Reduce `target` against the basis.
    pub fn reduce(&self, target: &Coords<K>) -> Reduction<K> {
        let mut t = target.clone();
        let mut scale = ParamPoly::one();
        let mut coeffs = vec![ParamPoly::zero(); self.n];
        for row in &self.rows {
            let Some(v) = t.get(&row.pivot).cloned() else { continue };
            match row.value.as_constant().and_then(|c| c.inv()) {
                Some(pinv) => {
                    let f = v.scale(&pinv);
                    axpy(&mut t, &-&f, &row.coords);
                    for (c, rc) in coeffs.iter_mut().zip(&row.combo) {
                        c.add_product(&f, rc);
                    }
                }
                None => {
                    scale_in_place(&mut t, &row.value);
                    axpy(&mut t, &-&v, &row.coords);
                    scale = &scale * &row.value;
                    for (c, rc) in coeffs.iter_mut().zip(&row.combo) {
                        *c = &*c * &row.value;
                        c.add_product(&v, rc);
                    }
                }
            }
        }
        Reduction { scale, coeffs, residual: t }
    }
}

/// Reduce an operator against a list of operators.
pub fn reduce_operator(target: &Operator, basis: &[Operator]) -> (Reduction<(i32, u32, usize, usize)>, Operator) {
    let coords: Vec<_> = basis.iter().map(operator_coords).collect();
    let ech = Echelon::new(&coords);
    let red = ech.reduce(&operator_coords(target));
    // Rebuild the residual as an operator for reporting.
    let mut residual = target.scale_poly(&red.scale);
    for (c, b) in red.coeffs.iter().zip(basis) {
        residual = &residual - &b.scale_poly(c);
    }
    (red, residual)
}
