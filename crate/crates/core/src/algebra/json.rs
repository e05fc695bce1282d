//! Canonical JSON rendering of exact values.
//!
//! Rationals are written as `"p"` or `"p/q"` strings. A polynomial entry is a
//! list of `{re, im, rt2, monomial}` terms meaning `(re + i·im)·√2^rt2·monomial`.

use serde_json::{json, Value};

use super::matrix::MatrixConst;
use super::operator::Operator;
use super::poly::ParamPoly;
use super::scalar::{rat_string, Rational, Scalar};

pub fn rational(r: &Rational) -> Value {
    Value::String(rat_string(r))
}

pub fn scalar(s: &Scalar) -> Value {
    Value::Array(
        s.components()
            .into_iter()
            .map(|(rt2, g)| json!({"re": rat_string(&g.re), "im": rat_string(&g.im), "rt2": rt2}))
            .collect(),
    )
}

pub fn poly(p: &ParamPoly) -> Value {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        for (rt2, g) in c.components() {
            out.push(json!({
                "re": rat_string(&g.re),
                "im": rat_string(&g.im),
                "rt2": rt2,
                "monomial": m.to_string(),
            }));
        }
    }
    Value::Array(out)
}

pub fn matrix(m: &MatrixConst) -> Value {
    let d = m.dim();
    Value::Array((0..d).map(|i| Value::Array((0..d).map(|j| poly(m.get(i, j))).collect())).collect())
}

pub fn operator(op: &Operator) -> Value {
    let terms: Vec<Value> = op
        .terms()
        .map(|(mono, mat)| json!({"k": mono.k, "m": mono.m, "matrix": matrix(mat)}))
        .collect();
    json!({"dim": op.dim(), "terms": terms})
}
