//! Exact arithmetic for matrix-valued differential operators in one variable.

pub mod json;
pub mod linear;
pub mod matrix;
pub mod operator;
pub mod poly;
pub mod scalar;

pub use matrix::MatrixConst;
pub use operator::{DiffMono, Operator};
pub use poly::{Monomial, ParamPoly};
pub use scalar::{parse_rational, rat, rat_int, rat_string, rat_to_f64, Gauss, Rational, Scalar};
