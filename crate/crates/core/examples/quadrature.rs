//! Quadrature norms and Gram matrices against the Gamma-function closed forms.
use std::collections::BTreeMap;

use superosc::algebra::{rat, ParamPoly};
use superosc::numcheck::{gram_matrix, klein_n1_states, nonklein_states, norms_check, quad_norm};
use superosc::spectral::{Affine, StateFn};

fn main() -> superosc::Result<()> {
    let s = StateFn::single(1, 0, Affine::constant(rat(-1, 4)), ParamPoly::one());
    println!("int |x|^(-1/2) e^(-x^2) = {:.12}", quad_norm(&s, &BTreeMap::new())?);

    let r = norms_check(&[rat(-1, 4), rat(0, 1), rat(1, 4), rat(2, 5)], &[rat(1, 2), rat(1, 1), rat(2, 1)], 5, 1e-8)?;
    println!("{}: pass={} ({} rows)", r.title, r.pass(), r.rows.len());

    let g = gram_matrix(&klein_n1_states(&rat(1, 4), 5, true)?, 1e-8)?;
    println!("klein-n1 gram: pass={} max err {:.1e}", g.pass(), g.rows.iter().map(|x| x.abs_err()).fold(0.0, f64::max));
    let g = gram_matrix(&nonklein_states(&rat(7, 10), 4)?, 1e-8)?;
    println!("nonklein gram: pass={} max err {:.1e}", g.pass(), g.rows.iter().map(|x| x.abs_err()).fold(0.0, f64::max));
    Ok(())
}
