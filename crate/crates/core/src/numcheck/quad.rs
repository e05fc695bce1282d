//! Norms and overlaps by double-exponential quadrature on the half line.

use std::collections::BTreeMap;

use num_complex::Complex64;
use quadrature::double_exponential;

use crate::error::{Error, Result};
use crate::spectral::StateFn;

/// Internal target; the reported contract is looser.
const INTERNAL_TOL: f64 = 1e-12;

fn lowest_exponent(s: &StateFn, values: &BTreeMap<String, f64>) -> Option<f64> {
    s.exponents().map(|(_, b)| b.exp.eval(values)).reduce(f64::min)
}

/// Cut in `x` beyond which `x^{2k} e^{-x²}` is negligible.
fn x_max(s: &StateFn, values: &BTreeMap<String, f64>) -> f64 {
    let top = s.exponents().map(|(_, b)| b.exp.eval(values)).fold(0.0, f64::max);
    (80.0 + 4.0 * top).sqrt()
}

/// `∫_ℝ ⟨a(x), b(x)⟩ dx`. Parameters are numeric in `values`.
pub fn quad_overlap(a: &StateFn, b: &StateFn, values: &BTreeMap<String, f64>) -> Result<Complex64> {
    for s in [a, b] {
        if let Some(p) = lowest_exponent(s, values) {
            if p <= -0.5 {
                return Err(Error::Divergent(format!("exponent {p} <= -1/2 is not square integrable")));
            }
        }
    }
    let xmax = x_max(a, values).max(x_max(b, values));
    let cuts = [1.0, 2.5, 4.5, xmax.max(6.0)];
    // x = u^m on [0,1] turns x^q into m u^{m(q+1)-1}, smooth enough for m(q+1) >= 4
    let q = 2.0 * [a, b].iter().filter_map(|s| lowest_exponent(s, values)).fold(0.0, f64::min);
    let m = (4.0 / (q + 1.0)).ceil().max(1.0);
    // integrand summed over ±x on the half line
    let part = |re: bool| {
        let f = |x: f64| {
            if x <= 0.0 {
                return 0.0;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for xs in [x, -x] {
                let (va, vb) = (a.eval(xs, values), b.eval(xs, values));
                acc += va.iter().zip(&vb).map(|(p, q)| p.conj() * q).sum::<Complex64>();
            }
            if re {
                acc.re
            } else {
                acc.im
            }
        };
        let near = |u: f64| m * u.powf(m - 1.0) * f(u.powf(m));
        double_exponential::integrate(near, 0.0, 1.0, INTERNAL_TOL).integral
            + cuts.windows(2).map(|w| double_exponential::integrate(f, w[0], w[1], INTERNAL_TOL).integral).sum::<f64>()
    };
    Ok(Complex64::new(part(true), part(false)))
}

/// `∫_ℝ |ψ|² dx`.
pub fn quad_norm(s: &StateFn, values: &BTreeMap<String, f64>) -> Result<f64> {
    Ok(quad_overlap(s, s, values)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ParamPoly};
    use crate::spectral::Affine;

    #[test]
    fn gaussian() {
        let s = StateFn::single(1, 0, Affine::default(), ParamPoly::one());
        let v = quad_norm(&s, &BTreeMap::new()).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-10, "{v}");
    }

    #[test]
    fn singular_power_gives_gamma_quarter() {
        // |x|^{-1/4} squared: ∫ |x|^{-1/2} e^{-x²} = Γ(1/4)
        let s = StateFn::single(1, 0, Affine::constant(rat(-1, 4)), ParamPoly::one());
        let v = quad_norm(&s, &BTreeMap::new()).unwrap();
        assert!((v - statrs::function::gamma::gamma(0.25)).abs() < 1e-9, "{v}");
    }

    #[test]
    fn divergence_is_reported() {
        let s = StateFn::single(1, 0, Affine::constant(rat(-1, 2)), ParamPoly::one());
        assert!(matches!(quad_norm(&s, &BTreeMap::new()), Err(Error::Divergent(_))));
    }
}
