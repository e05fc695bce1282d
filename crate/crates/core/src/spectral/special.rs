//! Γ and Pochhammer symbols.

use num_traits::One;

use crate::algebra::{ParamPoly, Rational};
use crate::error::{Error, Result};

/// `Γ(a)`; errors at the poles `a ∈ {0, -1, -2, …}`.
pub fn gamma(a: f64) -> Result<f64> {
    if a <= 0.0 && a == a.floor() {
        return Err(Error::Pole(format!("Γ({a})")));
    }
    Ok(statrs::function::gamma::gamma(a))
}

/// Rising factorial `(x)_n = x (x+1) ⋯ (x+n-1)` as a polynomial.
pub fn pochhammer_poly(x: &ParamPoly, n: u32) -> ParamPoly {
    (0..n).fold(ParamPoly::one(), |acc, k| &acc * &(x + &ParamPoly::from_int(k.into())))
}

pub fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (x + f64::from(k)))
}

pub fn pochhammer_rational(x: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, k| acc * (x + Rational::from_integer(k.into())))
}

pub fn factorial(n: u32) -> u128 {
    (1..=u128::from(n)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn gamma_half_is_root_pi() {
        assert!((gamma(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-14);
        assert!(gamma(-2.0).is_err());
        assert!((gamma(-0.5).unwrap() + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn pochhammer_forms_agree() {
        assert_eq!(pochhammer_rational(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(0.5, 3), 1.875);
        let p = pochhammer_poly(&ParamPoly::from_rational(rat(1, 2)), 3);
        assert_eq!(p.as_rational(), Some(rat(15, 8)));
        assert_eq!(factorial(5), 120);
    }
}
