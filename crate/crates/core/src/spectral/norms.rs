//! Ladder coefficients `Z_n` and norms of the unnormalized tower states.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{json as js, rat_string, rat_to_f64, ParamPoly, Rational, Scalar};
use crate::error::{Error, Result};
use crate::generators::{BETA, NU};

use super::special::{factorial, gamma, pochhammer_poly};

fn beta_eps(eps: i8) -> ParamPoly {
    ParamPoly::var(BETA).scale(&Scalar::from_int(eps.into()))
}

/// `Z_{2k} = 2k`, `Z_{2k+1} = 2k+1-2εβ`.
pub fn ladder_coeff(eps: i8, n: u32) -> ParamPoly {
    let z = ParamPoly::from_int(n.into());
    if n.is_multiple_of(2) {
        z
    } else {
        &z - &beta_eps(eps).scale(&Scalar::from_int(2))
    }
}

/// `M_0 … M_{n_max}` from `M_{n+1} = (1+2εβ(-1)^{n+1}) M_n + Z_n² M_{n-1}`.
pub fn norm_recursion(eps: i8, n_max: u32) -> Vec<ParamPoly> {
    let mut m = vec![ParamPoly::one()];
    for n in 0..n_max {
        let sign = if n % 2 == 0 { -1 } else { 1 };
        let f = &ParamPoly::one() + &beta_eps(eps).scale(&Scalar::from_int(2 * sign));
        let mut next = &f * &m[n as usize];
        if n > 0 {
            let z = ladder_coeff(eps, n);
            next = &next + &(&(&z * &z) * &m[n as usize - 1]);
        }
        m.push(next);
    }
    m
}

/// Numerator and denominator of the Pochhammer closed form:
/// `M_{2k} = k!(-2εβ)_{2k}/(-εβ)_k`, `M_{2k+1} = (k!/2)(-2εβ)_{2k+2}/(-εβ)_{k+1}`.
pub fn closed_form_parts(eps: i8, n: u32) -> (ParamPoly, ParamPoly) {
    let k = n / 2;
    let x2 = beta_eps(eps).scale(&Scalar::from_int(-2));
    let x1 = -&beta_eps(eps);
    let kf = ParamPoly::from_rational(Rational::from_integer(factorial(k).into()));
    if n.is_multiple_of(2) {
        (&kf * &pochhammer_poly(&x2, 2 * k), pochhammer_poly(&x1, k))
    } else {
        (&kf.scale(&Scalar::from_frac(1, 2)) * &pochhammer_poly(&x2, 2 * k + 2), pochhammer_poly(&x1, k + 1))
    }
}

/// Closed form with the removable `β`-factors cancelled.
pub fn norm_closed_form(eps: i8, n: u32) -> ParamPoly {
    let (num, den) = closed_form_parts(eps, n);
    num.div_exact(&den).expect("(-εβ)_k divides (-2εβ)_{2k}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormEntry {
    pub n: u32,
    pub symbolic: ParamPoly,
    pub value: Option<Rational>,
    /// The uncancelled Pochhammer ratio is `0/0` at this `β`.
    pub pole: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormTable {
    pub eps: i8,
    pub beta: Option<Rational>,
    pub ladder: Vec<ParamPoly>,
    pub entries: Vec<NormEntry>,
    /// Recursion and closed form agree exactly at every `n`.
    pub agree: bool,
    pub vacuum_norm: Option<f64>,
    /// `β` outside `(-½, ½)`, where the formulas were derived.
    pub extrapolated: bool,
}

/// Recursion vs closed form up to `n_max`; values at `β` when given.
pub fn norm_table(eps: i8, n_max: u32, beta: Option<&Rational>) -> NormTable {
    let rec = norm_recursion(eps, n_max);
    let sub = beta.map(|b| BTreeMap::from([(BETA.to_string(), b.clone())]));
    let mut agree = true;
    let entries = rec
        .iter()
        .enumerate()
        .map(|(n, r)| {
            let n = n as u32;
            let closed = norm_closed_form(eps, n);
            agree &= closed == *r;
            let (value, pole) = match &sub {
                Some(s) => {
                    let (_, den) = closed_form_parts(eps, n);
                    (closed.substitute(s).as_rational(), den.substitute(s).is_zero())
                }
                None => (None, false),
            };
            NormEntry { n, symbolic: r.clone(), value, pole }
        })
        .collect();
    let half = Rational::new(1.into(), 2.into());
    NormTable {
        eps,
        beta: beta.cloned(),
        ladder: (0..=n_max).map(|n| ladder_coeff(eps, n)).collect(),
        entries,
        agree,
        vacuum_norm: beta.and_then(|b| klein_vacuum_norm(eps, rat_to_f64(b)).ok()),
        extrapolated: beta.is_some_and(|b| b.abs() >= half),
    }
}

impl NormTable {
    pub fn to_json(&self) -> Value {
        json!({
            "epsilon": self.eps,
            "beta": self.beta.as_ref().map(rat_string),
            "ladder": self.ladder.iter().map(js::poly).collect::<Vec<_>>(),
            "norms": self.entries.iter().map(|e| json!({
                "n": e.n,
                "symbolic": js::poly(&e.symbolic),
                "value": e.value.as_ref().map(rat_string),
                "pole": e.pole,
            })).collect::<Vec<_>>(),
            "recursion_equals_closed_form": self.agree,
            "vacuum_norm": self.vacuum_norm,
            "extrapolated": self.extrapolated,
        })
    }
}

/// `N_ε = Γ(½-εβ)^{-½}`.
pub fn klein_vacuum_norm(eps: i8, beta: f64) -> Result<f64> {
    let g = gamma(0.5 - f64::from(eps) * beta)?;
    if g <= 0.0 {
        return Err(Error::Inadmissible(format!("Γ(½-εβ) = {g} at β = {beta}")));
    }
    Ok(g.powf(-0.5))
}

/// `N = Γ(|ν|)^{-½}`.
pub fn nonklein_vacuum_norm(nu: f64) -> Result<f64> {
    if nu == 0.0 {
        return Err(Error::Inadmissible("ν = 0".into()));
    }
    Ok(gamma(nu.abs())?.powf(-0.5))
}

/// `N^{-2}` for `|n,0⟩` (`slot = 0`) or `|n,1⟩` (`slot = 1`) as a polynomial in `ν`:
/// `N_{n,0}^{-2} = 2^n ⌊n/2⌋! (ν)_{⌈n/2⌉}`, `N_{2m-1,1}^{-2} = 2^{2m}(m-1)!(ν)_{m+1}`,
/// `N_{2m,1}^{-2} = 2^{2m+1} m! (ν)_{m+1}`.
pub fn nonklein_inverse_norm_sq(n: u32, slot: u8) -> Result<ParamPoly> {
    let nu = ParamPoly::var(NU);
    let pow2 = |e: u32| ParamPoly::from_rational(Rational::from_integer(num_bigint::BigInt::from(2u8).pow(e)));
    let fact = |k: u32| ParamPoly::from_rational(Rational::from_integer(factorial(k).into()));
    match slot {
        0 => Ok(&(&pow2(n) * &fact(n / 2)) * &pochhammer_poly(&nu, n.div_ceil(2))),
        1 if n % 2 == 1 => {
            let m = n.div_ceil(2);
            Ok(&(&pow2(2 * m) * &fact(m - 1)) * &pochhammer_poly(&nu, m + 1))
        }
        1 => {
            let m = n / 2;
            Ok(&(&pow2(2 * m + 1) * &fact(m)) * &pochhammer_poly(&nu, m + 1))
        }
        _ => Err(Error::InvalidArgument(format!("slot {slot}: expected 0 or 1"))),
    }
}

/// Numeric `N_{n,slot}` at `ν > 0`.
pub fn nonklein_norm(n: u32, slot: u8, nu: &Rational) -> Result<f64> {
    if *nu <= Rational::zero() {
        return Err(Error::Inadmissible(format!("closed forms hold for ν > 0, got {}", rat_string(nu))));
    }
    let v = nonklein_inverse_norm_sq(n, slot)?.substitute(&BTreeMap::from([(NU.to_string(), nu.clone())]));
    let v = v.as_rational().map(|r| rat_to_f64(&r)).unwrap_or(f64::NAN);
    Ok(v.powf(-0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn at(b: Rational) -> BTreeMap<String, Rational> {
        BTreeMap::from([(BETA.to_string(), b)])
    }

    #[test]
    fn third_norm_matches_first_terms() {
        for eps in [1, -1] {
            let m3 = norm_recursion(eps, 3).pop().unwrap();
            let be = beta_eps(eps);
            let two = Scalar::from_int(2);
            let f1 = &ParamPoly::one() - &be.scale(&two);
            let f2 = &ParamPoly::from_int(6) - &be.scale(&Scalar::from_int(4));
            assert_eq!(m3, &f1 * &f2);
        }
    }

    #[test]
    fn recursion_equals_closed_form_to_twenty() {
        for eps in [1, -1] {
            assert!(norm_table(eps, 20, None).agree);
        }
    }

    #[test]
    fn undeformed_limit_is_factorial() {
        let t = norm_table(1, 12, Some(&rat(0, 1)));
        for e in &t.entries {
            assert_eq!(e.value, Some(Rational::from_integer(factorial(e.n).into())));
            assert_eq!(e.pole, e.n >= 1);
        }
    }

    #[test]
    fn z5_at_quarter() {
        assert_eq!(ladder_coeff(1, 5).substitute(&at(rat(1, 4))).as_rational(), Some(rat(9, 2)));
    }

    #[test]
    fn vacuum_norms() {
        let p = std::f64::consts::PI.powf(-0.25);
        assert!((klein_vacuum_norm(1, 0.0).unwrap() - p).abs() < 1e-14);
        assert!((nonklein_vacuum_norm(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(klein_vacuum_norm(1, 0.5).is_err());
        assert!((nonklein_norm(2, 0, &rat(1, 2)).unwrap() - 0.5f64.sqrt()).abs() < 1e-14);
    }
}
