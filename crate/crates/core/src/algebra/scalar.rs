//! Exact coefficients in the field Q(i, √2).
//!
//! A [`Scalar`] is stored as `a + b·√2` with `a`, `b` Gaussian rationals.
//! Every coefficient that appears in the oscillator generators (the `i/√2`
//! prefactors of the supercharges, the `1/√2` of their conformal partners)
//! lives in this field, so all operator identities reduce to structural
//! equality of canonical forms.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Build a rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Render a rational as `p` or `p/q`.
pub fn rat_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p`, `p/q` or a terminating decimal such as `-0.25` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let ip = ip.trim().trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let int_part: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().ok()? };
        let frac: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().ok()? };
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = BigRational::new(int_part * &scale + frac, scale);
        return Some(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

impl Gauss {
    pub fn zero() -> Self {
        Gauss { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn new(re: Rational, im: Rational) -> Self {
        Gauss { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -&self.im }
    }

    fn add(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Gauss) -> Gauss {
        if self.is_zero() || o.is_zero() {
            return Gauss::zero();
        }
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn scale(&self, r: &Rational) -> Gauss {
        Gauss { re: &self.re * r, im: &self.im * r }
    }

    fn inv(&self) -> Option<Gauss> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(Gauss { re: &self.re / &n, im: -&self.im / &n })
    }
}

/// Element `rat + rt2·√2` of Q(i, √2).
///
/// The canonical zero has both parts zero, so derived equality is exact
/// equality of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: Gauss,
    rt2: Gauss,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { rat: Gauss::zero(), rt2: Gauss::zero() }
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Scalar { rat: Gauss::new(Rational::zero(), Rational::one()), rt2: Gauss::zero() }
    }

    pub fn sqrt2() -> Self {
        Scalar { rat: Gauss::zero(), rt2: Gauss::new(Rational::one(), Rational::zero()) }
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Scalar { rat: Gauss::zero(), rt2: Gauss::new(rat(1, 2), Rational::zero()) }
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar { rat: Gauss::new(r, Rational::zero()), rt2: Gauss::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(rat_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::from_rational(rat(n, d))
    }

    /// `(re + i·im)·(√2)^rt2` with `rt2 ∈ {0, 1}`.
    pub fn from_parts(re: Rational, im: Rational, rt2: bool) -> Self {
        let g = Gauss::new(re, im);
        if rt2 {
            Scalar { rat: Gauss::zero(), rt2: g }
        } else {
            Scalar { rat: g, rt2: Gauss::zero() }
        }
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Scalar::from_parts(re, im, false)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rt2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rt2.is_zero() && self.rat.im.is_zero() && self.rat.re.is_one()
    }

    /// Rational part and √2 part.
    pub fn parts(&self) -> (&Gauss, &Gauss) {
        (&self.rat, &self.rt2)
    }

    /// Non-zero `(rt2, gaussian)` components, rational part first.
    pub fn components(&self) -> Vec<(u8, &Gauss)> {
        let mut out = Vec::with_capacity(2);
        if !self.rat.is_zero() {
            out.push((0, &self.rat));
        }
        if !self.rt2.is_zero() {
            out.push((1, &self.rt2));
        }
        out
    }

    /// The value as a real rational, if it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.rt2.is_zero() && self.rat.im.is_zero() {
            Some(&self.rat.re)
        } else {
            None
        }
    }

    /// Complex conjugate (√2 is real).
    pub fn conj(&self) -> Self {
        Scalar { rat: self.rat.conj(), rt2: self.rt2.conj() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Scalar { rat: self.rat.scale(r), rt2: self.rt2.scale(r) }
    }

    pub fn inv(&self) -> Option<Self> {
        // (a + b√2)^{-1} = (a - b√2) / (a² - 2b²)
        let a2 = self.rat.mul(&self.rat);
        let b2 = self.rt2.mul(&self.rt2).scale(&rat_int(2));
        let n = a2.sub(&b2).inv()?;
        Some(Scalar { rat: self.rat.mul(&n), rt2: self.rt2.mul(&n).scale(&rat_int(-1)) })
    }

    pub fn to_complex(&self) -> Complex64 {
        let s = std::f64::consts::SQRT_2;
        Complex64::new(
            rat_to_f64(&self.rat.re) + s * rat_to_f64(&self.rt2.re),
            rat_to_f64(&self.rat.im) + s * rat_to_f64(&self.rt2.im),
        )
    }

    /// Split into four real rationals: Re, Im of the rational part and of the √2 part.
    pub fn real_components(&self) -> [Rational; 4] {
        [self.rat.re.clone(), self.rat.im.clone(), self.rt2.re.clone(), self.rt2.im.clone()]
    }

    /// `|z|² = 1` test, exact.
    pub fn is_unimodular(&self) -> bool {
        (self * &self.conj()).is_one()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { rat: self.rat.add(&o.rat), rt2: self.rt2.add(&o.rt2) }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { rat: self.rat.sub(&o.rat), rt2: self.rt2.sub(&o.rt2) }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let two = rat_int(2);
        let rat = self.rat.mul(&o.rat).add(&self.rt2.mul(&o.rt2).scale(&two));
        let rt2 = self.rat.mul(&o.rt2).add(&self.rt2.mul(&o.rat));
        Scalar { rat, rt2 }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let m = rat_int(-1);
        self.scale_rational(&m)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.rat = self.rat.add(&o.rat);
        self.rt2 = self.rt2.add(&o.rt2);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let push = |parts: &mut Vec<String>, r: &Rational, unit: &str| {
            if r.is_zero() {
                return;
            }
            let body = match (unit.is_empty(), r.abs().is_one()) {
                (true, _) => rat_string(&r.abs()),
                (false, true) => unit.to_string(),
                (false, false) => format!("{}{}", rat_string(&r.abs()), unit),
            };
            let sign = if r.is_negative() { "-" } else { "+" };
            parts.push(format!("{sign}{body}"));
        };
        push(&mut parts, &self.rat.re, "");
        push(&mut parts, &self.rat.im, "i");
        push(&mut parts, &self.rt2.re, "√2");
        push(&mut parts, &self.rt2.im, "i√2");
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut s = parts.join(" ");
        if let Some(stripped) = s.strip_prefix('+') {
            s = stripped.to_string();
        }
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let s = Scalar::sqrt2();
        assert_eq!(&s * &s, Scalar::from_int(2));
        let h = Scalar::inv_sqrt2();
        assert_eq!(&h * &h, Scalar::from_frac(1, 2));
    }

    #[test]
    fn inverse_round_trips() {
        let z = &(&Scalar::from_frac(3, 7) + &Scalar::i()) + &Scalar::sqrt2();
        let zi = z.inv().unwrap();
        assert!((&z * &zi).is_one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn zero_is_unique() {
        let a = &Scalar::sqrt2() - &Scalar::sqrt2();
        assert_eq!(a, Scalar::zero());
        assert!(a.components().is_empty());
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Scalar::inv_sqrt2().to_string(), "1/2√2");
        assert_eq!((-&Scalar::i()).to_string(), "-i");
    }
}
