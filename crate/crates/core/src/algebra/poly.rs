//! Polynomials in formal real parameters (β, ν, α, ansatz unknowns) with
//! coefficients in Q(i, √2).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use super::scalar::{Rational, Scalar};

/// A monomial: sorted `(parameter, exponent)` pairs with positive exponents.
/// Ordered graded-lexicographically, which is a monomial order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(String, u32)>);

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let (mut a, mut b) = (self.0.iter(), o.0.iter());
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Equal if ea == eb => {}
                        Ordering::Equal => return ea.cmp(eb),
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn from_powers(mut powers: Vec<(String, u32)>) -> Self {
        powers.retain(|(_, e)| *e > 0);
        powers.sort();
        let mut merged: Vec<(String, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.0.iter().find(|(v, _)| v == var).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            match self.0[i].0.cmp(&o.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(o.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + o.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        for (v, e) in &self.0 {
            let d = o.degree_in(v);
            if d > *e {
                return None;
            }
            if e - d > 0 {
                out.push((v.clone(), e - d));
            }
        }
        for (v, _) in &o.0 {
            if self.degree_in(v) == 0 {
                return None;
            }
        }
        Some(Monomial(out))
    }

    /// Greatest common divisor of two monomials.
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for (v, e) in &self.0 {
            let d = o.degree_in(v).min(*e);
            if d > 0 {
                out.push((v.clone(), d));
            }
        }
        Monomial(out)
    }

    /// The monomial with `var` removed.
    pub fn without(&self, var: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v != var).cloned().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial over Q(i, √2) in named real parameters.
///
/// No zero coefficient is ever stored and monomials are kept in a fixed
/// total order, so `==` is equality of polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        ParamPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn from_rational(r: Rational) -> Self {
        ParamPoly::constant(Scalar::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        ParamPoly::constant(Scalar::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        ParamPoly::term(Monomial::var(name), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &ParamPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    /// `self += a * b` without materializing the product.
    pub fn add_product(&mut self, a: &ParamPoly, b: &ParamPoly) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), &(ca * cb));
            }
        }
    }

    /// The constant value when the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_constant().and_then(|c| c.as_rational().cloned())
    }

    pub fn scale(&self, c: &Scalar) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> ParamPoly {
        self.scale(&Scalar::from_rational(r.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    /// Complex conjugate. Parameters are real, so only coefficients change.
    pub fn conj(&self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.conj())).collect() }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut out = ParamPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms.keys().map(|m| m.degree_in(var)).max().unwrap_or(0)
    }

    /// Substitute polynomials for some parameters.
    pub fn substitute_polys(&self, assign: &BTreeMap<String, ParamPoly>) -> ParamPoly {
        if assign.is_empty() || self.vars().iter().all(|v| !assign.contains_key(v)) {
            return self.clone();
        }
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut term = ParamPoly::constant(c.clone());
            let mut rest = Vec::new();
            for (v, e) in m.powers() {
                match assign.get(v) {
                    Some(p) => term = &term * &p.pow(*e),
                    None => rest.push((v.clone(), *e)),
                }
            }
            out.add_assign_ref(&term.mul_monomial(&Monomial::from_powers(rest)));
        }
        out
    }

    /// Substitute rational values for some (or all) parameters.
    pub fn substitute(&self, assign: &BTreeMap<String, Rational>) -> ParamPoly {
        let polys: BTreeMap<String, ParamPoly> =
            assign.iter().map(|(k, v)| (k.clone(), ParamPoly::from_rational(v.clone()))).collect();
        self.substitute_polys(&polys)
    }

    /// Floating-point evaluation; missing parameters evaluate as NaN.
    pub fn eval_complex(&self, values: &BTreeMap<String, f64>) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (v, e) in m.powers() {
                let x = values.get(v).copied().unwrap_or(f64::NAN);
                t *= x.powi(*e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Coefficients of `var^k`, as polynomials in the remaining parameters.
    pub fn coefficients_in(&self, var: &str) -> BTreeMap<u32, ParamPoly> {
        let mut out: BTreeMap<u32, ParamPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree_in(var)).or_default().add_term(m.without(var), c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Split off the dependence on `params`: the result maps each monomial in
    /// `params` to its coefficient polynomial in the other variables.
    pub fn split_by(&self, params: &BTreeSet<String>) -> BTreeMap<Monomial, ParamPoly> {
        let mut out: BTreeMap<Monomial, ParamPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (outer, inner): (Vec<_>, Vec<_>) =
                m.powers().iter().cloned().partition(|(v, _)| params.contains(v));
            out.entry(Monomial::from_powers(outer))
                .or_default()
                .add_term(Monomial::from_powers(inner), c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Four real-rational polynomials whose simultaneous vanishing is
    /// equivalent to `self = 0` when every parameter is real.
    pub fn real_parts(&self) -> [ParamPoly; 4] {
        let mut out: [ParamPoly; 4] = Default::default();
        for (m, c) in &self.terms {
            for (slot, r) in c.real_components().into_iter().enumerate() {
                out[slot].add_term(m.clone(), &Scalar::from_rational(r));
            }
        }
        out
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<ParamPoly> {
        let mut out = ParamPoly::zero();
        for (k, c) in &self.terms {
            out.add_term(k.div(m)?, c);
        }
        Some(out)
    }

    /// Leading (largest) monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Exact division `self / d` in the polynomial ring over Q(i, √2).
    ///
    /// Multivariate division uses the leading-term reduction for the fixed
    /// monomial order; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (dm, dc) = d.leading()?;
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut q = ParamPoly::zero();
        let mut guard = 0usize;
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(dm)?;
            let qc = &rc * &dinv;
            let t = ParamPoly::term(qm, qc);
            rem = &rem - &(&t * d);
            q.add_assign_ref(&t);
            guard += 1;
            if guard > 100_000 {
                return None;
            }
        }
        Some(q)
    }

    /// Affine view `c0 + Σ cᵥ·v` with rational coefficients, if degree ≤ 1
    /// and all coefficients are real rationals.
    pub fn as_affine(&self) -> Option<(Rational, BTreeMap<String, Rational>)> {
        let mut c0 = Rational::zero();
        let mut lin = BTreeMap::new();
        for (m, c) in &self.terms {
            let r = c.as_rational()?.clone();
            match m.powers() {
                [] => c0 = r,
                [(v, 1)] => {
                    lin.insert(v.clone(), r);
                }
                _ => return None,
            }
        }
        Some((c0, lin))
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Exact square root with real rational coefficients, if one exists.
    pub fn sqrt(&self) -> Option<ParamPoly> {
        let Some((lm, lc)) = self.leading() else { return Some(ParamPoly::zero()) };
        let half: Vec<(String, u32)> =
            lm.powers().iter().map(|(v, e)| (e % 2 == 0).then(|| (v.clone(), e / 2))).collect::<Option<_>>()?;
        let lead = ParamPoly::term(Monomial::from_powers(half), Scalar::from_rational(rational_sqrt(lc.as_rational()?)?));
        let (m0, c0) = lead.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let inv2 = (&c0 * &Scalar::from_int(2)).inv()?;
        let mut s = lead;
        for _ in 0..=self.num_terms() + 1 {
            let r = self - &(&s * &s);
            let Some((rm, rc)) = r.leading() else { return Some(s) };
            let t = ParamPoly::term(rm.div(&m0)?, rc * &inv2);
            s = &s + &t;
        }
        None
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        out.add_product(self, o);
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("({c})")
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("({c})*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl From<Scalar> for ParamPoly {
    fn from(c: Scalar) -> Self {
        ParamPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn sqrt_of_perfect_square() {
        let a = ParamPoly::var("a");
        let b = ParamPoly::var("b");
        let s = &(&a.scale(&Scalar::from_int(2)) - &b) + &ParamPoly::from_rational(super::super::scalar::rat(1, 3));
        let r = (&s * &s).sqrt().unwrap();
        assert!(r == s || r == -&s);
        assert!((&(&a * &a) + &b).sqrt().is_none());
    }

    #[test]
    fn order_is_multiplicative() {
        let (a, b) = (Monomial::var("a"), Monomial::var("b"));
        assert!(Monomial::one() < a && Monomial::one() < b);
        assert!(a.mul(&b) > b && a.mul(&b) > a);
        assert!(a.mul(&a) > a.mul(&b) && a.mul(&b) > b.mul(&b));
    }

    use super::*;
    use crate::algebra::scalar::rat;

    fn beta() -> ParamPoly {
        ParamPoly::var("beta")
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &beta() - &beta();
        assert!(p.is_zero());
        assert_eq!(p, ParamPoly::zero());
    }

    #[test]
    fn substitution_evaluates() {
        let p = &(&beta() * &beta()) + &beta();
        let mut a = BTreeMap::new();
        a.insert("beta".to_string(), rat(1, 2));
        assert_eq!(p.substitute(&a), ParamPoly::from_rational(rat(3, 4)));
    }

    #[test]
    fn exact_division() {
        let b = beta();
        let f = &(&b + &ParamPoly::one()) * &(&b - &ParamPoly::from_int(2));
        let q = f.div_exact(&(&b + &ParamPoly::one())).unwrap();
        assert_eq!(q, &b - &ParamPoly::from_int(2));
        assert!(f.div_exact(&(&b + &ParamPoly::from_int(5))).is_none());
    }

    #[test]
    fn monomial_content_and_split() {
        let c = ParamPoly::var("c");
        let b = ParamPoly::var("b");
        let e = &c - &(&(&c * &b) * &ParamPoly::from_int(2));
        assert_eq!(e.monomial_content(), Monomial::var("c"));
        let rest = e.div_monomial(&Monomial::var("c")).unwrap();
        assert_eq!(rest, &ParamPoly::one() - &b.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn affine_view() {
        let p = &beta().scale(&Scalar::from_int(-1)) + &ParamPoly::from_rational(rat(1, 2));
        let (c0, lin) = p.as_affine().unwrap();
        assert_eq!(c0, rat(1, 2));
        assert_eq!(lin["beta"], rat(-1, 1));
        assert!((&beta() * &beta()).as_affine().is_none());
    }
}
