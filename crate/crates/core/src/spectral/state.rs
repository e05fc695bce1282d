//! Wavefunctions `Σ c · sgn(x)^s |x|^p e^{-x²/2}` per component, with exact
//! operator action and exact Gaussian inner products over the real line.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::linear::Coords;
use crate::algebra::{json as js, rat_string, rat_to_f64, Operator, ParamPoly, Rational, Scalar};
use crate::error::{Error, Result};

use super::special::{gamma, pochhammer_poly};

/// `c + Σ r_v · v` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Affine {
    pub c: Rational,
    pub lin: BTreeMap<String, Rational>,
}

impl Affine {
    pub fn constant(c: Rational) -> Self {
        Affine { c, lin: BTreeMap::new() }
    }

    pub fn var(name: &str) -> Self {
        Affine { c: Rational::zero(), lin: BTreeMap::from([(name.to_string(), Rational::one())]) }
    }

    pub fn from_poly(p: &ParamPoly) -> Option<Self> {
        let (c, lin) = p.as_affine()?;
        Some(Affine { c, lin: lin.into_iter().filter(|(_, r)| !r.is_zero()).collect() })
    }

    pub fn to_poly(&self) -> ParamPoly {
        let mut p = ParamPoly::from_rational(self.c.clone());
        for (v, r) in &self.lin {
            p = &p + &ParamPoly::var(v).scale_rational(r);
        }
        p
    }

    pub fn shift(&self, k: &Rational) -> Self {
        Affine { c: &self.c + k, lin: self.lin.clone() }
    }

    pub fn add(&self, o: &Affine) -> Self {
        let mut lin = self.lin.clone();
        for (v, r) in &o.lin {
            let e = lin.entry(v.clone()).or_insert_with(Rational::zero);
            *e += r;
        }
        lin.retain(|_, r| !r.is_zero());
        Affine { c: &self.c + &o.c, lin }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Affine::default();
        }
        Affine { c: &self.c * s, lin: self.lin.iter().map(|(v, r)| (v.clone(), r * s)).collect() }
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        self.lin.is_empty().then_some(&self.c)
    }

    /// `self - o` when it is an integer.
    pub fn int_offset(&self, o: &Affine) -> Option<i64> {
        let d = self.add(&o.scale(&-Rational::one()));
        let c = d.as_constant()?;
        c.is_integer().then(|| c.to_integer().try_into().ok()).flatten()
    }

    pub fn substitute(&self, assign: &BTreeMap<String, Rational>) -> Self {
        let mut out = Affine::constant(self.c.clone());
        for (v, r) in &self.lin {
            match assign.get(v) {
                Some(x) => out.c += r * x,
                None => {
                    out.lin.insert(v.clone(), r.clone());
                }
            }
        }
        out
    }

    pub fn eval(&self, values: &BTreeMap<String, f64>) -> f64 {
        self.lin.iter().fold(rat_to_f64(&self.c), |acc, (v, r)| {
            acc + rat_to_f64(r) * values.get(v).copied().unwrap_or(f64::NAN)
        })
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// One basis function `sgn(x)^odd |x|^exp e^{-x²/2}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    pub exp: Affine,
    pub odd: bool,
}

impl Basis {
    pub fn even(exp: Affine) -> Self {
        Basis { exp, odd: false }
    }

    /// Multiplication by `x^k`.
    fn times_x(&self, k: i32) -> Basis {
        Basis { exp: self.exp.shift(&Rational::from_integer(k.into())), odd: self.odd ^ (k.rem_euclid(2) == 1) }
    }

    /// `∂(sgn^s|x|^p e) = p sgn^{s+1}|x|^{p-1} e - sgn^{s+1}|x|^{p+1} e`.
    fn derivative(&self) -> [(Basis, ParamPoly); 2] {
        let odd = !self.odd;
        [
            (Basis { exp: self.exp.shift(&-Rational::one()), odd }, self.exp.to_poly()),
            (Basis { exp: self.exp.shift(&Rational::one()), odd }, ParamPoly::from_int(-1)),
        ]
    }
}

type Component = BTreeMap<Basis, ParamPoly>;

fn add_into(c: &mut Component, b: Basis, v: ParamPoly) {
    if v.is_zero() {
        return;
    }
    match c.get_mut(&b) {
        Some(cur) => {
            cur.add_assign_ref(&v);
            if cur.is_zero() {
                c.remove(&b);
            }
        }
        None => {
            c.insert(b, v);
        }
    }
}

/// A vector of wavefunctions, one per matrix component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateFn {
    comps: Vec<Component>,
}

impl StateFn {
    pub fn zero(dim: usize) -> Self {
        StateFn { comps: vec![Component::new(); dim] }
    }

    /// `coeff · |x|^exp e^{-x²/2}` in component `j` (0-based).
    pub fn single(dim: usize, j: usize, exp: Affine, coeff: ParamPoly) -> Self {
        let mut s = StateFn::zero(dim);
        add_into(&mut s.comps[j], Basis::even(exp), coeff);
        s
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_empty())
    }

    pub fn component(&self, j: usize) -> impl Iterator<Item = (&Basis, &ParamPoly)> {
        self.comps[j].iter()
    }

    pub fn num_terms(&self) -> usize {
        self.comps.iter().map(|c| c.len()).sum()
    }

    /// Components carrying at least one term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&j| !self.comps[j].is_empty()).collect()
    }

    pub fn scale(&self, s: &ParamPoly) -> StateFn {
        let mut out = StateFn::zero(self.dim());
        for (j, c) in self.comps.iter().enumerate() {
            for (b, v) in c {
                add_into(&mut out.comps[j], b.clone(), v * s);
            }
        }
        out
    }

    pub fn sub(&self, o: &StateFn) -> StateFn {
        let mut out = self.clone();
        for (j, c) in o.comps.iter().enumerate() {
            for (b, v) in c {
                add_into(&mut out.comps[j], b.clone(), -v);
            }
        }
        out
    }

    pub fn add(&self, o: &StateFn) -> StateFn {
        let mut out = self.clone();
        for (j, c) in o.comps.iter().enumerate() {
            for (b, v) in c {
                add_into(&mut out.comps[j], b.clone(), v.clone());
            }
        }
        out
    }

    pub fn substitute(&self, assign: &BTreeMap<String, Rational>) -> StateFn {
        let mut out = StateFn::zero(self.dim());
        for (j, c) in self.comps.iter().enumerate() {
            for (b, v) in c {
                let nb = Basis { exp: b.exp.substitute(assign), odd: b.odd };
                add_into(&mut out.comps[j], nb, v.substitute(assign));
            }
        }
        out
    }

    /// Ratio `self / o` if the two are proportional with a constant factor.
    pub fn ratio_to(&self, o: &StateFn) -> Option<Scalar> {
        let (j, (b, v)) = o.comps.iter().enumerate().find_map(|(j, c)| c.iter().next().map(|t| (j, t)))?;
        let w = self.comps[j].get(b)?;
        // w / v must be a constant; test via exact division
        let q = w.div_exact(v)?.as_constant()?;
        self.sub(&o.scale(&ParamPoly::constant(q.clone()))).is_zero().then_some(q)
    }

    /// Coordinates keyed by `(component, basis function)`.
    pub fn coords(&self) -> Coords<(usize, Basis)> {
        self.comps
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(b, v)| ((j, b.clone()), v.clone())))
            .collect()
    }

    /// Complex value at `x ≠ 0` for numeric parameter values.
    pub fn eval(&self, x: f64, values: &BTreeMap<String, f64>) -> Vec<Complex64> {
        let g = (-0.5 * x * x).exp();
        self.comps
            .iter()
            .map(|c| {
                c.iter().fold(Complex64::zero(), |acc, (b, v)| {
                    let s = if b.odd && x < 0.0 { -1.0 } else { 1.0 };
                    acc + v.eval_complex(values) * (s * x.abs().powf(b.exp.eval(values)) * g)
                })
            })
            .collect()
    }

    /// Exponent of each term, over all components.
    pub fn exponents(&self) -> impl Iterator<Item = (usize, &Basis)> {
        self.comps.iter().enumerate().flat_map(|(j, c)| c.keys().map(move |b| (j, b)))
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .comps
            .iter()
            .map(|c| {
                Value::Array(
                    c.iter()
                        .map(|(b, v)| {
                            json!({
                                "coeff": js::poly(v),
                                "exponent": {
                                    "const": rat_string(&b.exp.c),
                                    "linear": b.exp.lin.iter().map(|(k, r)| (k.clone(), Value::String(rat_string(r)))).collect::<serde_json::Map<_, _>>(),
                                },
                                "sign_power": u8::from(b.odd),
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        json!({ "dim": self.dim(), "components": comps })
    }
}

impl fmt::Display for StateFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| {
                if c.is_empty() {
                    return "0".to_string();
                }
                c.iter()
                    .map(|(b, v)| {
                        let s = if b.odd { "sgn·" } else { "" };
                        format!("({v})·{s}|x|^({})", b.exp)
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect();
        write!(f, "[{}]·e^(-x²/2)", parts.join(", "))
    }
}

fn derivative_n(b: &Basis, m: u32, cache: &mut BTreeMap<(Basis, u32), Component>) -> Component {
    if m == 0 {
        return Component::from([(b.clone(), ParamPoly::one())]);
    }
    if let Some(c) = cache.get(&(b.clone(), m)) {
        return c.clone();
    }
    let prev = derivative_n(b, m - 1, cache);
    let mut out = Component::new();
    for (pb, pv) in &prev {
        for (nb, nv) in pb.derivative() {
            add_into(&mut out, nb, pv * &nv);
        }
    }
    cache.insert((b.clone(), m), out.clone());
    out
}

/// Exact action of a normal-ordered operator on a state.
pub fn apply(op: &Operator, s: &StateFn) -> Result<StateFn> {
    if op.dim() != s.dim() {
        return Err(Error::DimensionMismatch { left: op.dim(), right: s.dim() });
    }
    let dim = s.dim();
    let mut cache = BTreeMap::new();
    let mut out = StateFn::zero(dim);
    for (mono, mat) in op.terms() {
        for j in 0..dim {
            if s.comps[j].is_empty() {
                continue;
            }
            let mut moved = Component::new();
            for (b, v) in &s.comps[j] {
                for (db, dv) in derivative_n(b, mono.m, &mut cache) {
                    add_into(&mut moved, db.times_x(mono.k), v * &dv);
                }
            }
            for i in 0..dim {
                let e = mat.get(i, j);
                if e.is_zero() {
                    continue;
                }
                for (b, v) in &moved {
                    add_into(&mut out.comps[i], b.clone(), e * v);
                }
            }
        }
    }
    Ok(out)
}

/// `Σ_k c_k Γ(base_k + j)` collected as `Γ(base) · poly` per class of
/// arguments that differ by integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaSum {
    pub parts: Vec<(Affine, ParamPoly)>,
}

impl GammaSum {
    fn push(&mut self, arg: Affine, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        for (base, acc) in &mut self.parts {
            if let Some(d) = arg.int_offset(base) {
                if d >= 0 {
                    acc.add_assign_ref(&(&c * &pochhammer_poly(&base.to_poly(), d as u32)));
                } else {
                    // rebase to the smaller argument
                    let up = pochhammer_poly(&arg.to_poly(), (-d) as u32);
                    *acc = &(&*acc * &up) + &c;
                    *base = arg;
                }
                return;
            }
        }
        self.parts.push((arg, c));
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|(_, p)| p.is_zero())
    }

    /// `self / Γ(base)` as `num / den`, when everything lies in one class.
    pub fn ratio_to_gamma(&self, base: &Affine) -> Option<(ParamPoly, ParamPoly)> {
        let live: Vec<_> = self.parts.iter().filter(|(_, p)| !p.is_zero()).collect();
        match live.as_slice() {
            [] => Some((ParamPoly::zero(), ParamPoly::one())),
            [(b, p)] => {
                let d = b.int_offset(base)?;
                if d >= 0 {
                    Some((p * &pochhammer_poly(&base.to_poly(), d as u32), ParamPoly::one()))
                } else {
                    Some((p.clone(), pochhammer_poly(&b.to_poly(), (-d) as u32)))
                }
            }
            _ => None,
        }
    }

    /// Numeric value; every Γ argument must be positive.
    pub fn eval(&self, values: &BTreeMap<String, f64>) -> Result<Complex64> {
        let mut acc = Complex64::zero();
        for (b, p) in &self.parts {
            if p.is_zero() {
                continue;
            }
            let a = b.eval(values);
            if a <= 0.0 {
                return Err(Error::Divergent(format!("Gaussian moment with Γ argument {a}")));
            }
            acc += p.eval_complex(values) * gamma(a)?;
        }
        Ok(acc)
    }
}

/// `⟨a|b⟩ = ∫_ℝ a(x)† b(x) dx` in exact form. Parameters are taken real.
pub fn inner(a: &StateFn, b: &StateFn) -> GammaSum {
    let mut out = GammaSum::default();
    let half = Rational::new(1.into(), 2.into());
    for (ca, cb) in a.comps.iter().zip(&b.comps) {
        for (ba, va) in ca {
            let va = va.conj();
            for (bb, vb) in cb {
                if ba.odd != bb.odd {
                    continue;
                }
                // ∫ |x|^q e^{-x²} dx = Γ((q+1)/2)
                let arg = ba.exp.add(&bb.exp).shift(&Rational::one()).scale(&half);
                out.push(arg, &va * vb);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, MatrixConst};

    fn beta() -> Affine {
        Affine::var("beta")
    }

    #[test]
    fn x_d_on_power() {
        let op = Operator::mono(1, 1, MatrixConst::identity(1));
        let s = StateFn::single(1, 0, beta(), ParamPoly::one());
        let out = apply(&op, &s).unwrap();
        let expect = StateFn::single(1, 0, beta(), ParamPoly::var("beta"))
            .sub(&StateFn::single(1, 0, beta().shift(&rat(2, 1)), ParamPoly::one()));
        assert_eq!(out, expect);
    }

    #[test]
    fn derivative_of_odd_power_is_even() {
        // d/dx (x e) = e - x² e
        let x = apply(&Operator::x_pow(1, 1), &StateFn::single(1, 0, Affine::default(), ParamPoly::one())).unwrap();
        assert!(x.comps[0].keys().all(|b| b.odd));
        let d = apply(&Operator::d_pow(1, 1), &x).unwrap();
        let expect = StateFn::single(1, 0, Affine::default(), ParamPoly::one())
            .sub(&StateFn::single(1, 0, Affine::constant(rat(2, 1)), ParamPoly::one()));
        assert_eq!(d, expect);
    }

    #[test]
    fn gaussian_norm_is_root_pi() {
        let s = StateFn::single(1, 0, Affine::default(), ParamPoly::one());
        let g = inner(&s, &s);
        let v = g.eval(&BTreeMap::new()).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn opposite_parity_is_orthogonal() {
        let e = StateFn::single(1, 0, Affine::default(), ParamPoly::one());
        let o = apply(&Operator::x_pow(1, 1), &e).unwrap();
        assert!(inner(&e, &o).is_zero());
    }

    #[test]
    fn gamma_classes_rebase() {
                let s = StateFn::single(1, 0, beta().scale(&rat(-1, 1)), ParamPoly::one());
        let t = StateFn::single(1, 0, beta().scale(&rat(-1, 1)).shift(&rat(2, 1)), ParamPoly::one());
        let base = beta().scale(&rat(-1, 1)).shift(&rat(1, 2));
        let (num, den) = inner(&t, &t).ratio_to_gamma(&base).unwrap();
        assert!(den.is_one());
        // Γ(5/2-β) = (½-β)(3/2-β)Γ(½-β)
        let b = ParamPoly::var("beta");
        let e = &(&ParamPoly::from_rational(rat(1, 2)) - &b) * &(&ParamPoly::from_rational(rat(3, 2)) - &b);
        assert_eq!(num, e);
        // Γ(3/2-β) = (½-β)Γ(½-β), and Γ(½-β) = Γ(3/2-β)/(½-β)
        let (num, den) = inner(&s, &t).ratio_to_gamma(&base).unwrap();
        assert!(den.is_one());
        assert_eq!(num, &ParamPoly::from_rational(rat(1, 2)) - &b);
        let (num, den) = inner(&s, &s).ratio_to_gamma(&base.shift(&rat(1, 1))).unwrap();
        assert!(num.is_one());
        assert_eq!(den, &ParamPoly::from_rational(rat(1, 2)) - &b);
    }
}
