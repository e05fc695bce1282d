//! Exact solution of small polynomial systems with rational coefficients.
//!
//! Strategy per branch: eliminate any unknown that occurs linearly with a
//! constant coefficient; split equations with a monomial factor into cases;
//! take rational roots of univariate equations. Whatever remains is sampled
//! on a rational grid and every sampled point is confirmed exactly.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{rat, ParamPoly, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Solved unknowns, expressed in the free ones.
    pub assignment: BTreeMap<String, ParamPoly>,
    /// Unknowns left arbitrary.
    pub free: Vec<String>,
    /// Found by grid sampling (then confirmed exactly).
    pub sampled: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SolveOutcome {
    pub solutions: Vec<Solution>,
    /// Branches abandoned without a complete answer.
    pub unresolved: usize,
}

struct State {
    eqs: Vec<ParamPoly>,
    assignment: BTreeMap<String, ParamPoly>,
    unknowns: BTreeSet<String>,
    sampled: bool,
}

impl State {
    fn assign(&self, var: &str, value: ParamPoly) -> State {
        let sub = BTreeMap::from([(var.to_string(), value.clone())]);
        let mut assignment: BTreeMap<String, ParamPoly> =
            self.assignment.iter().map(|(k, v)| (k.clone(), v.substitute_polys(&sub))).collect();
        assignment.insert(var.to_string(), value);
        let mut unknowns = self.unknowns.clone();
        unknowns.remove(var);
        State {
            eqs: self.eqs.iter().map(|e| e.substitute_polys(&sub)).collect(),
            assignment,
            unknowns,
            sampled: self.sampled,
        }
    }
}

/// Grid used when exact elimination stalls.
const GRID: [(i64, i64); 9] = [(-2, 1), (-3, 2), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (3, 2), (2, 1)];
const MAX_SAMPLED_UNKNOWNS: usize = 3;

pub fn solve_system(eqs: Vec<ParamPoly>, unknowns: &[String]) -> SolveOutcome {
    let st = State {
        eqs,
        assignment: BTreeMap::new(),
        unknowns: unknowns.iter().cloned().collect(),
        sampled: false,
    };
    let mut out = SolveOutcome::default();
    step(st, &mut out, 0);
    let mut uniq: Vec<Solution> = Vec::new();
    for s in out.solutions.drain(..) {
        if !uniq.contains(&s) {
            uniq.push(s);
        }
    }
    out.solutions = uniq;
    out
}

fn step(mut st: State, out: &mut SolveOutcome, depth: usize) {
    if depth > 64 {
        out.unresolved += 1;
        return;
    }
    let mut seen = BTreeSet::new();
    st.eqs.retain(|e| !e.is_zero() && seen.insert(format!("{e}")));
    if st.eqs.iter().any(|e| e.as_constant().is_some()) {
        return;
    }
    if st.eqs.is_empty() {
        out.solutions.push(Solution {
            assignment: st.assignment,
            free: st.unknowns.into_iter().collect(),
            sampled: st.sampled,
        });
        return;
    }
    if let Some((var, value)) = linear_pivot(&st) {
        step(st.assign(&var, value), out, depth + 1);
        return;
    }
    if let Some((idx, content)) = st.eqs.iter().enumerate().find_map(|(i, e)| {
        let c = e.monomial_content();
        (!c.is_one()).then_some((i, c))
    }) {
        for (v, _) in content.powers() {
            step(st.assign(v, ParamPoly::zero()), out, depth + 1);
        }
        let mut rest = State {
            eqs: st.eqs.clone(),
            assignment: st.assignment.clone(),
            unknowns: st.unknowns.clone(),
            sampled: st.sampled,
        };
        rest.eqs[idx] = st.eqs[idx].div_monomial(&content).expect("content divides");
        step(rest, out, depth + 1);
        return;
    }
    if let Some((var, roots)) = quadratic_split(&st) {
        for r in roots {
            step(st.assign(&var, r), out, depth + 1);
        }
        return;
    }
    if let Some((var, roots)) = st.eqs.iter().find_map(|e| {
        let vars = e.vars();
        (vars.len() == 1).then(|| {
            let v = vars.into_iter().next().expect("one var");
            let roots = rational_roots(e, &v);
            (v, roots)
        })
    }) {
        match roots {
            Some(rs) => {
                for r in rs {
                    step(st.assign(&var, ParamPoly::from_rational(r)), out, depth + 1);
                }
            }
            None => out.unresolved += 1,
        }
        return;
    }
    sample(st, out);
}

/// An unknown that some equation contains only linearly with a constant
/// coefficient, together with its solved value.
fn linear_pivot(st: &State) -> Option<(String, ParamPoly)> {
    for e in &st.eqs {
        for v in e.vars() {
            let cs = e.coefficients_in(&v);
            if cs.keys().max() != Some(&1) {
                continue;
            }
            let Some(a) = cs[&1].as_constant() else { continue };
            let inv = a.inv()?;
            let rest = cs.get(&0).cloned().unwrap_or_default();
            return Some((v, (-&rest).scale(&inv)));
        }
    }
    None
}

/// An equation `a·v² + b·v + c` with constant `a` whose discriminant is a
/// perfect square splits into two linear branches.
fn quadratic_split(st: &State) -> Option<(String, Vec<ParamPoly>)> {
    for e in &st.eqs {
        for v in e.vars() {
            let cs = e.coefficients_in(&v);
            if cs.keys().max() != Some(&2) {
                continue;
            }
            let Some(a) = cs[&2].as_constant() else { continue };
            let b = cs.get(&1).cloned().unwrap_or_default();
            let c = cs.get(&0).cloned().unwrap_or_default();
            let disc = &(&b * &b) - &c.scale(&(&a * &Scalar::from_int(4)));
            let Some(root) = disc.sqrt() else { continue };
            let inv = (&a * &Scalar::from_int(2)).inv()?;
            let mb = -&b;
            let mut roots = vec![(&mb + &root).scale(&inv)];
            if !root.is_zero() {
                roots.push((&mb - &root).scale(&inv));
            }
            return Some((v, roots));
        }
    }
    None
}

fn sample(st: State, out: &mut SolveOutcome) {
    let vars: Vec<String> = st.eqs.iter().flat_map(|e| e.vars()).collect::<BTreeSet<_>>().into_iter().collect();
    if vars.len() > MAX_SAMPLED_UNKNOWNS {
        out.unresolved += 1;
        return;
    }
    let total = GRID.len().pow(vars.len() as u32);
    for code in 0..total {
        let mut s = State {
            eqs: st.eqs.clone(),
            assignment: st.assignment.clone(),
            unknowns: st.unknowns.clone(),
            sampled: true,
        };
        for (k, v) in vars.iter().enumerate() {
            let (p, q) = GRID[(code / GRID.len().pow(k as u32)) % GRID.len()];
            s = s.assign(v, ParamPoly::from_rational(rat(p, q)));
        }
        if s.eqs.iter().all(ParamPoly::is_zero) {
            out.solutions.push(Solution {
                assignment: s.assignment,
                free: s.unknowns.into_iter().collect(),
                sampled: true,
            });
        }
    }
    // Points off the grid are not explored.
    out.unresolved += 1;
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// All rational roots of a univariate polynomial with real rational
/// coefficients; `None` when the coefficients are not rational or too large.
pub fn rational_roots(p: &ParamPoly, var: &str) -> Option<Vec<Rational>> {
    let cs = p.coefficients_in(var);
    let deg = *cs.keys().max()?;
    let mut coeffs: Vec<Rational> = vec![Rational::zero(); deg as usize + 1];
    for (k, c) in &cs {
        coeffs[*k as usize] = c.as_rational()?;
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero())?;
    if low > 0 {
        roots.push(Rational::zero());
    }
    let ints = &ints[low..];
    if ints.len() == 1 {
        return Some(roots);
    }
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last()?)?;
    let eval = |x: &Rational| {
        ints.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    };
    let mut cand = BTreeSet::new();
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                cand.insert(Rational::new(p * s, q.clone()));
            }
        }
    }
    roots.extend(cand.into_iter().filter(|x| eval(x).is_zero()));
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> ParamPoly {
        ParamPoly::var(n)
    }

    fn c(n: i64) -> ParamPoly {
        ParamPoly::from_int(n)
    }

    #[test]
    fn linear_system_with_free_unknown() {
        // a - b = 0, c = 0
        let out = solve_system(vec![&v("a") - &v("b"), v("c")], &["a".into(), "b".into(), "c".into()]);
        assert_eq!(out.solutions.len(), 1);
        let s = &out.solutions[0];
        assert_eq!(s.free.len(), 1);
        assert_eq!(s.assignment["c"], ParamPoly::zero());
    }

    #[test]
    fn monomial_factor_branches() {
        // a(1 - 2b) = 0 -> a = 0 or b = 1/2
        let e = &v("a") * &(&c(1) - &v("b").scale(&Scalar::from_int(2)));
        let out = solve_system(vec![e], &["a".into(), "b".into()]);
        assert_eq!(out.solutions.len(), 2);
        assert!(out.solutions.iter().any(|s| s.assignment.get("b") == Some(&ParamPoly::from_rational(rat(1, 2)))));
    }

    #[test]
    fn quadratic_roots() {
        // 2x² - 3x + 1 = (2x - 1)(x - 1)
        let x = v("x");
        let e = &(&(&x * &x).scale(&Scalar::from_int(2)) - &x.scale(&Scalar::from_int(3))) + &c(1);
        let roots = rational_roots(&e, "x").unwrap();
        assert_eq!(roots, vec![rat(1, 2), rat(1, 1)]);
    }

    #[test]
    fn difference_of_squares_splits() {
        // a² - b² = 0
        let e = &(&v("a") * &v("a")) - &(&v("b") * &v("b"));
        let out = solve_system(vec![e], &["a".into(), "b".into()]);
        assert_eq!(out.unresolved, 0);
        assert_eq!(out.solutions.len(), 2);
        assert!(out.solutions.iter().all(|s| s.free.len() == 1));
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let out = solve_system(vec![&v("a") - &c(1), &v("a") - &c(2)], &["a".into()]);
        assert!(out.solutions.is_empty());
        assert_eq!(out.unresolved, 0);
    }
}
