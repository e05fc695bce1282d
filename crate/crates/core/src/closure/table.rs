use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::ParamPoly;

/// A formal linear combination of generator names.
pub type Combo = BTreeMap<String, ParamPoly>;

pub fn combo_add(acc: &mut Combo, name: &str, c: &ParamPoly) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(name.to_string()).or_default();
    e.add_assign_ref(c);
    if e.is_zero() {
        acc.remove(name);
    }
}

pub fn combo_scale(c: &Combo, s: &ParamPoly) -> Combo {
    let mut out = Combo::new();
    for (n, v) in c {
        combo_add(&mut out, n, &(v * s));
    }
    out
}

fn combo_merge(acc: &mut Combo, o: &Combo) {
    for (n, v) in o {
        combo_add(acc, n, v);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Commutator,
    Anticommutator,
}

impl Kind {
    pub fn of(odd_a: bool, odd_b: bool) -> Kind {
        if odd_a && odd_b {
            Kind::Anticommutator
        } else {
            Kind::Commutator
        }
    }

    pub fn render(&self, a: &str, b: &str) -> String {
        match self {
            Kind::Commutator => format!("[{a}, {b}]"),
            Kind::Anticommutator => format!("{{{a}, {b}}}"),
        }
    }
}

/// Target structure constants of a Lie superalgebra.
///
/// Only one ordering of each pair is stored; the other follows from graded
/// antisymmetry. Missing pairs bracket to zero.
#[derive(Clone, Debug)]
pub struct BracketTable {
    pub algebra: String,
    generators: Vec<(String, bool)>,
    entries: BTreeMap<(String, String), Combo>,
    /// Human-readable relation between the table parameter and the algebra label.
    pub parameter_map: Option<String>,
}

impl BracketTable {
    pub fn new(algebra: impl Into<String>) -> Self {
        BracketTable { algebra: algebra.into(), generators: Vec::new(), entries: BTreeMap::new(), parameter_map: None }
    }

    pub fn add_generator(&mut self, name: impl Into<String>, odd: bool) {
        self.generators.push((name.into(), odd));
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, bool)> {
        self.generators.iter().map(|(n, o)| (n.as_str(), *o))
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn is_odd(&self, name: &str) -> bool {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("`{name}` is not a generator of {}", self.algebra))
            .1
    }

    pub fn has(&self, name: &str) -> bool {
        self.generators.iter().any(|(n, _)| n == name)
    }

    /// Set `[a, b} = rhs`, replacing any previous value of either ordering.
    pub fn set(&mut self, a: &str, b: &str, rhs: Combo) {
        for n in rhs.keys().chain([&a.to_string(), &b.to_string()]) {
            assert!(self.has(n), "`{n}` is not a generator of {}", self.algebra);
        }
        self.entries.remove(&(b.to_string(), a.to_string()));
        if rhs.is_empty() {
            self.entries.remove(&(a.to_string(), b.to_string()));
        } else {
            self.entries.insert((a.to_string(), b.to_string()), rhs);
        }
    }

    /// Add `c · name` to `[a, b}`.
    pub fn add(&mut self, a: &str, b: &str, name: &str, c: ParamPoly) {
        let mut cur = self.bracket(a, b);
        combo_add(&mut cur, name, &c);
        self.set(a, b, cur);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(String, String), &Combo)> {
        self.entries.iter()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// `[a, b}` as a combination of generators.
    pub fn bracket(&self, a: &str, b: &str) -> Combo {
        if let Some(c) = self.entries.get(&(a.to_string(), b.to_string())) {
            return c.clone();
        }
        if let Some(c) = self.entries.get(&(b.to_string(), a.to_string())) {
            let sign = if self.is_odd(a) && self.is_odd(b) { 1 } else { -1 };
            return combo_scale(c, &ParamPoly::from_int(sign));
        }
        Combo::new()
    }

    /// Bilinear extension of the bracket to combinations.
    pub fn bracket_combo(&self, x: &Combo, y: &Combo) -> Combo {
        let mut out = Combo::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let c = ca * cb;
                combo_merge(&mut out, &combo_scale(&self.bracket(a, b), &c));
            }
        }
        out
    }

    /// Substitute values for the table parameters.
    pub fn substitute(&self, assign: &BTreeMap<String, crate::algebra::Rational>) -> BracketTable {
        let mut out = self.clone();
        for c in out.entries.values_mut() {
            let mut next = Combo::new();
            for (n, v) in c.iter() {
                combo_add(&mut next, n, &v.substitute(assign));
            }
            *c = next;
        }
        out.entries.retain(|_, c| !c.is_empty());
        out
    }

    /// Graded Jacobi identity on every ordered triple of generators:
    /// `[A,[B,C}} = [[A,B},C} + (-1)^{|A||B|} [B,[A,C}}`.
    pub fn verify_jacobi(&self) -> JacobiReport {
        let names: Vec<&(String, bool)> = self.generators.iter().collect();
        let n = names.len();
        let triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect();
        let one = |n: &str| Combo::from([(n.to_string(), ParamPoly::one())]);
        let mut failures: Vec<JacobiFailure> = triples
            .par_iter()
            .filter_map(|&(a, b, c)| {
                let (na, oa) = names[a];
                let (nb, ob) = names[b];
                let nc = &names[c].0;
                let (ga, gb, gc) = (one(na), one(nb), one(nc));
                let lhs = self.bracket_combo(&ga, &self.bracket_combo(&gb, &gc));
                let mut rhs = self.bracket_combo(&self.bracket_combo(&ga, &gb), &gc);
                let sign = if *oa && *ob { -1 } else { 1 };
                let tail = self.bracket_combo(&gb, &self.bracket_combo(&ga, &gc));
                combo_merge(&mut rhs, &combo_scale(&tail, &ParamPoly::from_int(sign)));
                let mut diff = lhs;
                combo_merge(&mut diff, &combo_scale(&rhs, &ParamPoly::from_int(-1)));
                (!diff.is_empty()).then(|| JacobiFailure {
                    triple: (na.clone(), nb.clone(), nc.clone()),
                    residual: diff.iter().map(|(n, c)| (n.clone(), c.to_string())).collect(),
                })
            })
            .collect();
        failures.sort_by(|x, y| x.triple.cmp(&y.triple));
        JacobiReport { algebra: self.algebra.clone(), pass: failures.is_empty(), triples: triples.len(), failures }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiFailure {
    pub triple: (String, String, String),
    pub residual: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub algebra: String,
    pub pass: bool,
    pub triples: usize,
    pub failures: Vec<JacobiFailure>,
}
