use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{json, Operator, ParamPoly, Scalar};
use crate::error::{Error, Result};
use crate::generators::{Family, GeneratorSet};

use super::table::{BracketTable, Kind};

#[derive(Clone, Debug)]
pub struct EntryResult {
    pub a: String,
    pub b: String,
    pub kind: Kind,
    pub residual: Operator,
}

impl EntryResult {
    pub fn lhs(&self) -> String {
        self.kind.render(&self.a, &self.b)
    }
}

/// One slot of a generator identification: `slot ↦ phase · source`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotImage {
    pub slot: String,
    pub source: String,
    pub phase: String,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub algebra: String,
    pub model: String,
    pub pass: bool,
    pub entries: Vec<EntryResult>,
    pub identification: Option<Vec<SlotImage>>,
    /// Candidates tried by the identification search.
    pub candidates_tried: usize,
}

impl ClosureReport {
    pub fn first_failure(&self) -> Option<&EntryResult> {
        self.entries.iter().find(|e| !e.residual.is_zero())
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({"lhs": e.lhs(), "kind": e.kind, "residual_is_zero": e.residual.is_zero()});
                if !e.residual.is_zero() {
                    v["residual"] = json::operator(&e.residual);
                }
                v
            })
            .collect();
        let mut out = json!({"algebra": self.algebra, "model": self.model, "pass": self.pass, "entries": entries});
        if let Some(id) = &self.identification {
            out["identification"] = serde_json::to_value(id).expect("serializable");
        }
        out
    }
}

/// A map from table slots to `phase · generator`.
type Assignment = BTreeMap<String, (String, Scalar)>;

fn phase_label(s: &Scalar) -> String {
    let c = s.to_complex();
    match (c.re.round() as i64, c.im.round() as i64) {
        (1, 0) => "1".into(),
        (-1, 0) => "-1".into(),
        (0, 1) => "i".into(),
        (0, -1) => "-i".into(),
        _ => s.to_string(),
    }
}

struct Verifier<'a> {
    gs: &'a GeneratorSet,
    table: &'a BracketTable,
    pairs: Vec<(String, String)>,
}

impl<'a> Verifier<'a> {
    fn new(gs: &'a GeneratorSet, table: &'a BracketTable) -> Self {
        let names = table.names();
        let pairs = (0..names.len())
            .flat_map(|i| (i..names.len()).map(move |j| (i, j)))
            .map(|(i, j)| (names[i].clone(), names[j].clone()))
            .collect();
        Verifier { gs, table, pairs }
    }

    fn image(&self, asg: &Assignment, slot: &str) -> Operator {
        let (src, ph) = &asg[slot];
        self.gs.get(src).scale(ph)
    }

    fn residual(&self, asg: &Assignment, a: &str, b: &str, raw: &dyn Fn(&str, &str) -> Operator) -> Operator {
        let (sa, pa) = &asg[a];
        let (sb, pb) = &asg[b];
        let lhs = raw(sa, sb).scale(&(pa * pb));
        let mut rhs = Operator::zero(self.gs.dim());
        for (name, c) in self.table.bracket(a, b) {
            rhs = &rhs + &self.image(asg, &name).scale_poly(&c);
        }
        &lhs - &rhs
    }

    fn full(&self, asg: &Assignment) -> Vec<EntryResult> {
        let cache = self.cache();
        let raw = |a: &str, b: &str| cache[&(a.to_string(), b.to_string())].clone();
        self.pairs
            .par_iter()
            .map(|(a, b)| EntryResult {
                a: a.clone(),
                b: b.clone(),
                kind: Kind::of(self.table.is_odd(a), self.table.is_odd(b)),
                residual: self.residual(asg, a, b, &raw),
            })
            .collect()
    }

    /// Raw brackets of every ordered pair of generators of the set.
    fn cache(&self) -> BTreeMap<(String, String), Operator> {
        let names: Vec<String> = self.gs.names().into_iter().map(String::from).collect();
        let pairs: Vec<(String, String)> =
            names.iter().flat_map(|a| names.iter().map(move |b| (a.clone(), b.clone()))).collect();
        pairs.into_par_iter().map(|(a, b)| {
            let op = bracket_of(self.gs, &a, &b);
            ((a, b), op)
        }).collect()
    }
}

fn identity_assignment(table: &BracketTable) -> Assignment {
    table.names().into_iter().map(|n| (n.clone(), (n, Scalar::one()))).collect()
}

/// Candidate identifications of the `osp(2|2)` odd slots and `J`: a
/// permutation of the two supercharge indices (shared by `Q` and `Q̃`) and
/// a phase in `{±1, ±i}` per slot. The identity map comes first.
fn osp22_candidates() -> Vec<Assignment> {
    let phases = [Scalar::one(), -&Scalar::one(), Scalar::i(), -&Scalar::i()];
    let mut out = Vec::new();
    for perm in [[1, 2], [2, 1]] {
        for code in 0..4usize.pow(5) {
            let mut asg: Assignment = ["H", "D", "K"].iter().map(|n| (n.to_string(), (n.to_string(), Scalar::one()))).collect();
            let digit = |k: u32| phases[(code / 4usize.pow(k)) % 4].clone();
            for (s, &src) in perm.iter().enumerate() {
                asg.insert(format!("Q{}", s + 1), (format!("Q{src}"), digit(s as u32)));
                asg.insert(format!("Qt{}", s + 1), (format!("Qt{src}"), digit(2 + s as u32)));
            }
            asg.insert("J".into(), ("J".into(), digit(4)));
            out.push(asg);
        }
    }
    out
}

/// Verify that `gs` realizes `table` with zero residuals, identically in the
/// parameters. For the non-Klein family the slot identification is searched.
pub fn verify_closure(gs: &GeneratorSet, table: &BracketTable) -> Result<ClosureReport> {
    let v = Verifier::new(gs, table);
    let search = gs.family == Family::NonKleinN2;
    for n in table.names() {
        if gs.find(&n).is_none() {
            return Err(Error::InvalidArgument(format!("generator `{n}` of {} missing from {}", table.algebra, gs.family)));
        }
    }
    let mut tried = 0;
    let chosen = if search {
        let cache = v.cache();
        let raw = |a: &str, b: &str| cache[&(a.to_string(), b.to_string())].clone();
        let mut found = None;
        for asg in osp22_candidates() {
            tried += 1;
            if v.pairs.iter().all(|(a, b)| v.residual(&asg, a, b, &raw).is_zero()) {
                found = Some(asg);
                break;
            }
        }
        found
    } else {
        None
    };
    let asg = chosen.clone().unwrap_or_else(|| identity_assignment(table));
    let entries = v.full(&asg);
    let pass = entries.iter().all(|e| e.residual.is_zero());
    let identification = search.then(|| {
        asg.iter()
            .map(|(slot, (src, ph))| SlotImage { slot: slot.clone(), source: src.clone(), phase: phase_label(ph) })
            .collect()
    });
    Ok(ClosureReport {
        algebra: table.algebra.clone(),
        model: gs.family.to_string(),
        pass,
        entries,
        identification: if chosen.is_some() { identification } else { None },
        candidates_tried: tried,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GradeEntry {
    pub name: String,
    pub expected: String,
    pub found: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub model: String,
    pub pass: bool,
    pub grades: Vec<GradeEntry>,
}

/// Every generator is a dilatation eigen-operator with the grade of its role.
pub fn verify_grading(gs: &GeneratorSet) -> GradingReport {
    let d = gs.d();
    let grades: Vec<GradeEntry> = gs
        .generators()
        .iter()
        .map(|g| {
            let found = g.op.grade(d);
            let expected = g.role.grade();
            GradeEntry {
                name: g.name.clone(),
                expected: crate::algebra::rat_string(&expected),
                ok: found.as_ref() == Some(&expected),
                found: found.as_ref().map(crate::algebra::rat_string),
            }
        })
        .collect();
    GradingReport { model: gs.family.to_string(), pass: grades.iter().all(|g| g.ok), grades }
}

/// Bracket of two named generators of a set, computed directly.
pub fn bracket_of(gs: &GeneratorSet, a: &str, b: &str) -> Operator {
    let odd = |n: &str| gs.find(n).is_some_and(|g| g.role.is_odd());
    gs.get(a).bracket(gs.get(b), odd(a) && odd(b)).expect("same dimension")
}

/// Residual of `[a, b} - Σ c_n · gen_n` for a hand-written right-hand side.
pub fn residual_of(gs: &GeneratorSet, a: &str, b: &str, rhs: &[(&str, ParamPoly)]) -> Operator {
    let mut r = bracket_of(gs, a, b);
    for (n, c) in rhs {
        r = &r - &gs.get(n).scale_poly(c);
    }
    r
}
