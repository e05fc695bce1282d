use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct NumRow {
    pub label: String,
    pub computed: f64,
    pub reference: f64,
    pub tol: f64,
    /// Tolerance applies to the relative error instead of the absolute one.
    pub relative: bool,
}

impl NumRow {
    pub fn abs_err(&self) -> f64 {
        (self.computed - self.reference).abs()
    }

    pub fn rel_err(&self) -> f64 {
        let d = self.reference.abs();
        if d == 0.0 {
            self.abs_err()
        } else {
            self.abs_err() / d
        }
    }

    pub fn pass(&self) -> bool {
        let e = if self.relative { self.rel_err() } else { self.abs_err() };
        e <= self.tol
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct NumReport {
    pub title: String,
    pub rows: Vec<NumRow>,
    pub notes: Vec<String>,
}

impl NumReport {
    pub fn new(title: impl Into<String>) -> Self {
        NumReport { title: title.into(), ..Default::default() }
    }

    pub fn push(&mut self, label: impl Into<String>, computed: f64, reference: f64, tol: f64, relative: bool) {
        self.rows.push(NumRow { label: label.into(), computed, reference, tol, relative });
    }

    pub fn pass(&self) -> bool {
        self.rows.iter().all(NumRow::pass)
    }

    pub fn max_rel_err(&self) -> f64 {
        self.rows.iter().map(NumRow::rel_err).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "title": self.title,
            "pass": self.pass(),
            "tolerance_source": "numerical contract of this tool",
            "rows": self.rows.iter().map(|r| json!({
                "label": r.label,
                "computed": r.computed,
                "reference": r.reference,
                "abs_err": r.abs_err(),
                "rel_err": r.rel_err(),
                "tol": r.tol,
                "tol_kind": if r.relative { "relative" } else { "absolute" },
                "pass": r.pass(),
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}
