//! The `superosc` command line: argument parsing, dispatch, rendering and exit codes.
//!
//! Exit status is 0 on success, 1 when a verification fails or the
//! parameters are inadmissible, 2 on usage errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{json as js, parse_rational, rat_string, Rational};
use crate::clifford::{build_gamma_set, verify_clifford, verify_parity};
use crate::closure::{table_d21, table_osp22, table_osp2n2, verify_closure, verify_grading, BracketTable};
use crate::defsolver::{solve_ansatz, solve_candidate, Ansatz, ConstraintReport, DeformationCandidate};
use crate::error::Error;
use crate::generators::{Family, ModelSpec, Param, BETA, NU};
use crate::hilbert::{classify, fundamental_domain, s3_orbit, HilbertModel};
use crate::numcheck::{gram_matrix, grid_spectrum, klein_n1_states, nonklein_states, norms_check, GridSpec, NumReport};
use crate::spectral::norms::{nonklein_inverse_norm_sq, nonklein_norm, nonklein_vacuum_norm};
use crate::spectral::{
    klein_similarity, lowest_weight_states, norm_table, phase_equivalence_check, similarity_check, soft_susy_check,
    spectrum,
};

#[derive(Parser, Debug)]
#[command(name = "superosc", version, about = "Deformed matrix oscillators and their superconformal algebras")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Model and parameter flags shared by most subcommands.
#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// klein-n1, klein-n2, nonklein-n2, undeformed:N, or dff (classify only).
    #[arg(long)]
    pub model: Option<String>,
    /// `p/q` or `sym`.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// `p/q` or `sym`.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub levels: Option<usize>,
    /// `N,delta,L`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Hilbert-space option id as listed by `classify`.
    #[arg(long)]
    pub choice: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every bracket of the model against its superalgebra table.
    VerifyClosure {
        #[command(flatten)]
        common: Common,
        /// Also check the Jacobi identities of the table.
        #[arg(long)]
        jacobi: bool,
    },
    /// Check the dilatation grade of every generator.
    VerifyGrading {
        #[command(flatten)]
        common: Common,
    },
    /// Soft-algebra, ladder, phase and similarity identities.
    VerifyLadders {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        phase_levels: usize,
    },
    /// Solve the deformation constraints within an ansatz.
    SolveDeformation {
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// klein, nonklein, nonklein-b (symbolic b), empty, or a custom JSON ansatz (inline or @file).
        #[arg(long, default_value = "klein")]
        ansatz: String,
        /// Check the named candidate (klein, nonklein, undeformed) at this n instead of solving.
        #[arg(long)]
        candidate: Option<String>,
    },
    /// Energy levels with degeneracies in an admissible Hilbert space.
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Ladder coefficients and tower norms.
    Norms {
        #[command(flatten)]
        common: Common,
    },
    /// Normalizability and Hilbert-space options.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// The S3 orbit of alpha and its fundamental domains.
    Orbit {
        #[command(flatten)]
        common: Common,
    },
    /// Numerical cross-checks.
    Numcheck {
        #[arg(value_enum)]
        what: NumWhat,
        #[command(flatten)]
        common: Common,
    },
    /// Generators of a model as JSON or text.
    DumpModel {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumWhat {
    Spectrum,
    Norms,
    Gram,
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub ok: bool,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn new(ok: bool, json: Value, text: String) -> Self {
        Outcome { ok, json, text }
    }
}

/// Rendered output and exit code.
#[derive(Debug)]
pub struct Response {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn family(common: &Common) -> Result<Family, Error> {
    common.model.as_deref().ok_or_else(|| usage("--model is required"))?.parse()
}

fn param_flag(f: Family, common: &Common) -> Option<&str> {
    match f.parameter() {
        Some(BETA) => common.beta.as_deref(),
        Some(NU) => common.nu.as_deref(),
        _ => None,
    }
}

/// Parameter binding of the model; `sym` when absent.
fn binding(f: Family, common: &Common) -> Result<Param, Error> {
    match param_flag(f, common) {
        None => Ok(Param::Symbolic),
        Some(s) => s.parse(),
    }
}

fn rational_flag(v: Option<&str>, flag: &str) -> Result<Rational, Error> {
    let s = v.ok_or_else(|| usage(format!("{flag} is required")))?;
    parse_rational(s).ok_or_else(|| usage(format!("{flag}: cannot parse `{s}` as p/q")))
}

/// The numeric parameter of a deformed family.
fn value(f: Family, common: &Common) -> Result<Rational, Error> {
    let name = f.parameter().ok_or_else(|| usage(format!("{f} has no deformation parameter")))?;
    match binding(f, common)? {
        Param::Value(v) => Ok(v),
        Param::Symbolic => Err(usage(format!("--{name} needs a rational value here"))),
    }
}

fn table_for(f: Family, p: &Param) -> BracketTable {
    let t = match f {
        Family::KleinN1 | Family::NonKleinN2 => table_osp22(),
        Family::KleinN2 => table_d21(),
        Family::Undeformed(n) => table_osp2n2(n),
    };
    match p {
        Param::Value(v) if f == Family::KleinN2 => t.substitute(&BTreeMap::from([(BETA.to_string(), v.clone())])),
        _ => t,
    }
}

fn verify_closure_cmd(common: &Common, jacobi: bool) -> Result<Outcome, Error> {
    let f = family(common)?;
    let p = binding(f, common)?;
    let gs = ModelSpec { family: f, param: p.clone() }.build()?;
    let table = table_for(f, &p);
    let r = verify_closure(&gs, &table)?;
    let mut j = r.to_json();
    let mut ok = r.pass;
    let mut text = format!("{} realizes {}: {}\n", r.model, r.algebra, if r.pass { "pass" } else { "FAIL" });
    let _ = writeln!(text, "brackets checked: {}", r.entries.len());
    if let Some(e) = r.first_failure() {
        let _ = writeln!(text, "witness: {} leaves residual {}", e.lhs(), e.residual);
    }
    if let Some(id) = &r.identification {
        let map: Vec<String> = id.iter().map(|s| format!("{} = {}*{}", s.slot, s.phase, s.source)).collect();
        let _ = writeln!(text, "identification: {}", map.join(", "));
    }
    if jacobi {
        let jr = table.verify_jacobi();
        ok &= jr.pass;
        let _ = writeln!(text, "jacobi on {} triples: {}", jr.triples, if jr.pass { "pass" } else { "FAIL" });
        j["jacobi"] = serde_json::to_value(&jr).expect("serializable");
    }
    Ok(Outcome::new(ok, j, text))
}

fn verify_grading_cmd(common: &Common) -> Result<Outcome, Error> {
    let f = family(common)?;
    let gs = ModelSpec { family: f, param: binding(f, common)? }.build()?;
    let r = verify_grading(&gs);
    let mut text = format!("grading of {}: {}\n", r.model, if r.pass { "pass" } else { "FAIL" });
    for g in &r.grades {
        let _ = writeln!(text, "  {:<8} expected {:>4} found {}", g.name, g.expected, g.found.as_deref().unwrap_or("none"));
    }
    let mut j = serde_json::to_value(&r).expect("serializable");
    let gammas = build_gamma_set(f.n())?;
    let cl = verify_clifford(&gammas);
    let pa = verify_parity(&gammas);
    let _ = writeln!(text, "clifford relations: {}, parity: {}", cl.pass, pa.pass);
    j["clifford"] = serde_json::to_value(&cl).expect("serializable");
    j["parity"] = serde_json::to_value(&pa).expect("serializable");
    Ok(Outcome::new(r.pass && cl.pass && pa.pass, j, text))
}

fn verify_ladders_cmd(common: &Common, phase_levels: usize) -> Result<Outcome, Error> {
    let f = family(common)?;
    let gs = ModelSpec { family: f, param: binding(f, common)? }.build()?;
    let soft = soft_susy_check(&gs)?;
    let mut ok = soft.pass();
    let mut text = format!("ladder identities for {f}: {}\n", if soft.pass() { "pass" } else { "FAIL" });
    for id in &soft.identities {
        let _ = writeln!(text, "  {:<28} {}", id.name, if id.residual.is_zero() { "0" } else { "nonzero" });
    }
    let mut j = json!({ "soft": soft.to_json() });
    // the two non-Klein ladders create independent states, so only klein-n1 qualifies
    if f == Family::KleinN1 {
        let ph = phase_equivalence_check(&gs, phase_levels)?;
        ok &= ph.pass();
        let _ = writeln!(text, "phase equivalence up to n={phase_levels}: {}", if ph.pass() { "pass" } else { "FAIL" });
        j["phase"] = ph.to_json();
    }
    if let Some(s) = klein_similarity(&gs) {
        let sim = similarity_check(&gs, &s)?;
        ok &= sim.pass();
        let _ = writeln!(text, "similarity beta -> -beta: {}", if sim.pass() { "pass" } else { "FAIL" });
        j["similarity"] = sim.to_json();
    }
    j["pass"] = json!(ok);
    Ok(Outcome::new(ok, j, text))
}

fn read_ansatz(src: &str) -> Result<Value, Error> {
    let raw = match src.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
        None => src.to_string(),
    };
    serde_json::from_str(&raw).map_err(|e| usage(format!("ansatz json: {e}")))
}

fn solve_deformation_cmd(n: usize, ansatz: &str, candidate: Option<&str>) -> Result<Outcome, Error> {
    if let Some(c) = candidate {
        let cand = match c {
            "klein" => DeformationCandidate::klein(n)?,
            "undeformed" => DeformationCandidate::undeformed(n)?,
            "nonklein" if n == 2 => DeformationCandidate::nonklein(&crate::algebra::ParamPoly::from_rational(crate::algebra::rat(1, 2))),
            "nonklein" => return Err(usage("the nonklein candidate lives at n = 2")),
            _ => return Err(usage(format!("unknown candidate `{c}`; expected klein, nonklein or undeformed"))),
        };
        let r = ConstraintReport::build(&cand, true);
        let mut text = format!("candidate {c} at n={n}: {} ({})\n", if r.pass() { "pass" } else { "FAIL" }, r.classification);
        if let Some(m) = &r.multiplet {
            let _ = writeln!(text, "multiplet check over {} brackets: {}", m.brackets_checked, if m.pass { "pass" } else { "FAIL" });
            if let Some(w) = &m.witness {
                let _ = writeln!(text, "witness: {} leaves {}", w.bracket, w.residual);
            }
        }
        return Ok(Outcome::new(r.pass(), r.to_json(), text));
    }
    let (label, solved, unresolved) = match ansatz {
        "nonklein-b" => {
            if n != 2 {
                return Err(usage("the nonklein ansatz lives at n = 2"));
            }
            let t = DeformationCandidate::nonklein(&crate::algebra::ParamPoly::var("b"));
            let (s, u) = solve_candidate(&t, &["b".to_string()], &std::collections::BTreeSet::from([NU.to_string()]));
            ("nonklein-b".to_string(), s, u)
        }
        _ => {
            let a = match ansatz {
                "klein" => Ansatz::klein(n)?,
                "nonklein" if n == 2 => Ansatz::nonklein()?,
                "nonklein" => return Err(usage("the nonklein ansatz lives at n = 2")),
                "empty" => Ansatz::empty(n)?,
                other => Ansatz::from_json(&read_ansatz(other)?)?,
            };
            let (s, u) = solve_ansatz(&a);
            (a.label.clone(), s, u)
        }
    };
    let reports: Vec<Value> = solved
        .iter()
        .map(|s| {
            let mut v = s.to_json();
            v["report"] = ConstraintReport::build(&s.candidate, false).to_json();
            v
        })
        .collect();
    let mut text = format!("ansatz {label} at n={n}: {} solution families, {unresolved} unresolved\n", solved.len());
    for s in &solved {
        let asg: Vec<String> = s.assignment.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        let _ = writeln!(text, "  [{}] {} free: {:?}", s.classification, asg.join(", "), s.free);
    }
    let j = json!({ "ansatz": label, "n": n, "solutions": reports, "unresolved": unresolved });
    Ok(Outcome::new(!solved.is_empty(), j, text))
}

fn inadmissible(e: &Error, extra: Value) -> Outcome {
    let text = format!("{e}\n");
    Outcome::new(false, json!({ "error": "inadmissible", "message": e.to_string(), "classification": extra }), text)
}

fn hilbert_model(f: Family) -> Result<HilbertModel, Error> {
    match f {
        Family::KleinN1 => Ok(HilbertModel::KleinN1),
        Family::KleinN2 => Ok(HilbertModel::KleinN2),
        Family::NonKleinN2 => Ok(HilbertModel::NonKleinN2),
        Family::Undeformed(_) => Err(usage("undeformed models have no Hilbert-space classification")),
    }
}

fn spectrum_cmd(common: &Common) -> Result<Outcome, Error> {
    let f = family(common)?;
    let v = value(f, common)?;
    let levels = common.levels.unwrap_or(6);
    match spectrum(f, &v, levels, common.choice.as_deref()) {
        Ok(r) => {
            let gs = ModelSpec::with_value(f, v.clone()).build()?;
            let mut j = r.to_json();
            j["lowest_weight_states"] = lowest_weight_states(&gs).iter().map(|l| l.to_json()).collect();
            let mut text = format!("{f} at {} = {} in option {}\n", f.parameter().unwrap_or("?"), rat_string(&v), r.option);
            for l in &r.levels {
                let _ = writeln!(text, "  E = {:<8} degeneracy {}", rat_string(&l.energy), l.degeneracy);
            }
            Ok(Outcome::new(true, j, text))
        }
        Err(e @ Error::Inadmissible(_)) => Ok(inadmissible(&e, classify(hilbert_model(f)?, &v)?.to_json())),
        Err(e) => Err(e),
    }
}

fn norms_cmd(common: &Common) -> Result<Outcome, Error> {
    let f = family(common)?;
    let n_max = common.levels.unwrap_or(6) as u32;
    match f {
        Family::KleinN1 | Family::KleinN2 => {
            let beta = match binding(f, common)? {
                Param::Value(v) => Some(v),
                Param::Symbolic => None,
            };
            let tables: Vec<_> = [1i8, -1].iter().map(|&e| norm_table(e, n_max, beta.as_ref())).collect();
            let ok = tables.iter().all(|t| t.agree);
            let mut text = String::new();
            for t in &tables {
                let _ = writeln!(text, "epsilon {:+}: recursion = closed form: {}", t.eps, t.agree);
                for e in &t.entries {
                    let val = e.value.as_ref().map(rat_string).unwrap_or_default();
                    let _ = writeln!(text, "  M_{} = {}  {}{}", e.n, e.symbolic, val, if e.pole { "  (pole)" } else { "" });
                }
                if let Some(v) = t.vacuum_norm {
                    let _ = writeln!(text, "  N_eps = {v:.12}");
                }
            }
            let j = json!({ "model": f.to_string(), "tables": tables.iter().map(|t| t.to_json()).collect::<Vec<_>>(), "pass": ok });
            Ok(Outcome::new(ok, j, text))
        }
        Family::NonKleinN2 => {
            let nu = match binding(f, common)? {
                Param::Value(v) => Some(v),
                Param::Symbolic => None,
            };
            let mut rows = Vec::new();
            let mut text = String::new();
            for n in 0..=n_max {
                for slot in [0u8, 1] {
                    let inv = nonklein_inverse_norm_sq(n, slot)?;
                    let num = nu.as_ref().map(|v| nonklein_norm(n, slot, v)).transpose();
                    let num = match num {
                        Ok(x) => x,
                        Err(e @ Error::Inadmissible(_)) => return Ok(inadmissible(&e, Value::Null)),
                        Err(e) => return Err(e),
                    };
                    let _ = writeln!(text, "  N_{{{n},{slot}}}^-2 = {inv}{}", num.map(|x| format!("  N = {x:.12}")).unwrap_or_default());
                    rows.push(json!({ "n": n, "slot": slot, "inverse_norm_squared": js::poly(&inv), "norm": num }));
                }
            }
            let vac = nu.as_ref().map(|v| nonklein_vacuum_norm(crate::algebra::rat_to_f64(v))).transpose()?;
            let j = json!({ "model": f.to_string(), "nu": nu.as_ref().map(rat_string), "vacuum_norm": vac, "norms": rows });
            Ok(Outcome::new(true, j, text))
        }
        Family::Undeformed(_) => Err(usage("norms are defined for the deformed families")),
    }
}

fn classify_cmd(common: &Common) -> Result<Outcome, Error> {
    let name = common.model.as_deref().ok_or_else(|| usage("--model is required"))?;
    let model: HilbertModel = name.parse()?;
    let v = match model {
        HilbertModel::KleinN1 | HilbertModel::KleinN2 => rational_flag(common.beta.as_deref(), "--beta")?,
        HilbertModel::NonKleinN2 => rational_flag(common.nu.as_deref(), "--nu")?,
        HilbertModel::Dff => rational_flag(common.g.as_deref(), "--g")?,
    };
    let mut r = classify(model, &v)?;
    if let Some(c) = &common.choice {
        r = r.choose(c)?;
    }
    let mut text = format!("{} at {} = {}: case {}\n", r.model, r.param.0, rat_string(&r.param.1), r.case);
    for l in &r.lowest_weight {
        let _ = writeln!(text, "  lwv {:<8} exponent {} normalizable {}", l.label, l.exponent.value, l.normalizable);
    }
    for o in &r.options {
        let _ = writeln!(text, "  option {:<10} {:?} reps {:?} E0 = {}", o.id, o.boundary, o.reps, o.vacuum_energy.value);
    }
    if let Some(a) = &r.alpha {
        let fds: Vec<String> = r.domains.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(text, "  alpha = {} in {}", rat_string(a), fds.join(", "));
    }
    for fl in &r.flags {
        let _ = writeln!(text, "  flag: {fl}");
    }
    if let Some(c) = &r.chosen {
        let _ = writeln!(text, "  chosen: {c}");
    }
    Ok(Outcome::new(true, r.to_json(), text))
}

fn orbit_cmd(common: &Common) -> Result<Outcome, Error> {
    let alpha = match (&common.alpha, &common.beta) {
        (Some(a), _) => rational_flag(Some(a), "--alpha")?,
        (None, Some(b)) => crate::hilbert::alpha_of_beta(&rational_flag(Some(b), "--beta")?),
        _ => return Err(usage("--alpha (or --beta) is required")),
    };
    let r = s3_orbit(&alpha);
    let mut text = format!("orbit of alpha = {}\n", rat_string(&alpha));
    for (e, v) in &r.elements {
        let doms = v.as_ref().map(|v| fundamental_domain(v).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","));
        let _ = writeln!(text, "  {:<18} {:<8} {}", e, v.as_ref().map(rat_string).unwrap_or("undefined".into()), doms.unwrap_or_default());
    }
    if r.degenerate {
        text.push_str("  degenerate: the algebra is not simple here\n");
    }
    Ok(Outcome::new(true, r.to_json(), text))
}

fn report_outcome(r: &NumReport) -> Outcome {
    let mut text = format!("{}: {}\n", r.title, if r.pass() { "pass" } else { "FAIL" });
    for row in &r.rows {
        let _ = writeln!(
            text,
            "  {:<48} {:>16.10} ref {:>16.10} err {:.2e} tol {:.0e} {}",
            row.label,
            row.computed,
            row.reference,
            if row.relative { row.rel_err() } else { row.abs_err() },
            row.tol,
            if row.pass() { "ok" } else { "FAIL" }
        );
    }
    for n in &r.notes {
        let _ = writeln!(text, "  note: {n}");
    }
    Outcome::new(r.pass(), r.to_json(), text)
}

fn numcheck_cmd(what: NumWhat, common: &Common) -> Result<Outcome, Error> {
    match what {
        NumWhat::Spectrum => {
            let f = family(common)?;
            let v = value(f, common)?;
            let grid: GridSpec = common.grid.as_deref().map(str::parse).transpose()?.unwrap_or_default();
            match grid_spectrum(f, &v, &grid, common.levels.unwrap_or(6), common.choice.as_deref()) {
                Ok(r) => Ok(report_outcome(&r.report)),
                Err(e @ Error::Inadmissible(_)) => Ok(inadmissible(&e, classify(hilbert_model(f)?, &v)?.to_json())),
                Err(e) => Err(e),
            }
        }
        NumWhat::Norms => {
            let parse = |s: &Option<String>, default: &[Rational]| -> Result<Vec<Rational>, Error> {
                match s {
                    Some(s) => s.split(',').map(|x| rational_flag(Some(x.trim()), "parameter list")).collect(),
                    None => Ok(default.to_vec()),
                }
            };
            use crate::algebra::rat;
            let betas = parse(&common.beta, &[rat(-1, 4), rat(0, 1), rat(1, 4), rat(2, 5)])?;
            let nus = parse(&common.nu, &[rat(1, 2), rat(1, 1), rat(2, 1)])?;
            Ok(report_outcome(&norms_check(&betas, &nus, common.levels.unwrap_or(5), 1e-8)?))
        }
        NumWhat::Gram => {
            let f = family(common)?;
            let v = value(f, common)?;
            let n_max = common.levels.unwrap_or(5);
            let states = match f {
                Family::KleinN1 => klein_n1_states(&v, n_max, true)?,
                Family::NonKleinN2 => nonklein_states(&v, n_max)?,
                _ => return Err(usage("gram is available for klein-n1 and nonklein-n2")),
            };
            Ok(report_outcome(&gram_matrix(&states, 1e-8)?))
        }
    }
}

fn dump_model_cmd(common: &Common) -> Result<Outcome, Error> {
    let f = family(common)?;
    let gs = ModelSpec { family: f, param: binding(f, common)? }.build()?;
    let mut text = format!("{} ({}x{} matrices)\n", f, gs.dim(), gs.dim());
    for g in gs.generators() {
        let _ = writeln!(text, "  {} = {}", g.name, g.op);
    }
    Ok(Outcome::new(true, gs.to_json(), text))
}

/// Execute a parsed command.
pub fn execute(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::VerifyClosure { common, jacobi } => verify_closure_cmd(common, *jacobi),
        Command::VerifyGrading { common } => verify_grading_cmd(common),
        Command::VerifyLadders { common, phase_levels } => verify_ladders_cmd(common, *phase_levels),
        Command::SolveDeformation { n, ansatz, candidate } => solve_deformation_cmd(*n, ansatz, candidate.as_deref()),
        Command::Spectrum { common } => spectrum_cmd(common),
        Command::Norms { common } => norms_cmd(common),
        Command::Classify { common } => classify_cmd(common),
        Command::Orbit { common } => orbit_cmd(common),
        Command::Numcheck { what, common } => numcheck_cmd(*what, common),
        Command::DumpModel { common } => dump_model_cmd(common),
    }
}

/// Parse, execute and render; never exits the process.
pub fn run<I, T>(args: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let s = e.render().to_string();
            return if code == 0 {
                Response { code, stdout: s, stderr: String::new() }
            } else {
                Response { code, stdout: String::new(), stderr: s }
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"
            } else {
                out.text
            };
            Response { code: if out.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = match e {
                Error::Inadmissible(_) | Error::Pole(_) | Error::Divergent(_) => 1,
                _ => 2,
            };
            Response { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

/// Size the worker pool from `SUPEROSC_THREADS`.
pub fn init_threads() {
    if let Some(n) = std::env::var("SUPEROSC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &str) -> Response {
        run(std::iter::once("superosc").chain(args.split_whitespace()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go("orbit --alpha 1").code, 0);
        assert_eq!(go("spectrum --model nonklein-n2 --nu 0").code, 1);
        assert_eq!(go("spectrum --model bogus --nu 1").code, 2);
        assert_eq!(go("frobnicate").code, 2);
        assert_eq!(go("classify --model dff").code, 2);
    }

    #[test]
    fn json_is_deterministic() {
        let a = go("--json classify --model klein-n2 --beta 1/5");
        let b = go("classify --model klein-n2 --beta 1/5 --json");
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["alpha"], "-3/10");
    }

    #[test]
    fn dff_half_has_two_options() {
        let v: Value = serde_json::from_str(&go("--json classify --model dff --g 1/2").stdout).unwrap();
        assert_eq!(v["options"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn negative_values_parse() {
        let r = go("classify --model klein-n1 --beta -1/5");
        assert_eq!(r.code, 0, "{}", r.stderr);
    }
}
