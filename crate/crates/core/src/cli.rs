//! Command-line driver: argument schema, dispatch and report documents.
//!
//! Every command except the plain `strata` table writes one JSON document
//! with the tool version, an echo of the request, the result, embedded
//! witnesses, the exit code and a timing field. Keys are sorted, so identical
//! requests give identical documents apart from `timing`.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::{is_prime_u64, to_u64};
use crate::counterexamples::{
    build_diag_counterexample, build_tri_counterexample, certify, certify_diag_recipe, CertReport,
};
use crate::deciders::diag::{diag_over_field, diag_over_ring};
use crate::deciders::local::{
    diag_completion_field, diag_local, diag_residue_field, tri_local, tri_residue_field, LocalOrder,
};
use crate::deciders::report::local_global_report;
use crate::deciders::residue::{diag_residue_brute, diag_residue_ring, tri_residue_brute};
use crate::deciders::tri::{tri_over_field, tri_over_ring};
use crate::deciders::{Decision, Kind, Verdict};
use crate::error::{Error, Result};
use crate::io::codec::{parse_matrix_file, InputMatrix, JsonCodec};
use crate::io::encode::{cert_report_json, cert_witnesses, diag_recipe_json, report_json, tri_recipe_json, typed_decision_json};
use crate::io::witness::{verify_report, WitnessEntry};
use crate::linalg::matrix::Matrix;
use crate::number_ring::{PrimeIdeal, QuadElem, QuadRing};
use crate::order::Order;
use crate::ring::{Integers, Ring};
use crate::strata::audit::{stratification_audit, stratum_table, table_csv, transport_audit, x_audit, y_audit};
use crate::strata::components::Target;
use crate::strata::dim::dimension_checks;
use crate::strata::index::JordanShape;

pub const BUDGET_ENV: &str = "INTSIM_BUDGET";
pub const DEFAULT_PRIME_BOUND: u64 = 100;
pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const TOOL: &str = "intsim";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "intsim", version, about = "Integral triangularization and diagonalization deciders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide one condition for a matrix.
    Decide(DecideArgs),
    /// Evaluate all six conditions with implication checks.
    Report(ReportArgs),
    /// Generate a counterexample recipe over an imaginary quadratic order.
    Counterexample(CounterexampleArgs),
    /// Certify local-but-not-global behaviour of a quadratic matrix.
    Certify(CertifyArgs),
    /// Stratum table (CSV) or stratification audit (JSON).
    Strata(StrataArgs),
    /// Finite-field audits of components, transport maps and dimensions.
    Audit(AuditArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Enumeration and brute-force search budget.
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Tri,
    Diag,
}

impl From<Problem> for Kind {
    fn from(p: Problem) -> Kind {
        match p {
            Problem::Tri => Kind::Tri,
            Problem::Diag => Kind::Diag,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Over the ring of integers O.
    Ring,
    /// Over the fraction field k.
    Field,
    /// Over the completion O_P.
    Local,
    /// Over the residue field O/P.
    ResidueField,
    /// Over the completed field k_P.
    CompletedField,
    /// Over O/P^k, by exhaustive search.
    Residue,
}

impl Level {
    fn name(self) -> &'static str {
        match self {
            Level::Ring => "ring",
            Level::Field => "field",
            Level::Local => "local",
            Level::ResidueField => "residue-field",
            Level::CompletedField => "completed-field",
            Level::Residue => "residue",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct DecideArgs {
    #[arg(long, required_unless_present = "verify_only")]
    pub problem: Option<Problem>,
    #[arg(long, value_enum, default_value_t = Level::Ring)]
    pub level: Level,
    /// Matrix file, or a report with --verify-only.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Rational prime below the places for the local levels.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Exponent for --level residue.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Re-verify the witnesses of an existing report.
    #[arg(long)]
    pub verify_only: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct ReportArgs {
    #[arg(long, required_unless_present = "verify_only")]
    pub kind: Option<Problem>,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
    pub prime_bound: u64,
    #[arg(long)]
    pub verify_only: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct CounterexampleArgs {
    #[arg(long, required_unless_present = "verify_only")]
    pub kind: Option<Problem>,
    /// Negative squarefree d with class number > 1.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "verify_only")]
    pub d: Option<i64>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Run the three-leg certification.
    #[arg(long)]
    pub certify: bool,
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
    pub prime_bound: u64,
    /// Report to re-verify with --verify-only.
    #[arg(long = "in", requires = "verify_only")]
    pub input: Option<PathBuf>,
    #[arg(long, requires = "input")]
    pub verify_only: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct CertifyArgs {
    #[arg(long, required_unless_present = "verify_only")]
    pub kind: Option<Problem>,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
    pub prime_bound: u64,
    #[arg(long)]
    pub verify_only: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct StrataArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub lambda: i64,
    /// Field sizes, from 2, 3, 4, 5, 7.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u8, 3])]
    pub q: Vec<u8>,
    /// Emit the stratification audit instead of the table.
    #[arg(long)]
    pub audit: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Components of Y_M for a diagonal M.
    Y,
    /// Components of X_M against the product prediction.
    X,
    /// Transport between two components.
    Transport,
    /// Stratum dimensions against exact point counts.
    Dims,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetArg {
    X,
    Y,
}

#[derive(Args, Debug, Clone)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    /// Diagonal entries of M.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Option<Vec<i64>>,
    /// Jordan shape such as 0:1+2,3:1.
    #[arg(long, allow_hyphen_values = true)]
    pub shape: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub q: u8,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Diagonal pattern of the source component; sorted eigenvalues by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub sigma: Option<Vec<i64>>,
    /// 1-based position exchanged with the next one.
    #[arg(long, default_value_t = 1)]
    pub position: usize,
    #[arg(long, value_enum, default_value_t = TargetArg::Y)]
    pub target: TargetArg,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Decide(_) => "decide",
            Command::Report(_) => "report",
            Command::Counterexample(_) => "counterexample",
            Command::Certify(_) => "certify",
            Command::Strata(_) => "strata",
            Command::Audit(_) => "audit",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Decide(a) => &a.common,
            Command::Report(a) => &a.common,
            Command::Counterexample(a) => &a.common,
            Command::Certify(a) => &a.common,
            Command::Strata(a) => &a.common,
            Command::Audit(a) => &a.common,
        }
    }
}

/// Output of a command: the document text and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub body: String,
}

/// Result of a command before wrapping.
pub struct Done {
    input: Value,
    result: Value,
    witnesses: Vec<WitnessEntry>,
    exit_code: i32,
}

enum Body {
    Json(Done),
    Text(String),
}

pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    finish(cli.command.name(), dispatch(&cli.command), start)
}

fn finish(command: &str, body: Result<Body>, start: Instant) -> Outcome {
    match body {
        Ok(Body::Text(text)) => Outcome { exit_code: 0, body: text },
        Ok(Body::Json(done)) => {
            let doc = json!({
                "tool": TOOL,
                "version": VERSION,
                "command": command,
                "input": done.input,
                "result": done.result,
                "witnesses": done.witnesses.iter().map(WitnessEntry::to_json).collect::<Vec<_>>(),
                "exit_code": done.exit_code,
                "timing": {"elapsed_ms": start.elapsed().as_millis() as u64},
            });
            Outcome { exit_code: done.exit_code, body: pretty(&doc) }
        }
        Err(e) => {
            let doc = json!({
                "tool": TOOL,
                "version": VERSION,
                "command": command,
                "error": {"message": e.to_string()},
                "exit_code": e.exit_code(),
                "timing": {"elapsed_ms": start.elapsed().as_millis() as u64},
            });
            Outcome { exit_code: e.exit_code(), body: pretty(&doc) }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Drop the timing field, for comparing documents.
pub fn without_timing(body: &str) -> Result<Value> {
    let mut v: Value = serde_json::from_str(body).map_err(|e| Error::Parse { location: "report".into(), message: e.to_string() })?;
    if let Some(o) = v.as_object_mut() {
        o.remove("timing");
    }
    Ok(v)
}

fn dispatch(c: &Command) -> Result<Body> {
    match c {
        Command::Decide(a) if a.verify_only => verify_only(&a.input),
        Command::Report(a) if a.verify_only => verify_only(&a.input),
        Command::Certify(a) if a.verify_only => verify_only(&a.input),
        Command::Counterexample(a) if a.verify_only => verify_only(a.input.as_ref().expect("required by clap")),
        Command::Decide(a) => decide(a).map(Body::Json),
        Command::Report(a) => report(a).map(Body::Json),
        Command::Counterexample(a) => counterexample(a).map(Body::Json),
        Command::Certify(a) => certify_cmd(a).map(Body::Json),
        Command::Strata(a) => strata(a),
        Command::Audit(a) => audit(a).map(Body::Json),
    }
}

fn verify_only(path: &PathBuf) -> Result<Body> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { location: path.display().to_string(), message: e.to_string() })?;
    verify_text(&text, json!({"verify_only": path.display().to_string()}))
}

fn verify_text(text: &str, input: Value) -> Result<Body> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let outcome = verify_report(&doc)?;
    let ok = outcome.failed.is_empty();
    Ok(Body::Json(Done {
        input,
        result: json!({"checked": outcome.checked, "failed": outcome.failed, "verified": ok}),
        witnesses: vec![],
        exit_code: if ok { 0 } else { 4 },
    }))
}

/// Orders the driver can work over.
trait CliOrder: LocalOrder + JsonCodec {
    fn rational_prime(&self, p: &Self::Place) -> u64;

    fn residue_diag(
        &self,
        m: &Matrix<Self::Elem>,
        p: &Self::Place,
        k: u32,
        budget: u64,
    ) -> Result<Decision<<Self::Residue as Ring>::Elem>> {
        let r = self.residue(p, k);
        let mr = m.map(|e| self.reduce(&r, e));
        diag_residue_brute(&r, &mr, budget)
    }
}

impl CliOrder for Integers {
    fn rational_prime(&self, p: &u64) -> u64 {
        *p
    }

    fn residue_diag(&self, m: &Matrix<num_bigint::BigInt>, p: &u64, k: u32, budget: u64) -> Result<Decision<u64>> {
        diag_residue_ring(m, *p, k, budget)
    }
}

impl CliOrder for QuadRing {
    fn rational_prime(&self, p: &PrimeIdeal) -> u64 {
        to_u64(&p.p).expect("small prime")
    }
}

/// Parameters of `decide` for an already parsed matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DecideParams {
    pub problem: Kind,
    pub level: Level,
    pub prime: Option<u64>,
    pub k: u32,
    pub budget: u64,
}

fn decide(a: &DecideArgs) -> Result<Done> {
    let params = DecideParams {
        problem: a.problem.expect("required by clap").into(),
        level: a.level,
        prime: a.prime,
        k: a.k,
        budget: a.common.budget,
    };
    decide_input(&parse_matrix_file(&a.input)?, &params)
}

fn decide_input(input: &InputMatrix, a: &DecideParams) -> Result<Done> {
    let echo = json!({
        "problem": a.problem.to_string(),
        "level": a.level.name(),
        "prime": a.prime,
        "k": a.k,
        "budget": a.budget,
        "matrix": input.to_json(),
    });
    let (result, witnesses, unsupported) = match input {
        InputMatrix::Integer(m) => decide_over(&Integers, m, a)?,
        InputMatrix::Quadratic(r, m) => decide_over(r, m, a)?,
    };
    Ok(Done { input: echo, result, witnesses, exit_code: if unsupported { 2 } else { 0 } })
}

fn decide_over<O>(o: &O, m: &Matrix<O::Elem>, a: &DecideParams) -> Result<(Value, Vec<WitnessEntry>, bool)>
where
    O: CliOrder,
    O::F: JsonCodec,
    O::Residue: JsonCodec,
{
    crate::linalg::matrix::require_square(m)?;
    let problem = a.problem;
    let mut witnesses = Vec::new();
    let source = format!("decide {problem} {}", a.level.name());
    match a.level {
        Level::Ring => {
            let d = match problem {
                Kind::Tri => tri_over_ring(o, m)?,
                Kind::Diag => diag_over_ring(o, m)?,
            };
            if let Some(t) = &d.witness {
                witnesses.push(WitnessEntry::new(o, problem, m, t, source));
            }
            return Ok((json!({"ring": o.label(), "decision": typed_decision_json(o, &d)}), witnesses, unsupported(&d)));
        }
        Level::Field => {
            let k = o.frac();
            let mk = m.map(|e| o.embed(e));
            let d = match problem {
                Kind::Tri => tri_over_field(&k, &mk)?,
                Kind::Diag => diag_over_field(&k, &mk)?,
            };
            if let Some(t) = &d.witness {
                witnesses.push(WitnessEntry::new(&k, problem, &mk, t, source));
            }
            return Ok((json!({"ring": o.label(), "decision": typed_decision_json(&k, &d)}), witnesses, unsupported(&d)));
        }
        _ => {}
    }
    let p = a.prime.ok_or_else(|| Error::Validation(format!("--prime is required for --level {}", a.level.name())))?;
    if !is_prime_u64(p) {
        return Err(Error::Validation(format!("{p} is not prime")));
    }
    if a.k == 0 {
        return Err(Error::Validation("--k must be at least 1".into()));
    }
    let places: Vec<O::Place> =
        o.places(p.saturating_mul(p)).into_iter().filter(|q| o.rational_prime(q) == p).collect();
    let mut entries = Vec::new();
    let mut any_unsupported = false;
    for place in &places {
        let label = place.to_string();
        let value = match a.level {
            Level::Residue => {
                let r = o.residue(place, a.k);
                let mr = m.map(|e| o.reduce(&r, e));
                let d = match problem {
                    Kind::Tri => tri_residue_brute(&r, &mr, a.budget)?,
                    Kind::Diag => o.residue_diag(m, place, a.k, a.budget)?,
                };
                if let Some(t) = &d.witness {
                    witnesses.push(WitnessEntry::new(&r, problem, &mr, t, format!("{source} at {label}^{}", a.k)));
                }
                any_unsupported |= unsupported(&d);
                typed_decision_json(&r, &d)
            }
            level => {
                let d = match (problem, level) {
                    (Kind::Tri, Level::Local) => tri_local(o, m, place)?,
                    (Kind::Tri, Level::ResidueField) => tri_residue_field(o, m, place)?,
                    (Kind::Tri, _) => tri_local(o, m, place)?
                        .with_note("over a complete discrete valuation ring this matches the completed field"),
                    (Kind::Diag, Level::Local) => diag_local(o, m, place)?,
                    (Kind::Diag, Level::ResidueField) => diag_residue_field(o, m, place)?,
                    (Kind::Diag, _) => diag_completion_field(o, m, place)?,
                };
                any_unsupported |= unsupported(&d);
                typed_decision_json(o, &d)
            }
        };
        entries.push(json!({"prime": label, "decision": value}));
    }
    let mut result = json!({"ring": o.label(), "prime": p, "places": entries});
    if a.level == Level::Residue {
        result["k"] = json!(a.k);
    }
    Ok((result, witnesses, any_unsupported))
}

fn unsupported<E>(d: &Decision<E>) -> bool {
    d.verdict == Verdict::Unsupported
}

fn report(a: &ReportArgs) -> Result<Done> {
    let kind: Kind = a.kind.expect("required by clap").into();
    report_input(&parse_matrix_file(&a.input)?, kind, a.prime_bound, a.common.budget)
}

fn report_input(input: &InputMatrix, kind: Kind, bound: u64, budget: u64) -> Result<Done> {
    let echo = json!({
        "kind": kind.to_string(),
        "prime_bound": bound,
        "budget": budget,
        "matrix": input.to_json(),
    });
    let (result, witnesses, ring_unsupported, consistent) = match input {
        InputMatrix::Integer(m) => report_over(&Integers, m, kind, bound, budget)?,
        InputMatrix::Quadratic(r, m) => report_over(r, m, kind, bound, budget)?,
    };
    let exit_code = if !consistent {
        4
    } else if ring_unsupported {
        2
    } else {
        0
    };
    Ok(Done { input: echo, result, witnesses, exit_code })
}

fn report_over<O>(o: &O, m: &Matrix<O::Elem>, kind: Kind, bound: u64, budget: u64) -> Result<(Value, Vec<WitnessEntry>, bool, bool)>
where
    O: CliOrder,
    O::F: JsonCodec,
    O::Residue: JsonCodec,
{
    let r = local_global_report(o, m, kind, bound, budget)?;
    let (doc, witnesses) = report_json(o, m, &r)?;
    Ok((doc, witnesses, r.condition(1).verdict == Verdict::Unsupported, r.is_consistent()))
}

fn certification_json(ring: &QuadRing, m: &Matrix<QuadElem>, c: Result<CertReport>) -> Result<(Value, Vec<WitnessEntry>, bool)> {
    match c {
        Ok(c) => {
            let mut v = cert_report_json(ring, &c);
            v["passed"] = json!(true);
            Ok((v, cert_witnesses(ring, m, &c), true))
        }
        Err(Error::CertificationFailed { leg, reason }) => {
            Ok((json!({"passed": false, "failed_leg": leg, "reason": reason}), vec![], false))
        }
        Err(e) => Err(e),
    }
}

fn counterexample(a: &CounterexampleArgs) -> Result<Done> {
    let kind: Kind = a.kind.expect("required by clap").into();
    counterexample_params(kind, a.d.expect("required by clap"), a.n, a.certify, a.prime_bound)
}

fn counterexample_params(kind: Kind, d: i64, n: usize, certify_it: bool, bound: u64) -> Result<Done> {
    let echo = json!({
        "kind": kind.to_string(),
        "d": d,
        "n": n,
        "certify": certify_it,
        "prime_bound": bound,
    });
    let ring = QuadRing::new(d)?;
    let k = ring.field();
    let mut witnesses = Vec::new();
    let (mut result, m, cert) = match kind {
        Kind::Tri => {
            let c = build_tri_counterexample(d, n)?;
            let mk = c.m.map(|e| ring.embed(e));
            let nk = c.big_n.map(|e| ring.embed(e));
            witnesses.push(WitnessEntry::new(&k, Kind::Tri, &mk, &nk, "recipe N over k".into()));
            let cert = certify_it.then(|| certify(&ring, &c.m, Kind::Tri, bound));
            (json!({"recipe": tri_recipe_json(&c)}), c.m, cert)
        }
        Kind::Diag => {
            let c = build_diag_counterexample(d, n)?;
            let mk = c.m.map(|e| ring.embed(e));
            let tk = c.t0.map(|e| ring.embed(e));
            witnesses.push(WitnessEntry::new(&k, Kind::Diag, &mk, &tk, "recipe T0 over k".into()));
            witnesses.push(WitnessEntry::local_unit(
                &ring,
                &c.p_a,
                Kind::Diag,
                &mk,
                &c.t0_local,
                "recipe T0 scaled at p_a".into(),
            ));
            let cert = certify_it.then(|| certify_diag_recipe(&c, bound));
            (json!({"recipe": diag_recipe_json(&c)}), c.m.clone(), cert)
        }
    };
    let mut exit_code = 0;
    if let Some(cert) = cert {
        let (v, w, passed) = certification_json(&ring, &m, cert)?;
        result["certification"] = v;
        witnesses.extend(w);
        if !passed {
            exit_code = 4;
        }
    }
    Ok(Done { input: echo, result, witnesses, exit_code })
}

fn certify_cmd(a: &CertifyArgs) -> Result<Done> {
    let kind: Kind = a.kind.expect("required by clap").into();
    certify_input(&parse_matrix_file(&a.input)?, kind, a.prime_bound)
}

fn certify_input(input: &InputMatrix, kind: Kind, bound: u64) -> Result<Done> {
    let echo = json!({"kind": kind.to_string(), "prime_bound": bound, "matrix": input.to_json()});
    let InputMatrix::Quadratic(ring, m) = input else {
        return Err(Error::Validation("certification needs a matrix over an imaginary quadratic order".into()));
    };
    let (result, witnesses, _) = certification_json(ring, m, certify(ring, m, kind, bound))?;
    Ok(Done { input: echo, result, witnesses, exit_code: 0 })
}

fn strata(a: &StrataArgs) -> Result<Body> {
    if a.q.is_empty() {
        return Err(Error::Validation("at least one --q is required".into()));
    }
    if !a.audit {
        let rows = stratum_table(a.m, a.n, &a.q)?;
        return Ok(Body::Text(table_csv(&rows, &a.q)?));
    }
    strata_audit_params(a.m, a.n, a.lambda, &a.q, a.common.budget).map(Body::Json)
}

fn strata_audit_params(m: usize, n: usize, lambda: i64, qs: &[u8], budget: u64) -> Result<Done> {
    let mut audits = Vec::new();
    let mut ok = true;
    for &q in qs {
        let audit = stratification_audit(m, n, lambda, q, budget)?;
        ok &= audit.union_ok && audit.presentation_ok && audit.classification_ok;
        audits.push(to_value(&audit));
    }
    Ok(Done {
        input: json!({"m": m, "n": n, "lambda": lambda, "q": qs, "budget": budget}),
        result: json!({"audits": audits, "ok": ok}),
        witnesses: vec![],
        exit_code: if ok { 0 } else { 4 },
    })
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn shape_of(a: &AuditArgs) -> Result<JordanShape> {
    match (&a.shape, &a.values) {
        (Some(s), None) => s.parse(),
        (None, Some(v)) => JordanShape::diagonal(v),
        _ => Err(Error::Validation("give exactly one of --shape and --values".into())),
    }
}

fn audit(a: &AuditArgs) -> Result<Done> {
    let budget = a.common.budget;
    let mut echo = json!({"check": format!("{:?}", a.check).to_lowercase(), "q": a.q, "budget": budget});
    let (result, ok) = match a.check {
        Check::Y => {
            let values = a.values.as_ref().ok_or_else(|| Error::Validation("--values is required".into()))?;
            echo["values"] = json!(values);
            let r = y_audit(values, a.q, budget)?;
            let ok = r.partition_ok && r.equal_sizes && r.product_ok;
            (to_value(&r), ok)
        }
        Check::X => {
            let shape = shape_of(a)?;
            echo["shape"] = json!(shape.to_string());
            let r = x_audit(&shape, a.q, budget)?;
            let ok = r.partition_ok && r.product_ok;
            (to_value(&r), ok)
        }
        Check::Transport => {
            let shape = shape_of(a)?;
            let sigma = a.sigma.clone().unwrap_or_else(|| shape.eigenvalues());
            let target = match a.target {
                TargetArg::X => Target::X,
                TargetArg::Y => Target::Y,
            };
            echo["shape"] = json!(shape.to_string());
            echo["sigma"] = json!(sigma);
            echo["position"] = json!(a.position);
            echo["target"] = json!(format!("{target:?}"));
            let r = transport_audit(&shape, a.q, &sigma, a.position, target, budget)?;
            let ok = r.bijective;
            (to_value(&r), ok)
        }
        Check::Dims => {
            let (m, n) = match (a.m, a.n) {
                (Some(m), Some(n)) => (m, n),
                _ => return Err(Error::Validation("--m and --n are required".into())),
            };
            echo["m"] = json!(m);
            echo["n"] = json!(n);
            let checks = dimension_checks(m, n, budget)?;
            let ok = checks.iter().all(|c| c.counts_agree && c.dims_agree);
            (json!({"strata": to_value(&checks)}), ok)
        }
    };
    Ok(Done { input: echo, result: json!({"audit": result, "ok": ok}), witnesses: vec![], exit_code: if ok { 0 } else { 4 } })
}

/// `decide` on a parsed matrix.
pub fn decide_outcome(input: &InputMatrix, params: &DecideParams) -> Outcome {
    finish("decide", decide_input(input, params).map(Body::Json), Instant::now())
}

/// `report` on a parsed matrix.
pub fn report_outcome(input: &InputMatrix, kind: Kind, prime_bound: u64, budget: u64) -> Outcome {
    finish("report", report_input(input, kind, prime_bound, budget).map(Body::Json), Instant::now())
}

/// `certify` on a parsed matrix.
pub fn certify_outcome(input: &InputMatrix, kind: Kind, prime_bound: u64) -> Outcome {
    finish("certify", certify_input(input, kind, prime_bound).map(Body::Json), Instant::now())
}

pub fn counterexample_outcome(kind: Kind, d: i64, n: usize, certify: bool, prime_bound: u64) -> Outcome {
    finish("counterexample", counterexample_params(kind, d, n, certify, prime_bound).map(Body::Json), Instant::now())
}

pub fn strata_audit_outcome(m: usize, n: usize, lambda: i64, qs: &[u8], budget: u64) -> Outcome {
    finish("strata", strata_audit_params(m, n, lambda, qs, budget).map(Body::Json), Instant::now())
}

/// Re-verify the witnesses of a report given as text.
pub fn verify_outcome(report: &str) -> Outcome {
    finish("verify", verify_text(report, json!({"verify_only": "<memory>"})), Instant::now())
}
