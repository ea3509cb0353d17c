//! Command-line front end.
//!
//! Every command produces a [`RunReport`]; `--json` prints it as pretty JSON,
//! otherwise a short human summary is printed. Exit codes: 0 success, 2 usage
//! or input error, 3 resource cap, 4 a consistency check failed.

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{
    check_palindrome, classify, classify_base, classify_recursive, enumerate_stable,
    predicted_x_plus_count, Palindrome, StabilizerClass, ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::nonlocality::{self, SearchBudget};
use crate::qec;
use crate::recovery::{self, CoefficientVariant};
use crate::statevec::{self, PauliWord};
use crate::sym_core::{all_nonempty, sign_vector, CardinalityVector};

pub const VERSION: &str = concat!("symhyper ", env!("CARGO_PKG_VERSION"));

/// Largest `n` for dense sweeps in `verify --max-n`.
const VERIFY_DENSE_CAP: usize = 10;
/// Largest `n` for the dense check in `trace`.
const TRACE_DENSE_CAP: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "symhyper", version, about = "Local Pauli stabilizers of symmetric hypergraph states")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Print the full report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Which oracle to run where both exist.
    #[arg(long, global = true, value_enum, default_value_t = Oracle::Both)]
    pub oracle: Oracle,
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Include wall-clock milliseconds in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Oracle {
    Dense,
    Symbolic,
    Both,
}

impl Oracle {
    fn dense(self) -> bool {
        self != Oracle::Symbolic
    }

    fn symbolic(self) -> bool {
        self != Oracle::Dense
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassFilter {
    XPlus,
    XMinus,
    YPlus,
    All,
}

impl ClassFilter {
    fn classes(self) -> Vec<StabilizerClass> {
        match self {
            ClassFilter::XPlus => vec![StabilizerClass::XPlus],
            ClassFilter::XMinus => vec![StabilizerClass::XMinus],
            ClassFilter::YPlus => vec![StabilizerClass::YPlus],
            ClassFilter::All => StabilizerClass::STABLE.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Binomial,
    PrintedShifted,
}

impl From<VariantArg> for CoefficientVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Binomial => CoefficientVariant::Binomial,
            VariantArg::PrintedShifted => CoefficientVariant::PrintedShifted,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a state given as K<n>^<m1,m2,...>.
    Classify { state: String },
    /// List the stable states on n qubits.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = ClassFilter::All)]
        class: ClassFilter,
    },
    /// Count X_PLUS states for each n in a range and compare with 2^⌊n/2⌋ - 1.
    Count {
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 16)]
        to: usize,
    },
    /// Check the classification of one state, or of all states up to --max-n, against the dense oracle.
    Verify {
        state: Option<String>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Quantum value and classical maximum of the Mermin operator.
    Mermin {
        state: String,
        /// Random restarts when the variable count exceeds the exhaustive cap.
        #[arg(long, default_value_t = nonlocality::DEFAULT_RESTARTS)]
        budget: usize,
        #[arg(long, default_value_t = nonlocality::EXHAUSTIVE_CAP)]
        exhaustive_cap: usize,
    },
    /// Collective-error code built on the state.
    Qec { state: String },
    /// Reduced state after tracing out the first k qubits.
    Trace {
        state: String,
        #[arg(long, short)]
        k: usize,
    },
    /// Recover a state from the first column of a reduced matrix.
    Recover {
        /// JSON array `[v_0, ..., v_{n-k}]` of numbers or `"p/q"` strings.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        n: usize,
        #[arg(long, short)]
        k: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Binomial)]
        variant: VariantArg,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

#[derive(Debug, Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
    exit_code: i32,
}

fn parse_state(text: &str) -> Result<CardinalityVector> {
    let k: CardinalityVector = text.parse()?;
    if k.is_edgeless() {
        return Err(Error::Parse(format!("{text:?} has no hyperedge levels")));
    }
    Ok(k)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re + 0.0, z.im + 0.0])
}

fn alpha_json(a: &qec::Alpha) -> Value {
    Value::Array(
        a.iter()
            .map(|row| Value::Array(row.iter().map(|&z| complex_json(z)).collect()))
            .collect(),
    )
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<RunReport> {
    let start = Instant::now();
    let g = &cli.global;
    let (name, inputs, results) = match &cli.command {
        Command::Classify { state } => ("classify", json!({ "state": state }), cmd_classify(state)?),
        Command::Enumerate { n, class } => (
            "enumerate",
            json!({ "n": n, "class": format!("{class:?}") }),
            cmd_enumerate(*n, *class)?,
        ),
        Command::Count { from, to } => ("count", json!({ "from": from, "to": to }), cmd_count(*from, *to)?),
        Command::Verify { state, max_n } => (
            "verify",
            json!({ "state": state, "max_n": max_n, "oracle": g.oracle }),
            cmd_verify(state.as_deref(), *max_n, g.oracle)?,
        ),
        Command::Mermin {
            state,
            budget,
            exhaustive_cap,
        } => (
            "mermin",
            json!({ "state": state, "budget": budget, "exhaustive_cap": exhaustive_cap, "seed": g.seed }),
            cmd_mermin(
                state,
                SearchBudget {
                    exhaustive_cap: *exhaustive_cap,
                    restarts: *budget,
                    seed: g.seed,
                },
            )?,
        ),
        Command::Qec { state } => ("qec", json!({ "state": state }), cmd_qec(state)?),
        Command::Trace { state, k } => (
            "trace",
            json!({ "state": state, "k": k, "oracle": g.oracle }),
            cmd_trace(state, *k, g.oracle)?,
        ),
        Command::Recover { v, n, k, variant } => (
            "recover",
            json!({ "v": v, "n": n, "k": k, "variant": CoefficientVariant::from(*variant) }),
            cmd_recover(v, *n, *k, (*variant).into())?,
        ),
    };
    Ok(RunReport {
        command: name.into(),
        inputs,
        results,
        version: VERSION.into(),
        timing_ms: g.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

pub fn cmd_classify(text: &str) -> Result<Value> {
    let k = parse_state(text)?;
    let direct = classify(&k);
    let recursive = classify_recursive(&k);
    if direct != recursive {
        return Err(Error::Consistency(format!(
            "{k}: palindrome test gives {direct}, recursion gives {recursive}"
        )));
    }
    let palindromes: serde_json::Map<String, Value> = Palindrome::ALL
        .iter()
        .map(|&p| (format!("{p:?}"), Value::Bool(check_palindrome(&k, p))))
        .collect();
    Ok(json!({
        "state": k.to_string(),
        "class": direct,
        "recursive": recursive,
        "agree": true,
        "word": PauliWord::for_class(direct, k.n()),
        "base": (k.k() == 1).then(|| classify_base(k.n(), k.m()[0])),
        "sign_vector": sign_vector(&k).entries(),
        "palindromes": palindromes,
    }))
}

pub fn cmd_enumerate(n: usize, filter: ClassFilter) -> Result<Value> {
    let mut out = serde_json::Map::new();
    for class in filter.classes() {
        let states: Vec<String> = enumerate_stable(n, class)?.iter().map(|k| k.to_string()).collect();
        out.insert(class.tag().into(), json!(states));
    }
    Ok(Value::Object(out))
}

pub fn cmd_count(from: usize, to: usize) -> Result<Value> {
    if from == 0 || from > to {
        return Err(Error::Precondition(format!("bad range {from}..={to}")));
    }
    if to > ENUMERATION_CAP {
        return Err(Error::ResourceLimit {
            what: "n",
            limit: ENUMERATION_CAP,
            requested: to,
        });
    }
    let mut rows = Vec::new();
    for n in from..=to {
        let counts: Vec<usize> = StabilizerClass::STABLE
            .iter()
            .map(|&c| enumerate_stable(n, c).map(|v| v.len()))
            .collect::<Result<_>>()?;
        let predicted = predicted_x_plus_count(n);
        rows.push(json!({
            "n": n,
            "x_plus": counts[0],
            "x_minus": counts[1],
            "y_plus": counts[2],
            "predicted_x_plus": predicted,
            "matches": counts[0] as u64 == predicted,
        }));
    }
    if let Some(bad) = rows.iter().find(|r| r["matches"] == false) {
        return Err(Error::Consistency(format!("X_PLUS count differs from 2^⌊n/2⌋ - 1: {bad}")));
    }
    Ok(json!({ "rows": rows }))
}

/// Dense verdicts for one state: which class words fix it, and (small `n`)
/// every local Pauli stabilizer.
fn dense_verdict(k: &CardinalityVector) -> Result<(Vec<StabilizerClass>, Option<Vec<PauliWord>>)> {
    let psi = statevec::build_symmetric_state(k)?;
    let fixed = StabilizerClass::STABLE
        .into_iter()
        .filter(|&c| statevec::is_stabilized(&PauliWord::for_class(c, k.n()).unwrap(), &psi))
        .collect();
    let search = (k.n() <= statevec::SEARCH_CAP)
        .then(|| statevec::search_local_pauli_stabilizers(&psi))
        .transpose()?;
    Ok((fixed, search))
}

pub fn cmd_verify(state: Option<&str>, max_n: Option<usize>, oracle: Oracle) -> Result<Value> {
    match (state, max_n) {
        (Some(text), None) => {
            let k = parse_state(text)?;
            let class = classify(&k);
            if oracle.symbolic() && classify_recursive(&k) != class {
                return Err(Error::Consistency(format!("{k}: recursion disagrees with palindromes")));
            }
            let mut out = json!({ "state": k.to_string(), "class": class });
            if oracle.dense() {
                let (fixed, search) = dense_verdict(&k)?;
                let expected: Vec<StabilizerClass> = class.is_stable().then_some(class).into_iter().collect();
                if fixed != expected {
                    return Err(Error::Consistency(format!(
                        "{k}: classified {class}, dense oracle fixed by {fixed:?}"
                    )));
                }
                out["stabilized_by"] = to_value(&fixed);
                if let Some(words) = search {
                    out["local_pauli_stabilizers"] = to_value(&words);
                }
            }
            Ok(out)
        }
        (None, Some(max_n)) => {
            if max_n > VERIFY_DENSE_CAP && oracle.dense() {
                return Err(Error::ResourceLimit {
                    what: "max_n (dense verify)",
                    limit: VERIFY_DENSE_CAP,
                    requested: max_n,
                });
            }
            let states: Vec<CardinalityVector> = (1..=max_n).flat_map(all_nonempty).collect();
            let mismatches: Vec<String> = states
                .par_iter()
                .map(|k| -> Result<Option<String>> {
                    let class = classify(k);
                    if oracle.symbolic() && classify_recursive(k) != class {
                        return Ok(Some(format!("{k}: recursion")));
                    }
                    if oracle.dense() {
                        let psi = statevec::build_symmetric_state(k)?;
                        for c in StabilizerClass::STABLE {
                            let w = PauliWord::for_class(c, k.n()).unwrap();
                            if statevec::is_stabilized(&w, &psi) != (c == class) {
                                return Ok(Some(format!("{k}: {c}")));
                            }
                        }
                    }
                    Ok(None)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            if !mismatches.is_empty() {
                return Err(Error::Consistency(format!("mismatches: {}", mismatches.join("; "))));
            }
            Ok(json!({ "max_n": max_n, "checked": states.len(), "mismatches": 0 }))
        }
        _ => Err(Error::Precondition("give either a state or --max-n".into())),
    }
}

pub fn cmd_mermin(text: &str, budget: SearchBudget) -> Result<Value> {
    let k = parse_state(text)?;
    let report = nonlocality::classical_max(&k, budget)?;
    let mut out = to_value(&report);
    out["state"] = json!(k.to_string());
    Ok(out)
}

pub fn cmd_qec(text: &str) -> Result<Value> {
    let k = parse_state(text)?;
    let code = qec::build_code(&k)?;
    let kl = qec::knill_laflamme(&code)?;
    if !kl.passes() {
        return Err(Error::Consistency(format!(
            "Knill-Laflamme check failed for {k} (residual {:.3e}, hermitian {})",
            kl.max_residual, kl.hermitian
        )));
    }
    let structure = qec::lemma9_checks(&code)?;
    if !structure.all() {
        return Err(Error::Consistency(format!("structural checks failed for {k}: {structure:?}")));
    }
    let n = k.n();
    let reference = qec::reference_alpha_table(code.class(), n).unwrap();
    let corrected = qec::corrected_alpha_table(code.class(), n).unwrap();
    Ok(json!({
        "state": k.to_string(),
        "class": code.class(),
        "knill_laflamme": true,
        "max_residual": kl.max_residual,
        "alpha": alpha_json(&kl.alpha),
        "reference_table_match": qec::alpha_distance(&kl.alpha, &reference) < qec::QEC_TOL,
        "hermitian_table_match": qec::alpha_distance(&kl.alpha, &corrected) < qec::QEC_TOL,
        "structure": structure,
    }))
}

pub fn cmd_trace(text: &str, k: usize, oracle: Oracle) -> Result<Value> {
    let state = parse_state(text)?;
    let mix = recovery::trace_mixture(&state, k)?;
    let column: Vec<String> = recovery::first_column_exact(&mix).iter().map(|r| r.to_string()).collect();
    let mut out = json!({
        "state": state.to_string(),
        "k": k,
        "mixture": mix,
        "first_column": column,
    });
    if oracle.dense() && state.n() <= TRACE_DENSE_CAP {
        let psi = statevec::build_symmetric_state(&state)?;
        let traced: Vec<usize> = (1..=k).collect();
        let dense = statevec::reduced_density_matrix(&psi, &traced)?;
        let diff = statevec::max_abs_diff(&dense, &mix.density()?);
        if diff >= statevec::OPERATOR_TOL {
            return Err(Error::Consistency(format!(
                "mixture for {state}, k = {k} differs from the dense partial trace by {diff:.3e}"
            )));
        }
        out["dense_max_abs_diff"] = json!(diff);
    }
    Ok(out)
}

pub fn cmd_recover(v: &str, n: usize, k: usize, variant: CoefficientVariant) -> Result<Value> {
    let values = parse_column(v)?;
    let f = recovery::reconstruct(&values, n, k, variant)?;
    let state = f.to_cardinalities()?;
    Ok(json!({
        "state": state.to_string(),
        "m": state.m(),
        "sign_vector": f.entries(),
    }))
}

/// A JSON array whose entries are numbers or exact fractions such as `"1/2"`.
fn parse_column(text: &str) -> Result<Vec<f64>> {
    let bad = |detail: String| Error::Parse(format!("--v must be a JSON array of numbers or \"p/q\" strings: {detail}"));
    let items: Vec<Value> = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    items
        .iter()
        .map(|item| match item {
            Value::Number(x) => x.as_f64().ok_or_else(|| bad(x.to_string())),
            Value::String(s) => s
                .parse::<Ratio<i64>>()
                .map(|r| *r.numer() as f64 / *r.denom() as f64)
                .map_err(|_| bad(format!("{s:?}"))),
            other => Err(bad(other.to_string())),
        })
        .collect()
}

fn human(report: &RunReport) -> String {
    let r = &report.results;
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match report.command.as_str() {
        "classify" => {
            line(format!("{}  {}", r["state"].as_str().unwrap_or(""), r["class"].as_str().unwrap_or("")));
            if let Some(w) = r["word"].as_str() {
                line(format!("stabilizer  {w}"));
            }
            line(format!("sign vector {}", r["sign_vector"]));
        }
        "enumerate" => {
            for (class, states) in r.as_object().into_iter().flatten() {
                let list: Vec<&str> = states.as_array().into_iter().flatten().filter_map(|s| s.as_str()).collect();
                line(format!("{class:<8} {:>4}  {}", list.len(), list.join(" ")));
            }
        }
        "count" => {
            line(format!("{:>3} {:>8} {:>8} {:>8} {:>10}", "n", "X_PLUS", "X_MINUS", "Y_PLUS", "predicted"));
            for row in r["rows"].as_array().into_iter().flatten() {
                line(format!(
                    "{:>3} {:>8} {:>8} {:>8} {:>10}",
                    row["n"], row["x_plus"], row["x_minus"], row["y_plus"], row["predicted_x_plus"]
                ));
            }
        }
        "verify" => {
            if let Some(checked) = r.get("checked") {
                line(format!("checked {checked} states up to n = {}: no mismatches", r["max_n"]));
            } else {
                line(format!("{}  {}", r["state"].as_str().unwrap_or(""), r["class"].as_str().unwrap_or("")));
                if let Some(words) = r.get("local_pauli_stabilizers") {
                    line(format!("local Pauli stabilizers {words}"));
                }
            }
        }
        "mermin" => {
            line(format!("{}  quantum {}  classical max {}", r["state"].as_str().unwrap_or(""), r["quantum"], r["classical_max"]));
            line(format!(
                "variables {}  {}  violation {}",
                r["variables"],
                if r["exhaustive"] == true { "exhaustive" } else { "randomized" },
                r["violation"]
            ));
        }
        "qec" => {
            line(format!("{}  {}  Knill-Laflamme pass", r["state"].as_str().unwrap_or(""), r["class"].as_str().unwrap_or("")));
            for row in r["alpha"].as_array().into_iter().flatten() {
                let cells: Vec<String> = row
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|z| format_complex(z[0].as_f64().unwrap_or(0.0), z[1].as_f64().unwrap_or(0.0)))
                    .collect();
                line(format!("  [{}]", cells.join(", ")));
            }
            line(format!("reference table match {}", r["reference_table_match"]));
        }
        "trace" => {
            for t in r["mixture"]["terms"].as_array().into_iter().flatten() {
                line(format!(
                    "{:>6}  {}{}",
                    t["weight"].as_str().unwrap_or(""),
                    if t["sign_flag"] == -1 { "-" } else { "" },
                    serde_json::from_value::<CardinalityVector>(t["state"].clone())
                        .map_or_else(|_| t["state"].to_string(), |k| k.to_string())
                ));
            }
            line(format!("first column {}", r["first_column"]));
        }
        "recover" => line(format!("{}  sign vector {}", r["state"].as_str().unwrap_or(""), r["sign_vector"])),
        _ => line(r.to_string()),
    }
    if let Some(ms) = report.timing_ms {
        line(format!("({ms:.1} ms)"));
    }
    out
}

fn format_complex(re: f64, im: f64) -> String {
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        _ => format!("{re}{im:+}i"),
    }
}

/// Parses `args`, runs the command, prints the result and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: could not configure {t} threads: {e}");
        }
    }
    match execute(&cli) {
        Ok(report) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", human(&report));
            }
            0
        }
        Err(err) => {
            let code = err.exit_code();
            if cli.global.json {
                let body = ErrorReport {
                    error: ErrorBody {
                        code: err.code(),
                        message: err.to_string(),
                        exit_code: code,
                    },
                };
                println!("{}", serde_json::to_string_pretty(&body).expect("error serializes"));
            } else {
                eprintln!("error: {err}");
            }
            code
        }
    }
}
