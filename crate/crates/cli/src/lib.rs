//! The `valkit` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation failure,
//! 3 certification failure (a bound or check did not hold).

pub mod literal;
pub mod output;
pub mod plot;

use std::collections::HashMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use valkit_core::certify::{run_suite, CertConfig};
use valkit_core::cycle::{surd_period, DirectPath};
use valkit_core::modfunc::DEFAULT_N_MAX;
use valkit_core::words::{markov_boundary, TreeDump};
use valkit_core::{
    markov_tree, re_val, val_complex, CertReport, Error, ModularFunction, PeriodicWord, Precision,
    Suite, ValOptions, ValResult, Verdict,
};

use output::{big_number, to_json, Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;
pub const EXIT_CERTIFY: i32 = 3;

/// Default mantissa bits for `--precision extended`.
const DEFAULT_EXTENDED_BITS: usize = 128;
/// Slack allowed around the Markov spectrum bounds in `tree`.
const TREE_BOUND_TOL: f64 = 1e-3;

#[derive(Parser, Debug)]
#[command(name = "valkit", version, about = "Cycle-integral values of modular functions at quadratic irrationalities")]
pub struct Cli {
    /// Arc arithmetic: double, extended, or extended:BITS.
    #[arg(long, global = true, default_value = "double", value_parser = parse_precision)]
    precision: Precision,
    /// Output format; plot defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Number of stored coefficients of j.
    #[arg(long, global = true, default_value_t = DEFAULT_N_MAX)]
    n_max: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Value of f at a word or a quadratic irrationality.
    Val(ValArgs),
    /// Values over the Markov tree, checked against the boundary words.
    Tree(TreeArgs),
    /// Run a certification suite.
    Certify(CertifyArgs),
    /// Data for one figure, or a table of kernels.
    Plot(PlotArgs),
    /// Fourier coefficients of f.
    Coeffs(CoeffsArgs),
}

#[derive(Args, Debug)]
struct ValArgs {
    /// Word literal such as [1,2].
    #[arg(long, required_unless_present = "surd", conflicts_with = "surd")]
    word: Option<String>,
    /// Surd literal such as (1+1*sqrt(3))/2.
    #[arg(long)]
    surd: Option<String>,
    /// j, one, or a JSON file {name, pole_order, coefficients}.
    #[arg(long = "f", default_value = "j")]
    function: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
    method: MethodArg,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    Oracle,
    Both,
}

#[derive(Args, Debug)]
struct TreeArgs {
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long = "f", default_value = "j")]
    function: String,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// z, u, appendix, monotone or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Grid points per axis.
    #[arg(long, default_value_t = 512)]
    grid: usize,
    #[arg(long, default_value_t = 40)]
    refine_iters: usize,
    /// Also write the full reports as JSON to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Figure number, 1 to 11.
    #[arg(long, required_unless_present = "kernels", conflicts_with = "kernels")]
    figure: Option<u32>,
    /// Table of the kernels F, L, G, H, P, R, Z~, U~ instead of a figure.
    #[arg(long)]
    kernels: bool,
    /// Samples per axis.
    #[arg(long, default_value_t = 101)]
    points: usize,
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    /// Highest index n of c_n.
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n: usize,
    #[arg(long = "f", default_value = "j")]
    function: String,
}

fn parse_precision(s: &str) -> Result<Precision, String> {
    match s.split_once(':') {
        None if s == "double" => Ok(Precision::Double),
        None if s == "extended" => Ok(Precision::Extended {
            bits: DEFAULT_EXTENDED_BITS,
        }),
        Some(("extended", bits)) => {
            let bits: usize = bits.parse().map_err(|e| format!("bad bit count {bits:?}: {e}"))?;
            if !(53..=4096).contains(&bits) {
                return Err(format!("bit count {bits} outside 53..=4096"));
            }
            Ok(Precision::Extended { bits })
        }
        _ => Err(format!("expected double, extended or extended:BITS, got {s:?}")),
    }
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Compute(_) => EXIT_COMPUTE,
        }
    }
}

/// What a successful command prints, and its exit status.
struct Outcome {
    stdout: String,
    status: i32,
    message: Option<String>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            status: EXIT_OK,
            message: None,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(f) = configure_threads() {
        return report(f);
    }
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if !out.stdout.ends_with('\n') {
                println!();
            }
            if let Some(m) = out.message {
                eprintln!("{m}");
            }
            out.status
        }
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> i32 {
    match &f {
        Failure::Usage(m) => eprintln!("usage error: {m}"),
        Failure::Compute(m) => eprintln!("error: {m}"),
    }
    f.code()
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("VALKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("VALKIT_THREADS must be a positive integer, got {v:?}")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Val(a) => val(cli, a),
        Command::Tree(a) => tree(cli, a),
        Command::Certify(a) => certify(cli, a),
        Command::Plot(a) => plot(cli, a),
        Command::Coeffs(a) => coeffs(cli, a),
    }
}

fn render_table(t: &Table, format: Format) -> Result<String, Failure> {
    match format {
        Format::Csv => t.csv(),
        Format::Json => t.json(),
        Format::Plain => Ok(t.plain()),
    }
    .map_err(Failure::Compute)
}

fn json<T: Serialize>(x: &T) -> Result<String, Failure> {
    to_json(x).map_err(Failure::Compute)
}

#[derive(Deserialize)]
struct UserFunction {
    name: String,
    pole_order: usize,
    coefficients: Vec<Value>,
}

fn big_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

/// `j`, `one`, or a JSON file describing the function.
fn load_function(spec: &str, n_max: usize) -> Result<ModularFunction, Failure> {
    match spec {
        "j" => Ok(ModularFunction::j_with_terms(n_max)?),
        "one" => Ok(ModularFunction::one()),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read function file {path:?}: {e}")))?;
            let user: UserFunction =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let coeffs = user
                .coefficients
                .iter()
                .map(|c| big_from_json(c).ok_or_else(|| Failure::Usage(format!("{path}: coefficient {c} is not an integer"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ModularFunction::from_coefficients(&user.name, user.pole_order, coeffs)?)
        }
    }
}

#[derive(Serialize)]
struct ValOutput {
    input: String,
    word: PeriodicWord,
    /// A surd whose preperiod has odd length gets the conjugate value.
    conjugated: bool,
    function: String,
    precision: Precision,
    results: Vec<ValResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula_oracle_gap: Option<f64>,
}

fn val(cli: &Cli, a: &ValArgs) -> Result<Outcome, Failure> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", a.tol)));
    }
    let (input, word, conjugated) = match (&a.word, &a.surd) {
        (Some(w), _) => (w.clone(), literal::parse_word(w).map_err(Failure::Usage)?, false),
        (None, Some(s)) => {
            let x = literal::parse_surd(s).map_err(Failure::Usage)?;
            let (word, conj) = surd_period(&x)?;
            (s.clone(), word, conj)
        }
        (None, None) => return Err(Failure::Usage("one of --word or --surd is required".into())),
    };
    let f = load_function(&a.function, cli.n_max)?;
    let opts = ValOptions {
        tol: a.tol,
        precision: cli.precision,
    };
    let mut results = Vec::new();
    if a.method != MethodArg::Oracle {
        results.push(re_val(&f, &word, &opts)?);
    }
    if a.method != MethodArg::Formula {
        let mut r = val_complex(&f, &word, DirectPath::default(), a.tol)?;
        if conjugated {
            r.im_val = r.im_val.map(|v| -v);
        }
        results.push(r);
    }
    let formula_oracle_gap = (results.len() == 2).then(|| (results[0].re_val - results[1].re_val).abs());
    let out = ValOutput {
        input,
        word,
        conjugated,
        function: f.name().to_string(),
        precision: cli.precision,
        results,
        formula_oracle_gap,
    };
    let format = cli.format.unwrap_or(Format::Json);
    if format == Format::Json {
        return json(&out).map(Outcome::ok);
    }
    let mut t = Table::new(&["input", "word", "method", "re_val", "im_val", "log_epsilon", "error_estimate"]);
    for r in &out.results {
        t.push(vec![
            out.input.as_str().into(),
            out.word.to_string().into(),
            format!("{:?}", r.method).to_lowercase().into(),
            r.re_val.into(),
            r.im_val.map_or(Cell::Text(String::new()), Cell::Num),
            r.log_epsilon.into(),
            r.error_estimate.into(),
        ]);
    }
    render_table(&t, format).map(Outcome::ok)
}

#[derive(Serialize)]
struct TreeBounds {
    lower: f64,
    upper: f64,
    tolerance: f64,
}

#[derive(Serialize)]
struct TreeOutput {
    function: String,
    depth: usize,
    nodes: usize,
    bounds: TreeBounds,
    within_bounds: bool,
    violations: Vec<PeriodicWord>,
    tree: Option<TreeDump>,
}

fn tree(cli: &Cli, a: &TreeArgs) -> Result<Outcome, Failure> {
    let f = load_function(&a.function, cli.n_max)?;
    let tree = markov_tree(a.depth)?;
    let opts = ValOptions {
        precision: cli.precision,
        ..ValOptions::default()
    };
    let (lo_word, hi_word) = markov_boundary();
    let lo = re_val(&f, &lo_word, &opts)?.re_val;
    let hi = re_val(&f, &hi_word, &opts)?.re_val;
    let bounds = TreeBounds {
        lower: lo.min(hi),
        upper: lo.max(hi),
        tolerance: TREE_BOUND_TOL,
    };
    let values: Vec<f64> = tree
        .nodes()
        .par_iter()
        .map(|n| re_val(&f, &n.word, &opts).map(|r| r.re_val))
        .collect::<Result<_, _>>()?;
    let violations: Vec<PeriodicWord> = tree
        .nodes()
        .iter()
        .zip(&values)
        .filter(|(_, &v)| !(v >= bounds.lower - bounds.tolerance && v <= bounds.upper + bounds.tolerance))
        .map(|(n, _)| n.word.clone())
        .collect();
    let within_bounds = violations.is_empty();
    let format = cli.format.unwrap_or(Format::Json);
    let stdout = if format == Format::Json {
        let by_word: HashMap<&PeriodicWord, f64> = tree.nodes().iter().map(|n| &n.word).zip(values.iter().copied()).collect();
        let dump = tree.dump_with(|w| Ok(by_word.get(w).copied()))?;
        json(&TreeOutput {
            function: f.name().to_string(),
            depth: a.depth,
            nodes: tree.nodes().len(),
            bounds,
            within_bounds,
            violations: violations.clone(),
            tree: dump,
        })?
    } else {
        let mut t = Table::new(&["index", "depth", "parent", "word", "re_val"]);
        for (i, (n, &v)) in tree.nodes().iter().zip(&values).enumerate() {
            t.push(vec![
                i.to_string().into(),
                n.depth.to_string().into(),
                n.parent.map_or(String::new(), |p| p.to_string()).into(),
                n.word.to_string().into(),
                v.into(),
            ]);
        }
        render_table(&t, format)?
    };
    Ok(Outcome {
        stdout,
        status: if within_bounds { EXIT_OK } else { EXIT_CERTIFY },
        message: (!within_bounds).then(|| {
            format!(
                "{} tree values fall outside [{}, {}]",
                violations.len(),
                output::sig15(lo.min(hi)),
                output::sig15(lo.max(hi))
            )
        }),
    })
}

fn certify(cli: &Cli, a: &CertifyArgs) -> Result<Outcome, Failure> {
    let suite: Suite = a.suite.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    if a.grid < 2 {
        return Err(Failure::Usage(format!("--grid must be at least 2, got {}", a.grid)));
    }
    let cfg = CertConfig {
        grid: a.grid,
        refine_iters: a.refine_iters,
        ..CertConfig::default()
    };
    let reports: Vec<CertReport> = run_suite(suite, &cfg)?;
    let full = json(&reports)?;
    if let Some(path) = &a.json {
        std::fs::write(path, &full).map_err(|e| Failure::Compute(format!("cannot write {path:?}: {e}")))?;
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.task.as_str()).collect();
    let format = cli.format.unwrap_or(Format::Json);
    let stdout = if format == Format::Json {
        full
    } else {
        let opt = |v: Option<f64>| v.map_or(Cell::Text(String::new()), Cell::Num);
        let mut t = Table::new(&["task", "verdict", "value", "reference", "margin", "x", "t"]);
        for r in &reports {
            let verdict = match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::NoReference => "no-reference",
            };
            t.push(vec![
                r.task.as_str().into(),
                verdict.into(),
                r.value.into(),
                opt(r.reference.as_ref().map(|x| x.value)),
                r.margin.into(),
                opt(r.location.x),
                opt(r.location.t),
            ]);
        }
        render_table(&t, format)?
    };
    let ok = failed.is_empty();
    Ok(Outcome {
        stdout,
        status: if ok { EXIT_OK } else { EXIT_CERTIFY },
        message: (!ok).then(|| format!("failed: {}", failed.join(", "))),
    })
}

fn plot(cli: &Cli, a: &PlotArgs) -> Result<Outcome, Failure> {
    if a.points < 2 {
        return Err(Failure::Usage(format!("--points must be at least 2, got {}", a.points)));
    }
    let table = match a.figure {
        Some(n) if !plot::FIGURES.contains(&n) => {
            return Err(Failure::Usage(format!("no figure {n}; expected 1..=11")));
        }
        Some(n) => plot::figure(n, a.points)?,
        None => plot::kernel_table(a.points),
    };
    render_table(&table, cli.format.unwrap_or(Format::Csv)).map(Outcome::ok)
}

fn coeffs(cli: &Cli, a: &CoeffsArgs) -> Result<Outcome, Failure> {
    let f = if a.function == "j" {
        load_function("j", a.n)?
    } else {
        load_function(&a.function, cli.n_max)?
    };
    let rows: Vec<(i64, BigInt)> = f.coefficient_table().into_iter().filter(|(n, _)| *n <= a.n as i64).collect();
    let format = cli.format.unwrap_or(Format::Json);
    let stdout = match format {
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(n, c)| serde_json::json!({ "n": n, "c": big_number(&c.to_string()) }))
                .collect();
            let doc = serde_json::json!({
                "function": f.name(),
                "pole_order": f.pole_order(),
                "coefficients": list,
            });
            serde_json::to_string_pretty(&doc).map_err(|e| Failure::Compute(e.to_string()))?
        }
        _ => {
            let mut t = Table::new(&["n", "c"]);
            for (n, c) in &rows {
                t.push(vec![n.to_string().into(), c.to_string().into()]);
            }
            render_table(&t, format)?
        }
    };
    Ok(Outcome::ok(stdout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_flag() {
        assert_eq!(parse_precision("double").unwrap(), Precision::Double);
        assert_eq!(parse_precision("extended").unwrap(), Precision::Extended { bits: 128 });
        assert_eq!(parse_precision("extended:256").unwrap(), Precision::Extended { bits: 256 });
        assert!(parse_precision("extended:8").is_err());
        assert!(parse_precision("quad").is_err());
    }

    #[test]
    fn clap_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
