//! `hankel`: evaluate, compare and tabulate Hankel transforms from the
//! command line. JSON goes to stdout, diagnostics to stderr.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hankel_core::{
    compare, compare_case, hankel_series, hankel_series_barred, verify_case, CaseId, CaseParams,
    CompareOptions, ComparisonReport, CorpusCase, Error, ExpansionOutcome, ExpansionRequest, ModeRequest,
    QuadratureOptions, SeedParams, SeriesOptions, Status, TaylorSeed, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "hankel", version, about = "Reciprocal-power series for Hankel transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one transform with the series engine.
    Transform(TransformArgs),
    /// Evaluate with the series, the quadrature oracle and the closed form, and compare.
    Compare(CompareArgs),
    /// Tabulate the series over a grid of q.
    Table(TableArgs),
    /// Run every corpus case and its identity checks.
    VerifyCorpus(VerifyArgs),
}

/// What to transform: a corpus case, or an explicit order and seed.
#[derive(Args, Clone)]
struct Selection {
    /// Corpus case id (Ex1..Ex8, Remark2); sets order and seed.
    #[arg(long = "case")]
    case: Option<String>,
    /// Transform order, at least -1.
    #[arg(long, allow_negative_numbers = true)]
    order: Option<i32>,
    /// Seed id: exp, power-exp, exp-i0, pole, pole-squared, bessel-product, inv-exp, barred:<id>, deriv:<id>.
    #[arg(long)]
    func: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Convergent,
    Asymptotic,
}

#[derive(Args, Clone)]
struct SeriesFlags {
    #[arg(long, value_enum, default_value = "auto")]
    mode: Mode,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 500)]
    max_terms: usize,
}

#[derive(Args, Clone)]
struct OracleFlags {
    /// Panel cap for the quadrature oracle.
    #[arg(long, default_value_t = 200)]
    max_panels: usize,
    /// Number of trailing panel sums kept for extrapolation.
    #[arg(long, default_value_t = 40)]
    window: usize,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    selection: Selection,
    #[arg(long, allow_negative_numbers = true)]
    q: f64,
    #[command(flatten)]
    series: SeriesFlags,
    /// Include every summed term in the output.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    selection: Selection,
    #[arg(long, allow_negative_numbers = true)]
    q: f64,
    #[command(flatten)]
    series: SeriesFlags,
    #[command(flatten)]
    oracle: OracleFlags,
    #[arg(long, default_value_t = 1e-8)]
    target_err: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    selection: Selection,
    #[arg(long)]
    q_min: f64,
    #[arg(long)]
    q_max: f64,
    #[arg(long)]
    steps: usize,
    /// Space the grid geometrically.
    #[arg(long)]
    log: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    series: SeriesFlags,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1e-8)]
    target_err: f64,
    /// Comma-separated case ids; all cases when omitted.
    #[arg(long, value_delimiter = ',')]
    cases: Vec<String>,
    #[command(flatten)]
    oracle: OracleFlags,
}

/// A failed command and its exit code.
enum Failure {
    Usage(String),
    Library(Error),
    /// The command ran but a comparison did not pass.
    Verdict { code: u8 },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownId(_) => 1,
        e if e.is_convergence_failure() => 3,
        Error::EvaluationFailure { .. } => 3,
        _ => 2,
    }
}

type CmdResult = Result<(), Failure>;

impl SeriesFlags {
    fn options(&self, trace: bool) -> SeriesOptions {
        SeriesOptions {
            tol: self.tol,
            max_terms: self.max_terms,
            mode: match self.mode {
                Mode::Auto => ModeRequest::Auto,
                Mode::Convergent => ModeRequest::Convergent,
                Mode::Asymptotic => ModeRequest::Asymptotic,
            },
            trace,
        }
    }
}

impl OracleFlags {
    fn options(&self) -> QuadratureOptions {
        QuadratureOptions {
            max_panels: self.max_panels,
            window: self.window,
            ..QuadratureOptions::default()
        }
    }
}

enum Target {
    Case(CorpusCase),
    Seed { order: i32, seed: TaylorSeed },
}

impl Selection {
    fn params(&self) -> SeedParams {
        SeedParams {
            a: self.a,
            b: self.b,
            c: self.c,
            n: self.n,
        }
    }

    fn resolve(&self) -> Result<Target, Failure> {
        let usage = |e: Error| Failure::Usage(e.to_string());
        match (&self.case, self.order, &self.func) {
            (Some(id), None, None) => {
                let id: CaseId = id.parse().map_err(usage)?;
                let params = CaseParams::with_overrides(id, &self.params());
                Ok(Target::Case(CorpusCase::new(id, params).map_err(usage)?))
            }
            (None, Some(order), Some(func)) => {
                let seed = TaylorSeed::from_id(func, self.params()).map_err(usage)?;
                Ok(Target::Seed { order, seed })
            }
            (Some(_), _, _) => Err(Failure::Usage("--case cannot be combined with --order/--func".into())),
            _ => Err(Failure::Usage("give either --case or both --order and --func".into())),
        }
    }
}

impl Target {
    fn series(&self, q: f64, opts: &SeriesOptions) -> hankel_core::Result<ExpansionOutcome> {
        match self {
            Target::Case(case) => case.series(q, opts),
            Target::Seed { order, seed } => {
                if seed.is_barred() {
                    if *order != 0 {
                        return Err(Error::Parameter {
                            function: "transform",
                            detail: format!("barred seeds give order 0 only, not {order}"),
                        });
                    }
                    hankel_series_barred(seed, q, opts)
                } else {
                    hankel_series(&ExpansionRequest::new(*order, seed.clone(), q).with_options(*opts))
                }
            }
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("serializable output");
    println!("{text}");
}

#[derive(Serialize)]
struct TransformOutput {
    value: f64,
    terms_used: usize,
    mode_used: &'static str,
    error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<f64>>,
}

fn warn_flags(out: &ExpansionOutcome) {
    if out.demoted {
        eprintln!("warning: convergent summation ran out of terms; value is optimally truncated");
    }
    if out.near_radius {
        eprintln!("warning: q is close to the convergence radius; convergence is slow");
    }
}

fn cmd_transform(args: &TransformArgs) -> CmdResult {
    let target = args.selection.resolve()?;
    let out = target.series(args.q, &args.series.options(args.trace))?;
    warn_flags(&out);
    print_json(&TransformOutput {
        value: out.value,
        terms_used: out.terms_used,
        mode_used: out.mode_used.as_str(),
        error_estimate: out.error_estimate,
        terms: out.term_trace.map(|t| t.into_iter().map(|e| e.term).collect()),
    });
    Ok(())
}

/// Exit code for a report that did not pass: 3 when the failure came from
/// an iteration budget, 2 otherwise.
fn verdict_code(report: &ComparisonReport) -> u8 {
    const BUDGET: [&str; 3] = ["NonConvergence", "ConvergenceFailure", "AccuracyNotReached"];
    if report.diagnostics.iter().any(|d| BUDGET.iter().any(|k| d.contains(k))) {
        3
    } else {
        2
    }
}

fn cmd_compare(args: &CompareArgs) -> CmdResult {
    let opts = CompareOptions {
        target_err: args.target_err,
        series: args.series.options(false),
        quadrature: args.oracle.options(),
    };
    let report = match args.selection.resolve()? {
        Target::Case(case) => compare_case(&case, args.q, &opts),
        Target::Seed { order, seed } => compare(order, &seed, args.q, None, &opts),
    };
    for d in &report.diagnostics {
        eprintln!("{d}");
    }
    print_json(&report);
    if report.status == Status::Fail {
        return Err(Failure::Verdict {
            code: verdict_code(&report),
        });
    }
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    q: f64,
    value: Option<f64>,
    mode: Option<&'static str>,
    error_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn grid(q_min: f64, q_max: f64, steps: usize, log: bool) -> Vec<f64> {
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            let t = i as f64 / last as f64;
            match i {
                0 => q_min,
                i if i == last => q_max,
                _ if log => q_min * (q_max / q_min).powf(t),
                _ => q_min + (q_max - q_min) * t,
            }
        })
        .collect()
}

fn csv_number(x: Option<f64>) -> String {
    x.filter(|v| v.is_finite())
        .map(|v| serde_json::to_string(&v).expect("finite float"))
        .unwrap_or_default()
}

fn cmd_table(args: &TableArgs) -> CmdResult {
    if args.steps < 2 {
        return Err(Failure::Usage("--steps must be at least 2".into()));
    }
    if !(args.q_min.is_finite() && args.q_max.is_finite() && args.q_min > 0.0 && args.q_max > args.q_min) {
        return Err(Failure::Usage("need 0 < --q-min < --q-max".into()));
    }
    let target = args.selection.resolve()?;
    let opts = args.series.options(false);
    let rows: Vec<TableRow> = grid(args.q_min, args.q_max, args.steps, args.log)
        .into_par_iter()
        .map(|q| match target.series(q, &opts) {
            Ok(out) => TableRow {
                q,
                value: Some(out.value),
                mode: Some(out.mode_used.as_str()),
                error_estimate: Some(out.error_estimate),
                error: None,
            },
            Err(e) => TableRow {
                q,
                value: None,
                mode: None,
                error_estimate: None,
                error: Some(e.kind().to_string()),
            },
        })
        .collect();

    let stdout = std::io::stdout();
    let mut w = std::io::BufWriter::new(stdout.lock());
    let io = |e: std::io::Error| Failure::Usage(format!("writing output: {e}"));
    match args.format {
        Format::Csv => {
            writeln!(w, "q,value,mode,error_estimate").map_err(io)?;
            for r in &rows {
                // rows the series rejects carry the error kind in the mode column
                let mode = r.mode.map(str::to_string).or_else(|| r.error.clone()).unwrap_or_default();
                writeln!(
                    w,
                    "{},{},{},{}",
                    csv_number(Some(r.q)),
                    csv_number(r.value),
                    mode,
                    csv_number(r.error_estimate)
                )
                .map_err(io)?;
            }
        }
        Format::Jsonl => {
            for r in &rows {
                writeln!(w, "{}", serde_json::to_string(r).expect("serializable row")).map_err(io)?;
            }
        }
    }
    w.flush().map_err(io)?;
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("q = {}: {}", r.q, r.error.as_deref().unwrap_or_default());
    }
    Ok(())
}

fn cmd_verify_corpus(args: &VerifyArgs) -> CmdResult {
    let cases = if args.cases.is_empty() {
        CaseId::ALL.to_vec()
    } else {
        args.cases
            .iter()
            .map(|s| s.trim().parse::<CaseId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::Usage(e.to_string()))?
    };
    let options = VerifyOptions {
        target_err: args.target_err,
        cases: cases.clone(),
        quadrature: args.oracle.options(),
        ..VerifyOptions::default()
    };
    let summaries = cases
        .par_iter()
        .map(|id| verify_case(&CorpusCase::with_defaults(*id), &options))
        .collect();
    let summary = hankel_core::verify::summarize(args.target_err, summaries);
    for case in summary.cases.iter().filter(|c| c.status == Status::Fail) {
        eprintln!("{}: fail", case.case);
    }
    print_json(&summary);
    if summary.all_pass {
        Ok(())
    } else {
        Err(Failure::Verdict { code: 2 })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Transform(a) => cmd_transform(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Table(a) => cmd_table(a),
        Command::VerifyCorpus(a) => cmd_verify_corpus(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {} ({e})", e.kind());
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Verdict { code }) => ExitCode::from(code),
    }
}
