//! `dlaurent`: evaluate expressions in the Weyl algebra and in deformed
//! Laurent series rings, rebase onto completion generators, solve for
//! centralizer elements and run the identity suites.

mod eval;
mod expr;
mod verify;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dlaurent::completion::{centralizer_solve, make_generators, rebase};
use dlaurent::deformation::{make_spec, DeformationSpec};
use dlaurent::series::DeformedSeries;
use dlaurent::weyl::{embed, symbol_of_series, DegreeParams};
use dlaurent::{Rat, RatFun};
use serde_json::{json, Value};
use thiserror::Error;

use eval::{eval_series, eval_weyl, EvalError, Mode};
use expr::{parse, Expr, ParseError};

/// Schema version of the structured output.
const OUTPUT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "dlaurent", version, about = "Exact arithmetic in deformed Laurent series rings and the Weyl algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Exponent of T in the image of p (defaults to 1 outside `verify`).
    #[arg(long, global = true, allow_negative_numbers = true)]
    r: Option<i64>,

    /// Exponent of T in the image of q (defaults to 1 outside `verify`).
    #[arg(long, global = true, allow_negative_numbers = true)]
    s: Option<i64>,

    /// Weight of p in the degree map on the Weyl algebra.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    rho: String,

    /// Weight of q in the degree map on the Weyl algebra.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    sigma: String,

    /// Results are exact above T^floor.
    #[arg(long, global = true, default_value_t = -12, allow_negative_numbers = true)]
    floor: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Weyl,
    Series,
    Embed,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Weyl)]
        mode: ModeArg,
    },
    /// Map a Weyl algebra expression into the series ring.
    Embed {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Rewrite a series as a series in the completion generators T0, alpha0.
    Rebase {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Solve for the element with constant term b0 commuting with a
    /// degree-zero series.
    Centralize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Constant term of the solution, a rational function of alpha.
        #[arg(long, allow_hyphen_values = true)]
        b0: String,
    },
    /// Run the randomized identity suites.
    Verify {
        /// Suites to run; all of them by default.
        #[arg(long = "suite", value_enum)]
        suites: Vec<verify::Suite>,
        /// Random samples per suite and spec.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; the number of available cores by default.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error("{0} check(s) failed")]
    Verify(usize),
}

impl From<dlaurent::Error> for CliError {
    fn from(e: dlaurent::Error) -> Self {
        CliError::Eval(EvalError::Math(e))
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Eval(EvalError::AtomNotAllowed { .. }) => 2,
            CliError::Eval(_) | CliError::Verify(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Eval(EvalError::AtomNotAllowed { .. }) => "atom_not_allowed",
            CliError::Eval(EvalError::NegativeWeylExponent(_)) => "negative_weyl_exponent",
            CliError::Eval(EvalError::NotInvertible) => "not_invertible",
            CliError::Eval(EvalError::Math(e)) => match e {
                dlaurent::Error::DivisionByZero => "division_by_zero",
                dlaurent::Error::InvalidParameter(_) => "invalid_parameter",
                dlaurent::Error::SpecMismatch => "spec_mismatch",
                dlaurent::Error::PrecisionExhausted(_) => "precision_exhausted",
                dlaurent::Error::NotInCompletion { .. } => "not_in_completion",
                dlaurent::Error::NotSolvable(_) => "not_solvable",
                dlaurent::Error::Parse(_) => "parse",
            },
            CliError::Verify(_) => "verify_failed",
        }
    }
}

/// What a command prints: a text rendering and a structured document.
struct Output {
    text: String,
    structured: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    let result = run(cli);
    let (output, code) = match result {
        Ok(out) => (out, 0),
        Err((out, CliError::Verify(n))) => (out.expect("verify reports"), CliError::Verify(n).exit_code()),
        Err((_, err)) => {
            let code = err.exit_code();
            match format {
                Format::Text => eprintln!("error: {err}"),
                Format::Structured => {
                    let doc =
                        json!({"version": OUTPUT_VERSION, "error": {"kind": err.kind(), "message": err.to_string()}});
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
            }
            return ExitCode::from(code);
        }
    };
    match format {
        Format::Text => println!("{}", output.text),
        Format::Structured => {
            let mut doc = output.structured;
            doc["version"] = json!(OUTPUT_VERSION);
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    ExitCode::from(code)
}

type RunResult = Result<Output, (Option<Output>, CliError)>;

fn run(cli: Cli) -> RunResult {
    let g = &cli.global;
    match cli.command {
        Command::Verify { suites, samples, seed, threads } => run_verify(g, suites, samples, seed, threads),
        command => run_single(g, command).map_err(|e| (None, e)),
    }
}

fn run_single(g: &Global, command: Command) -> Result<Output, CliError> {
    match command {
        Command::Eval { expr, mode: ModeArg::Weyl } => {
            let e = parse(&expr)?;
            let params = DegreeParams::new(parse_rat("rho", &g.rho)?, parse_rat("sigma", &g.sigma)?)?;
            let z = eval_weyl(&e)?;
            let text = z.render();
            let terms: Vec<Value> = z.terms().iter().rev().map(|(&(i, j), c)| json!([i, j, c.to_string()])).collect();
            Ok(Output {
                structured: json!({
                    "command": "eval",
                    "mode": "weyl",
                    "input": e.to_string(),
                    "result": text,
                    "terms": terms,
                    "degree": {"rho": params.rho().to_string(), "sigma": params.sigma().to_string(), "value": params.v_degree(&z).to_string()},
                }),
                text,
            })
        }
        Command::Eval { expr, mode } => {
            let mode = if matches!(mode, ModeArg::Series) { Mode::Series } else { Mode::Embed };
            let e = parse(&expr)?;
            let z = eval_series(&e, mode, &spec(g)?, g.floor)?;
            let name = if mode == Mode::Series { "series" } else { "embed" };
            Ok(series_output("eval", name, &e, &z))
        }
        Command::Embed { expr } => {
            let e = parse(&expr)?;
            let w = eval_weyl(&e)?;
            let z = embed(&spec(g)?, &w, g.floor)?;
            let mut out = series_output("embed", "embed", &e, &z);
            out.structured["weyl"] = json!(w.render());
            out.structured["symbol"] = json!(symbol_of_series(&z).map(|s| s.to_string()).ok());
            Ok(out)
        }
        Command::Rebase { expr } => {
            let e = parse(&expr)?;
            let (r, s) = (g.r.unwrap_or(1), g.s.unwrap_or(1));
            let pair = make_generators(r, s, g.floor)?;
            let z = eval_series(&e, Mode::Embed, pair.spec(), g.floor)?;
            let rebased = rebase(&pair, &z)?;
            let text = rebased.render();
            Ok(Output {
                structured: json!({"command": "rebase", "input": e.to_string(), "result": text, "rebased": rebased.to_record()}),
                text,
            })
        }
        Command::Centralize { expr, b0 } => {
            let e = parse(&expr)?;
            let b0: RatFun = b0.parse().map_err(|err| CliError::Usage(format!("--b0: {err}")))?;
            let spec = spec(g)?;
            // the solver loses 1 − i₀ degrees of the input's precision
            let depth = 1 - spec.top_delta().unwrap_or(0);
            let z = eval_series(&e, Mode::Embed, &spec, g.floor - depth)?;
            let w = centralizer_solve(&z, &b0, g.floor)?;
            let mut out = series_output("centralize", "embed", &e, &w);
            out.structured["b0"] = json!(b0.to_string());
            Ok(out)
        }
        Command::Verify { .. } => unreachable!("handled by run"),
    }
}

fn run_verify(g: &Global, suites: Vec<verify::Suite>, samples: usize, seed: u64, threads: Option<usize>) -> RunResult {
    let specs = match (g.r, g.s) {
        (None, None) => verify::DEFAULT_SPECS.to_vec(),
        (r, s) => vec![(r.unwrap_or(1), s.unwrap_or(1))],
    };
    let mut suites = if suites.is_empty() { verify::Suite::value_variants().to_vec() } else { suites };
    suites.sort();
    suites.dedup();
    let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let outcomes = verify::run(&verify::Options { suites, specs, samples, seed, threads });
    let mut lines = Vec::new();
    let mut failed = 0;
    for o in &outcomes {
        let status = if o.passed() { "ok" } else { "FAILED" };
        let mut line = format!("{:<40} {:>5} checks  {status}", o.label(), o.checks);
        if let Some(note) = &o.note {
            line.push_str(&format!("  ({note})"));
        }
        lines.push(line);
        for f in &o.failures {
            lines.push(format!("    {f}"));
        }
        failed += o.failures.len() + usize::from(o.errored);
    }
    let out = Output {
        text: lines.join("\n"),
        structured: json!({
            "command": "verify",
            "seed": seed,
            "samples": samples,
            "results": outcomes.iter().map(verify::Outcome::to_json).collect::<Vec<_>>(),
        }),
    };
    if failed > 0 {
        Err((Some(out), CliError::Verify(failed)))
    } else {
        Ok(out)
    }
}

fn spec(g: &Global) -> Result<Arc<DeformationSpec>, CliError> {
    Ok(Arc::new(make_spec(g.r.unwrap_or(1), g.s.unwrap_or(1))?))
}

fn parse_rat(flag: &str, s: &str) -> Result<Rat, CliError> {
    s.trim().parse::<Rat>().map_err(|_| CliError::Usage(format!("--{flag}: '{s}' is not a rational number")))
}

fn series_output(command: &str, mode: &str, e: &Expr, z: &DeformedSeries) -> Output {
    let text = z.render();
    Output {
        structured: json!({
            "command": command,
            "mode": mode,
            "input": e.to_string(),
            "result": text,
            "series": z.to_record(),
        }),
        text,
    }
}
