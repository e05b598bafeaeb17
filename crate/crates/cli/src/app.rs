//! Argument parsing and exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use semieuclid::axioms::{run_checks, CheckConfig, CheckName, Verdict};
use semieuclid::Precision;

use crate::eval::evaluate;
use crate::figure::{figure_svg, panel_ids, FigureName, ANCHORS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "semieuclid", version, about = "Exact checks of plane geometry over L×L")]
pub struct Cli {
    /// Truncation order K: terms below e^K are kept.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(i64).range(4..))]
    pub order: i64,
    /// Maximum nesting of square roots inside coefficients.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub sqrt_depth: u32,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Sample count for sampled checks (default: per check).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run axiom checks: parallel, angle-sum, circumcircle, wallis, legendre,
    /// limiting-rays, archimedes, absolute, or all.
    Check {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Evaluate an expression in e, for example "sqrt(1 + e)" or
    /// "classify(1/e)".
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Render an SVG figure: parallel, circumcircle, wallis, legendre,
    /// limiting-rays, triangle.
    #[command(after_long_help = ANCHORS)]
    Figure {
        name: String,
        /// Positive rational factor for the SVG width and height.
        #[arg(long, default_value = "1", value_parser = parse_scale)]
        scale: f64,
    },
}

fn parse_scale(s: &str) -> Result<f64, String> {
    let q: BigRational = s.parse().map_err(|_| format!("not a rational number: {s}"))?;
    if !q.is_positive() {
        return Err("scale must be positive".into());
    }
    q.to_f64().ok_or_else(|| "scale out of range".into())
}

struct Output {
    text: String,
    code: i32,
}

/// Parses `args`, runs the command, writes to `stdout` (or `--out`) and
/// returns the exit code. Diagnostics go to stderr.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err((code, msg)) => {
            eprintln!("semieuclid: {msg}");
            return code;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("semieuclid: {e}");
        return EXIT_FAILURE;
    }
    out.code
}

fn run(cli: &Cli) -> Result<Output, (i32, String)> {
    let prec = Precision::new(cli.order, cli.sqrt_depth);
    match &cli.command {
        Command::Check { names } => check(cli, prec, names),
        Command::Eval { expr } => {
            let v = evaluate(expr, prec).map_err(|e| (if e.is_parse() { EXIT_USAGE } else { EXIT_FAILURE }, e.to_string()))?;
            let text = match cli.report {
                ReportFormat::Text => format!("{v}\n"),
                ReportFormat::Json => format!("{}\n", v.to_json()),
            };
            Ok(Output { text, code: EXIT_OK })
        }
        Command::Figure { name, scale } => {
            let f: FigureName = name.parse().map_err(|e: crate::figure::FigureError| (EXIT_USAGE, e.to_string()))?;
            let svg = figure_svg(f, prec, *scale).map_err(|e| (EXIT_FAILURE, e.to_string()))?;
            let text = match cli.report {
                ReportFormat::Text => svg,
                ReportFormat::Json => {
                    let v = serde_json::json!({ "figure": f.as_str(), "panels": panel_ids(f), "svg": svg });
                    format!("{v}\n")
                }
            };
            Ok(Output { text, code: EXIT_OK })
        }
    }
}

fn check(cli: &Cli, prec: Precision, names: &[String]) -> Result<Output, (i32, String)> {
    let mut list = Vec::new();
    for n in names {
        if n == "all" {
            list.extend(CheckName::ALL);
        } else {
            list.push(n.parse::<CheckName>().map_err(|e| (EXIT_USAGE, e.to_string()))?);
        }
    }
    let cfg = CheckConfig {
        precision: prec,
        seed: cli.seed,
        trials: cli.trials.map(|t| t as usize),
    };
    let mut text = String::new();
    let (mut indeterminate, mut failed) = (false, false);
    for (name, r) in list.iter().zip(run_checks(&list, &cfg)) {
        match r {
            Ok(r) => {
                indeterminate |= r.verdict == Verdict::Indeterminate;
                failed |= r.verdict != name.expected();
                match cli.report {
                    ReportFormat::Text => text.push_str(&format!("{r}\n")),
                    ReportFormat::Json => {
                        text.push_str(&serde_json::to_string(&r).expect("report serializes"));
                        text.push('\n');
                    }
                }
            }
            Err(e) => {
                failed = true;
                match cli.report {
                    ReportFormat::Text => text.push_str(&format!("{name}: error: {e}\n\n")),
                    ReportFormat::Json => {
                        let v = serde_json::json!({ "name": name.as_str(), "error": e.to_string() });
                        text.push_str(&format!("{v}\n"));
                    }
                }
            }
        }
    }
    let code = if indeterminate {
        EXIT_INDETERMINATE
    } else if failed {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    Ok(Output { text, code })
}
