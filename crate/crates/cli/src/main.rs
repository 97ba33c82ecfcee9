//! srp-verify: run verification suites and emit exact coefficient tables.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed,
//! 2 configuration or I/O error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use srp_forms::report::CheckStatus;
use srp_forms::suites::{self, RunConfig};
use srp_forms::tables::{self, TableFormat, TableKind};
use srp_forms::PrecisionContext;

#[derive(Parser)]
#[command(
    name = "srp-verify",
    about = "Verification harness for reciprocal-sum partition statistics and their modular completions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite and write a structured report.
    Run {
        /// Suite: exact, modularity, shadow, eigenvalue, limit, example,
        /// twisted, or all.
        #[arg(long, default_value = "all", env = "SRP_VERIFY_SUITE")]
        suite: String,
        /// Target precision in bits.
        #[arg(long, default_value_t = 192, env = "SRP_VERIFY_PREC")]
        prec: u32,
        /// Series truncation order override (0 = automatic).
        #[arg(long, default_value_t = 0, env = "SRP_VERIFY_ORDER")]
        order: usize,
        /// Fourier cutoff override (0 = automatic).
        #[arg(long, default_value_t = 0, env = "SRP_VERIFY_CUTOFF")]
        cutoff: usize,
        /// Relative stencil step (0 = automatic).
        #[arg(long, default_value_t = 0.0, env = "SRP_VERIFY_STEP")]
        step: f64,
        /// JSON file with sample points: an array of [u, v] pairs.
        #[arg(long, env = "SRP_VERIFY_POINTS")]
        points: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long, env = "SRP_VERIFY_OUT")]
        out: Option<PathBuf>,
        /// Report format: json or csv.
        #[arg(long, default_value = "json", env = "SRP_VERIFY_FORMAT")]
        format: String,
        /// Also run the slow direct spectral-limit check.
        #[arg(long, env = "SRP_VERIFY_SLOW")]
        slow: bool,
    },
    /// Emit an exact coefficient table.
    Table {
        /// Table kind: s_k, g_k, srp3 or twisted.
        #[arg(long)]
        kind: String,
        /// k for s_k/g_k, the odd prime p for twisted; ignored for srp3.
        #[arg(long, default_value_t = 1)]
        param: u64,
        /// Highest power of q to tabulate.
        #[arg(long)]
        order: usize,
        /// Output format: csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List suites and registered check ids.
    List,
}

fn load_points(path: &PathBuf) -> Result<Vec<(f64, f64)>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    let pairs: Vec<(f64, f64)> =
        serde_json::from_str(&text).map_err(|e| format!("bad points file {path:?}: {e}"))?;
    if pairs.is_empty() {
        return Err(format!("points file {path:?} is empty"));
    }
    Ok(pairs)
}

fn run_command(cmd: Command) -> Result<u8, String> {
    match cmd {
        Command::Run {
            suite,
            prec,
            order,
            cutoff,
            step,
            points,
            out,
            format,
            slow,
        } => {
            let mut ctx = PrecisionContext::new(prec).map_err(|e| e.to_string())?;
            ctx.order = order;
            ctx.cutoff = cutoff;
            ctx.step = step;
            let points = match points {
                Some(path) => load_points(&path)?,
                None => suites::default_points(),
            };
            let cfg = RunConfig { ctx, points, slow };
            let report = suites::run_suite(&suite, &cfg).map_err(|e| e.to_string())?;

            for check in &report.checks {
                let status = match check.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skipped => "skip",
                };
                eprintln!("{status}  {}  ({} ms)", check.id, check.runtime_ms);
            }
            eprintln!(
                "suite {}: {} passed, {} failed, {} skipped",
                report.suite, report.summary.pass, report.summary.fail, report.summary.skipped
            );

            let rendered = match format.as_str() {
                "json" => report.to_json(),
                "csv" => report.to_csv(),
                other => return Err(format!("unknown report format `{other}`")),
            };
            match out {
                Some(path) => {
                    fs::write(&path, rendered).map_err(|e| format!("cannot write {path:?}: {e}"))?
                }
                None => println!("{rendered}"),
            }
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Table {
            kind,
            param,
            order,
            format,
            out,
        } => {
            let kind = TableKind::from_str(&kind).map_err(|e| e.to_string())?;
            let format = TableFormat::from_str(&format).map_err(|e| e.to_string())?;
            if tables::beyond_oracle_range(order) {
                eprintln!(
                    "note: order {order} is beyond the comfortable brute-force range (~{})",
                    srp_forms::arith::ORACLE_RECOMMENDED_MAX
                );
            }
            let mut buf = Vec::new();
            tables::emit_table(kind, param, order, format, &mut buf).map_err(|e| e.to_string())?;
            match out {
                Some(path) => {
                    fs::write(&path, buf).map_err(|e| format!("cannot write {path:?}: {e}"))?
                }
                None => print!("{}", String::from_utf8_lossy(&buf)),
            }
            Ok(0)
        }
        Command::List => {
            println!("suites:");
            for s in suites::SUITE_NAMES {
                println!("  {s}");
            }
            println!("checks:");
            for id in suites::check_ids() {
                println!("  {id}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
