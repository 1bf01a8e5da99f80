//! Command-line surface: parameter validation, verification runs,
//! enumeration queries and structure dumps.
//!
//! Exit codes: 0 all selected checks pass, 1 at least one check fails,
//! 2 invalid input (including non-semisimple parameter points).

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use hecke_core::exactfield::parse_rational;
use hecke_core::seminormal::{Context, FaultInjection};
use hecke_core::verify::{check_ids, dim_audit, run_suite};
use hecke_core::{dump, HeckeError, HeckeParams};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact seminormal models of cyclotomic Hecke algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PointArgs {
    /// Number of cyclotomic parameters of the ambient algebra (r = p d)
    #[arg(long)]
    r: usize,
    /// Order of the twisting automorphism (must divide r)
    #[arg(long)]
    p: usize,
    /// Number of strands
    #[arg(long)]
    n: usize,
    /// Hecke parameter as a rational "a/b" (default 2)
    #[arg(long)]
    q: Option<String>,
    /// Cyclotomic parameters as comma-separated rationals "a/b" (default:
    /// the first d odd primes)
    #[arg(long = "Q", value_delimiter = ',')]
    big_q: Option<Vec<String>>,
    /// Override the size bound for oracle operations (also read from the
    /// HECKE_DESK_BOUND environment variable)
    #[arg(long)]
    desk_bound: Option<u128>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a parameter point.
    Params {
        #[command(flatten)]
        point: PointArgs,
        /// Run the semisimplicity check and report the witness on failure
        #[arg(long)]
        check: bool,
    },
    /// Run the verification suite and write a report.
    Verify {
        #[command(flatten)]
        point: PointArgs,
        /// Comma-separated check names (default: every check)
        #[arg(long, value_delimiter = ',')]
        scope: Option<Vec<String>>,
        /// Report format
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Deliberately corrupt one construction site before running, to
        /// confirm the suite notices (self-test)
        #[arg(long, value_parser = ["gamma-scale", "eps-power", "straighten", "drop-basis-factor", "parity-flip"])]
        inject_fault: Option<String>,
    },
    /// Dump computed structures as JSON.
    Dump {
        #[command(flatten)]
        point: PointArgs,
        /// One of: gamma, basis, idempotents, twisted-center, dims
        #[arg(long)]
        what: String,
        /// Write the dump here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the dimension audit record.
    Dims {
        #[command(flatten)]
        point: PointArgs,
    },
    /// List the available check names.
    Checks,
}

fn build_params(point: &PointArgs) -> Result<HeckeParams, HeckeError> {
    match (&point.q, &point.big_q) {
        (None, None) => HeckeParams::default_point(point.r, point.p, point.n),
        _ => {
            let defaults = HeckeParams::default_point(point.r, point.p, point.n)?;
            let q = match &point.q {
                Some(text) => parse_rational(text)?,
                None => parse_rational("2")?,
            };
            let qs = match &point.big_q {
                Some(texts) => texts
                    .iter()
                    .map(|t| parse_rational(t))
                    .collect::<Result<Vec<_>, _>>()?,
                None => defaults
                    .qs
                    .iter()
                    .map(|v| parse_rational(&v.to_strings()[0]))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let params = HeckeParams::new(point.r, point.p, point.n, q, qs)?;
            params.check_semisimple().map_err(HeckeError::NotSemisimple)?;
            Ok(params)
        }
    }
}

fn desk_bound(point: &PointArgs) -> u128 {
    point
        .desk_bound
        .or_else(|| std::env::var("HECKE_DESK_BOUND").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1000)
}

fn build_context(point: &PointArgs) -> Result<Context, HeckeError> {
    let params = build_params(point)?;
    Context::with_options(params, None, desk_bound(point))
}

fn emit(text: String, output: &Option<PathBuf>) -> Result<(), HeckeError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| HeckeError::InvalidParams(format!("cannot write {path:?}: {e}"))),
        None => {
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            Ok(())
        }
    }
}

fn run() -> Result<bool, HeckeError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Params { point, check } => {
            let params = build_params(&point)?;
            println!(
                "r={} p={} d={} n={} q={} Q=[{}]",
                params.r,
                params.p,
                params.d,
                params.n,
                params.q,
                params.qs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
            );
            if check {
                // build_params already ran the check for overridden points;
                // report explicitly either way
                params.check_semisimple().map_err(HeckeError::NotSemisimple)?;
                println!("semisimplicity check: pass");
            }
            Ok(true)
        }
        Command::Verify { point, scope, format, output, inject_fault } => {
            let fault = match inject_fault.as_deref() {
                None => None,
                Some("gamma-scale") => Some(FaultInjection::GammaScale),
                Some("eps-power") => Some(FaultInjection::EpsPowerDoubled),
                Some("straighten") => Some(FaultInjection::StraightenIdentity),
                Some("drop-basis-factor") => Some(FaultInjection::DropBasisCoefficientFactor),
                Some("parity-flip") => Some(FaultInjection::SquareRootParityFlip),
                Some(other) => {
                    return Err(HeckeError::InvalidParams(format!("unknown fault {other:?}")))
                }
            };
            let params = build_params(&point)?;
            let ctx = Context::with_options(params, fault, desk_bound(&point))?;
            let report = run_suite(&ctx, scope.as_deref())?;
            let text = match format.as_str() {
                "csv" => report.to_csv(),
                _ => serde_json::to_string_pretty(&report).expect("report serializes"),
            };
            emit(text, &output)?;
            if !report.all_passed {
                for check in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!(
                        "check failed: {} ({}): {}",
                        check.id,
                        check.description,
                        check
                            .counterexample
                            .as_ref()
                            .map(|v| v.to_string())
                            .unwrap_or_else(|| "no counterexample".into())
                    );
                }
            }
            Ok(report.all_passed)
        }
        Command::Dump { point, what, output } => {
            let ctx = build_context(&point)?;
            let value = match what.as_str() {
                "gamma" => dump::dump_gamma(&ctx)?,
                "basis" => dump::dump_basis(&ctx)?,
                "idempotents" => dump::dump_idempotents(&ctx)?,
                "twisted-center" => dump::dump_twisted_center(&ctx)?,
                "dims" => dump::dump_dims(&ctx)?,
                other => {
                    return Err(HeckeError::InvalidParams(format!(
                        "unknown dump target {other:?}; expected gamma, basis, idempotents, twisted-center or dims"
                    )))
                }
            };
            emit(serde_json::to_string_pretty(&value).expect("dump serializes"), &output)?;
            Ok(true)
        }
        Command::Dims { point } => {
            let ctx = build_context(&point)?;
            let audit = dim_audit(&ctx);
            println!("{}", serde_json::to_string_pretty(&audit).expect("audit serializes"));
            Ok(audit.consistent)
        }
        Command::Checks => {
            for id in check_ids() {
                println!("{id}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
