//! Thin command-line front end; all logic lives in the library
//! (`ksum::harness` and friends).
//!
//! Exit codes: 0 = ran to completion (the decision is data in the JSON),
//! 2 = input error, 3 = space/budget abort, 1 = verification mismatch or
//! internal failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ksum::error::Error;
use ksum::generate::{Distribution, GenSpec};
use ksum::harness::{self, SolverChoice};
use ksum::instance_file;
use ksum::plan::SpaceBudget;
use ksum::types::Mode;

#[derive(Parser)]
#[command(name = "ksum", version, about = "Deterministic space-budgeted k-SUM toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded instance file.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value = "int")]
        mode: String,
        /// 1 = one list with distinct-index picks, 0 = one element per list.
        #[arg(long, default_value_t = 1)]
        single_list: u8,
        #[arg(long, default_value_t = 0)]
        target: i64,
        /// uniform | planted | boundary-adversarial
        #[arg(long, default_value = "uniform")]
        dist: String,
        #[arg(long, default_value_t = 1000)]
        range: i64,
        /// Reduction group count the boundary-adversarial layout targets.
        #[arg(long)]
        g: Option<usize>,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance file and print one JSON report.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "self-reduce")]
        solver: String,
        /// Base solver for self-reduce (auto picks by arity).
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        /// Hard auxiliary-word cap; crossing it aborts with exit code 3.
        #[arg(long)]
        space_cap: Option<u64>,
        /// Cross-check the decision against brute force (n <= verify-max-n).
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 64)]
        verify_max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a solver × n × g grid from a TOML config; CSV on stdout.
    Bench {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the planned tradeoff exponents for an arity range; CSV on stdout.
    Curve {
        #[arg(long, default_value_t = 4)]
        k_min: usize,
        #[arg(long, default_value_t = 12)]
        k_max: usize,
        /// linear | sqrt
        #[arg(long, default_value = "linear")]
        space: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve and cross-check against brute force; exit 1 on mismatch.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "self-reduce")]
        solver: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long, default_value_t = 64)]
        max_n: usize,
    },
}

fn write_out(out: Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Gen {
            seed,
            n,
            k,
            mode,
            single_list,
            target,
            dist,
            range,
            g,
            out,
        } => {
            let mode = match mode.as_str() {
                "int" => Mode::Int,
                "real" => Mode::Real,
                other => {
                    return Err(Error::InvalidParameter(format!("unknown mode {other:?}")))
                }
            };
            let spec = GenSpec {
                seed,
                n,
                k,
                single_list: single_list != 0,
                mode,
                target,
                range,
                dist: Distribution::parse(&dist, g)?,
            };
            let inst = ksum::generate::generate(&spec)?;
            write_out(out, &instance_file::write_any(&inst))?;
            Ok(0)
        }
        Cmd::Solve {
            file,
            solver,
            base,
            g,
            h,
            space_cap,
            verify,
            verify_max_n,
            out,
        } => {
            let inst = instance_file::read_instance_path(&file)?;
            let choice = SolverChoice { solver, base, g, h };
            let report = harness::run_solve_any_json(&inst, &choice, space_cap)?;
            write_out(out, &format!("{report}\n"))?;
            if verify {
                let outcome = harness::verify_against_oracle(&inst, &choice, verify_max_n)?;
                match outcome.matches {
                    Some(true) => eprintln!("verify: decision matches brute force"),
                    Some(false) => {
                        eprintln!(
                            "verify: MISMATCH (solver={}, oracle={})",
                            outcome.decision,
                            outcome.oracle_decision.unwrap()
                        );
                        return Ok(1);
                    }
                    None => eprintln!("verify: skipped (n > {verify_max_n})"),
                }
            }
            Ok(0)
        }
        Cmd::Bench { config, out } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg: harness::BenchConfig = toml::from_str(&text)
                .map_err(|e| Error::InvalidParameter(format!("bad bench config: {e}")))?;
            let mut buf = Vec::new();
            harness::run_bench(&cfg, &mut buf)?;
            write_out(out, std::str::from_utf8(&buf).expect("csv is utf8"))?;
            Ok(0)
        }
        Cmd::Curve {
            k_min,
            k_max,
            space,
            n,
            out,
        } => {
            let mut buf = Vec::new();
            harness::run_curve(k_min, k_max, SpaceBudget::parse(&space)?, n, &mut buf)?;
            write_out(out, std::str::from_utf8(&buf).expect("csv is utf8"))?;
            Ok(0)
        }
        Cmd::Verify {
            file,
            solver,
            base,
            g,
            h,
            max_n,
        } => {
            let inst = instance_file::read_instance_path(&file)?;
            let choice = SolverChoice { solver, base, g, h };
            let outcome = harness::verify_against_oracle(&inst, &choice, max_n)?;
            match outcome.matches {
                Some(true) => {
                    println!("match: decision={}", outcome.decision);
                    Ok(0)
                }
                Some(false) => {
                    println!(
                        "MISMATCH: solver={} oracle={}",
                        outcome.decision,
                        outcome.oracle_decision.unwrap()
                    );
                    Ok(1)
                }
                None => {
                    println!("skipped: n={} exceeds --max-n {max_n}", inst.n());
                    Ok(0)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::SpaceCapExceeded { .. } | Error::BudgetExceeded { .. } => 3,
                Error::Overflow
                | Error::Parse { .. }
                | Error::InvalidParameter(_)
                | Error::ModeMismatch { .. }
                | Error::UnsupportedArity { .. }
                | Error::Io(_)
                | Error::RankOutOfRange { .. } => 2,
            };
            ExitCode::from(code)
        }
    }
}
