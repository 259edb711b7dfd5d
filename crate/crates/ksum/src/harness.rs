//! Drivers shared by the CLI binary and the examples: build solvers by name,
//! run metered solves into reports, execute bench grids, emit planner curves,
//! and cross-check decisions against the brute-force oracle.

use std::io::Write;
use std::time::Instant;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::generate::{Distribution, GenSpec};
use crate::instance_file::AnyInstance;
use crate::meter::{Meter, TispReport};
use crate::plan::{plan_ksum, SpaceBudget};
use crate::reduce::{ceil_sqrt, GroupCount, SelfReduce};
use crate::solvers::{self, BruteForce, Solver};
use crate::types::{Instance, Mode, Numeric};

/// Solver selection as it arrives from flags or a bench config.
#[derive(Clone, Debug, Default)]
pub struct SolverChoice {
    /// `self-reduce`, a base-solver name, or a composite like
    /// `self-reduce(sorted-3sum)` / `bootstrap(schroeppel-shamir)`.
    pub solver: String,
    /// Base for `self-reduce` when not given inline; `auto` or empty picks
    /// by arity.
    pub base: Option<String>,
    /// Outer group count; defaults to ⌈√n⌉.
    pub g: Option<usize>,
    /// Inner group count for a second reduction stage.
    pub h: Option<usize>,
}

impl SolverChoice {
    pub fn named(solver: &str) -> Self {
        SolverChoice {
            solver: solver.to_string(),
            ..SolverChoice::default()
        }
    }
}

/// A solver ready to run, plus the g/h actually in effect (for reports).
pub struct BuiltSolver<V: Numeric> {
    pub solver: Box<dyn Solver<V>>,
    pub g: Option<u64>,
    pub h: Option<u64>,
}

fn resolve_base<V: Numeric>(name: Option<&str>, k: usize) -> Result<Box<dyn Solver<V>>> {
    match name {
        None | Some("auto") | Some("") => solvers::auto_base::<V>(k),
        Some(other) => solvers::by_name::<V>(other),
    }
}

/// Instantiate a solver for an instance of arity `k` and size `n`.
pub fn build_solver<V: Numeric>(choice: &SolverChoice, k: usize, n: usize) -> Result<BuiltSolver<V>> {
    let name = choice.solver.trim();
    let (is_reduce, inline_base) = match name {
        "" | "self-reduce" => (true, None),
        _ => match name.strip_prefix("self-reduce(") {
            Some(rest) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| {
                    Error::InvalidParameter(format!("unbalanced parentheses in {name:?}"))
                })?;
                (true, Some(inner.to_string()))
            }
            None => (false, None),
        },
    };

    if !is_reduce {
        if choice.h.is_some() {
            return Err(Error::InvalidParameter(
                "--h only applies to self-reduce".into(),
            ));
        }
        let solver = solvers::by_name::<V>(name)?;
        return Ok(BuiltSolver {
            solver,
            g: choice.g.map(|g| g as u64),
            h: None,
        });
    }

    let base_name = inline_base.or_else(|| choice.base.clone());
    let base = resolve_base::<V>(base_name.as_deref(), k)?;
    if let Some(g) = choice.g {
        if g == 0 || g > n.max(1) {
            return Err(Error::InvalidParameter(format!(
                "group count must lie in [1, {n}], got {g}"
            )));
        }
    }
    let g = choice.g.unwrap_or_else(|| ceil_sqrt(n));

    let (solver, h) = match choice.h {
        None => (
            Box::new(SelfReduce::new(GroupCount::Fixed(g), base)) as Box<dyn Solver<V>>,
            None,
        ),
        Some(h) => {
            // second stage: subproblems of the outer reduction are themselves
            // reduced with h groups before reaching the base solver
            let inner = Box::new(SelfReduce::new(GroupCount::Fixed(h), base));
            (
                Box::new(SelfReduce::new(GroupCount::Fixed(g), inner)) as Box<dyn Solver<V>>,
                Some(h as u64),
            )
        }
    };
    Ok(BuiltSolver {
        solver,
        g: Some(g as u64),
        h,
    })
}

/// One metered, wall-clocked solve.
pub fn run_solve<V: Numeric>(
    inst: &Instance<V>,
    choice: &SolverChoice,
    space_cap: Option<u64>,
) -> Result<TispReport<V>> {
    let built = build_solver::<V>(choice, inst.k(), inst.n())?;
    let meter = match space_cap {
        Some(cap) => Meter::with_cap(cap),
        None => Meter::new(),
    };
    let start = Instant::now();
    let witness = built.solver.solve(inst, &meter)?;
    let wall = start.elapsed().as_secs_f64();
    debug_assert_eq!(meter.aux_words_current(), 0);
    Ok(TispReport::new(
        inst.n(),
        built.g,
        built.h,
        &meter,
        wall,
        witness,
        &built.solver.spec(),
    ))
}

/// Mode-dispatched solve returning the report as a JSON value.
pub fn run_solve_any(
    inst: &AnyInstance,
    choice: &SolverChoice,
    space_cap: Option<u64>,
) -> Result<serde_json::Value> {
    let json = match inst {
        AnyInstance::Int(i) => serde_json::to_value(run_solve(i, choice, space_cap)?),
        AnyInstance::Real(i) => serde_json::to_value(run_solve(i, choice, space_cap)?),
    };
    json.map_err(|e| Error::InvalidParameter(format!("report serialization failed: {e}")))
}

/// Mode-dispatched solve rendered as a JSON line, fields in schema order.
pub fn run_solve_any_json(
    inst: &AnyInstance,
    choice: &SolverChoice,
    space_cap: Option<u64>,
) -> Result<String> {
    let json = match inst {
        AnyInstance::Int(i) => serde_json::to_string(&run_solve(i, choice, space_cap)?),
        AnyInstance::Real(i) => serde_json::to_string(&run_solve(i, choice, space_cap)?),
    };
    json.map_err(|e| Error::InvalidParameter(format!("report serialization failed: {e}")))
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOutcome {
    pub decision: bool,
    pub oracle_decision: Option<bool>,
    /// None when the instance exceeded the oracle cap.
    pub matches: Option<bool>,
}

/// Cross-check a solver's decision against brute force (skipped above
/// `max_n`, where the oracle would be unreasonable).
pub fn verify_against_oracle(
    inst: &AnyInstance,
    choice: &SolverChoice,
    max_n: usize,
) -> Result<VerifyOutcome> {
    fn run<V: Numeric>(
        inst: &Instance<V>,
        choice: &SolverChoice,
        max_n: usize,
    ) -> Result<VerifyOutcome> {
        let report = run_solve(inst, choice, None)?;
        if inst.n() > max_n {
            return Ok(VerifyOutcome {
                decision: report.decision,
                oracle_decision: None,
                matches: None,
            });
        }
        let oracle = BruteForce.solve(inst, &Meter::new())?.is_some();
        Ok(VerifyOutcome {
            decision: report.decision,
            oracle_decision: Some(oracle),
            matches: Some(report.decision == oracle),
        })
    }
    match inst {
        AnyInstance::Int(i) => run(i, choice, max_n),
        AnyInstance::Real(i) => run(i, choice, max_n),
    }
}

/// Bench grid configuration (TOML).
#[derive(Clone, Debug, Deserialize)]
pub struct BenchConfig {
    pub seed: u64,
    #[serde(default = "default_reps")]
    pub reps: u32,
    pub k: usize,
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default = "default_true")]
    pub single_list: bool,
    #[serde(default = "default_dist")]
    pub dist: String,
    #[serde(default = "default_range")]
    pub range: i64,
    #[serde(default)]
    pub target: i64,
    pub solvers: Vec<String>,
    pub ns: Vec<usize>,
    /// Group counts: integers or `sqrt`; ignored by non-reducing solvers.
    #[serde(default = "default_gs")]
    pub gs: Vec<String>,
    #[serde(default)]
    pub space_cap: Option<u64>,
    /// Grid g used for boundary-adversarial generation.
    #[serde(default)]
    pub gen_g: Option<usize>,
}

fn default_reps() -> u32 {
    1
}
fn default_mode() -> String {
    "int".into()
}
fn default_true() -> bool {
    true
}
fn default_dist() -> String {
    "uniform".into()
}
fn default_range() -> i64 {
    1000
}
fn default_gs() -> Vec<String> {
    vec!["sqrt".into()]
}

pub const BENCH_CSV_HEADER: &str =
    "solver,rep,seed,n,g,h,comparisons,additions,input_reads,aux_words_peak,wall_time,decision,status";

/// Stable per-cell seed: identical across solvers and g so every solver sees
/// the same instance at a given (n, rep).
pub fn cell_seed(base: u64, n: usize, rep: u32) -> u64 {
    base ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (rep as u64 + 1).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

fn parse_g_spec(s: &str, n: usize) -> Result<Option<usize>> {
    match s {
        "sqrt" => Ok(Some(ceil_sqrt(n))),
        "none" | "-" => Ok(None),
        other => other
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::InvalidParameter(format!("invalid g spec {other:?}"))),
    }
}

/// Run the grid, one CSV row per (n, g, solver, rep) cell in grid order.
/// Cell failures mark the row and the run continues. All counter columns are
/// deterministic for a fixed config; wall_time is not.
pub fn run_bench(cfg: &BenchConfig, out: &mut dyn Write) -> Result<()> {
    let mode = match cfg.mode.as_str() {
        "int" => Mode::Int,
        "real" => Mode::Real,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown mode {other:?}"
            )))
        }
    };
    let dist = Distribution::parse(&cfg.dist, cfg.gen_g)?;
    writeln!(out, "{BENCH_CSV_HEADER}")?;
    for &n in &cfg.ns {
        for g_spec in &cfg.gs {
            let g = parse_g_spec(g_spec, n)?;
            for solver in &cfg.solvers {
                for rep in 0..cfg.reps {
                    let seed = cell_seed(cfg.seed, n, rep);
                    let spec = GenSpec {
                        seed,
                        n,
                        k: cfg.k,
                        single_list: cfg.single_list,
                        mode,
                        target: cfg.target,
                        range: cfg.range,
                        dist,
                    };
                    let choice = SolverChoice {
                        solver: solver.clone(),
                        base: None,
                        g,
                        h: None,
                    };
                    let row = bench_cell(&spec, &choice, cfg.space_cap, solver, rep, seed);
                    writeln!(out, "{row}")?;
                }
            }
        }
    }
    Ok(())
}

fn bench_cell(
    spec: &GenSpec,
    choice: &SolverChoice,
    space_cap: Option<u64>,
    solver_label: &str,
    rep: u32,
    seed: u64,
) -> String {
    let outcome = crate::generate::generate(spec)
        .and_then(|inst| run_solve_any(&inst, choice, space_cap));
    match outcome {
        Ok(report) => {
            let fragment = report_csv_fragment(&report);
            format!("{solver_label},{rep},{seed},{fragment},ok")
        }
        Err(e) => {
            let status = match e {
                Error::SpaceCapExceeded { .. } => "space-cap",
                Error::BudgetExceeded { .. } => "budget",
                _ => "error",
            };
            format!("{solver_label},{rep},{seed},,,,,,,,,,{status}")
        }
    }
}

fn report_csv_fragment(report: &serde_json::Value) -> String {
    let opt = |v: &serde_json::Value| {
        if v.is_null() {
            String::new()
        } else {
            v.to_string()
        }
    };
    format!(
        "{},{},{},{},{},{},{},{:.6},{}",
        report["n"],
        opt(&report["g"]),
        opt(&report["h"]),
        report["comparisons"],
        report["additions"],
        report["input_reads"],
        report["aux_words_peak"],
        report["wall_time"].as_f64().unwrap_or(0.0),
        report["decision"]
    )
}

/// Planner curve: one CSV row per arity.
pub fn run_curve(
    k_min: usize,
    k_max: usize,
    space: SpaceBudget,
    n: Option<u64>,
    out: &mut dyn Write,
) -> Result<()> {
    if k_min < 4 || k_max < k_min {
        return Err(Error::InvalidParameter(
            "curve needs 4 <= k_min <= k_max".into(),
        ));
    }
    writeln!(out, "{}", crate::plan::Plan::CSV_HEADER)?;
    for k in k_min..=k_max {
        let mut plan = plan_ksum(k, space)?;
        plan.n = n;
        writeln!(out, "{}", plan.csv_row())?;
    }
    Ok(())
}
