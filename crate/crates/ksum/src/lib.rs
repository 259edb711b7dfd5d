//! Deterministic k-SUM solving under explicit time/space accounting.
//!
//! The library decides k-SUM instances (does some k-tuple of inputs sum to a
//! target?) with a family of deterministic solvers whose working space is a
//! tunable budget rather than a side effect. Every solver routes its input
//! reads, value comparisons/additions, and scratch allocations through a
//! [`meter::Meter`], so simultaneous time/space behavior is measured — and,
//! with a hard cap, enforced — instead of assumed.
//!
//! The centerpiece is a group-splitting self-reduction
//! ([`reduce::ksum_self_reduce`]): split each list into `g` value-ordered
//! groups using a streaming selector that never holds more than O(n/g)
//! items, and hand only the group tuples whose value boxes straddle the
//! target — O(k·g^{k−1}) of them, by a domination argument — to a base
//! solver of your choice. Turning the knob `g` trades time for space; the
//! [`plan`] module computes the resulting exponent curves exactly.
//!
//! ## Capabilities by example
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --release -p ksum --example selection_toolkit     # bounded-space selection
//! cargo run --release -p ksum --example three_sum_tradeoff    # the g knob on 3-SUM
//! cargo run --release -p ksum --example four_sum_streams      # pair-sum stream 4-SUM
//! cargo run --release -p ksum --example ksum_ladder           # arities 5, 6, 8
//! cargo run --release -p ksum --example planner_curves        # exact exponent tables
//! cargo run --release -p ksum --example space_capped_run      # hard caps aborting solves
//! cargo run --release -p ksum --example bench_and_verify      # CSV grids + oracle checks
//! ```
//!
//! A thin `ksum` binary exposes the same drivers as subcommands
//! (`gen | solve | bench | curve | verify`); see the README.
//!
//! ## Layout
//!
//! - [`types`]: values, origin-tagged items, instances, witnesses.
//! - [`meter`]: charged operations, word accounting, space caps, reports.
//! - [`select`]: in-buffer selection, the streaming selector, group
//!   extraction, bounded-range and batch selection scans.
//! - [`solvers`]: brute force, two-pointer scans, meet-in-the-middle,
//!   pair-sum-stream 4-SUM and its quarter-table k-SUM lift, arity
//!   bootstrapping — all behind one [`solvers::Solver`] trait.
//! - [`reduce`]: the self-reduction, its instrumentation, and the
//!   domination machinery (chain covers, subproblem censuses).
//! - [`plan`]: exact rational tradeoff exponents and constraint checking.
//! - [`generate`], [`instance_file`], [`harness`]: seeded generators, the
//!   text instance format, and the drivers behind the CLI and examples.

pub mod error;
pub mod generate;
pub mod harness;
pub mod instance_file;
pub mod meter;
pub mod plan;
pub mod reduce;
pub mod select;
pub mod solvers;
pub mod types;

pub use error::{Error, Result};
pub use meter::{Meter, TispReport};
pub use solvers::{Solver, SolverSpec};
pub use types::{Cut, Instance, Item, Mode, Numeric, Witness};
