//! Higher arities from the same parts: bootstrapping one fixed element at a
//! time, quarter-sum tables for k divisible by four, and the self-reduction
//! wrapped around either.
//!
//! ```bash
//! cargo run --release -p ksum --example ksum_ladder
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use ksum::harness::{run_solve, SolverChoice};
use ksum::meter::Meter;
use ksum::solvers::{BruteForce, Solver};
use ksum::types::Instance;

fn main() -> ksum::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    let cases: &[(usize, usize, &str)] = &[
        (5, 24, "bootstrap(schroeppel-shamir)"),
        (6, 18, "bootstrap(bootstrap(schroeppel-shamir))"),
        (8, 12, "ksum-via-4sum"),
        (5, 24, "self-reduce(bootstrap(schroeppel-shamir))"),
        (8, 12, "meet-in-middle"),
    ];

    for &(k, n, solver) in cases {
        let values: Vec<i64> = (0..n).map(|_| rng.random_range(-6..=6)).collect();
        let target = rng.random_range(-4..=4);
        let inst = Instance::single_list(values, k, target)?;

        let choice = SolverChoice::named(solver);
        let report = run_solve(&inst, &choice, None)?;
        let oracle = BruteForce.solve(&inst, &Meter::new())?.is_some();
        assert_eq!(report.decision, oracle, "{solver} disagrees with brute force");

        println!(
            "k={k} n={n} target={target:>3}  {:<42} decision={:<5} ops={:>9} peak={:>6}",
            report.solver, report.decision,
            report.comparisons + report.additions + report.input_reads,
            report.aux_words_peak,
        );
    }

    println!();
    println!("every decision cross-checked against brute force");
    Ok(())
}
