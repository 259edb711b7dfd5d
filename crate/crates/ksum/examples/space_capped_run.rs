//! Hard space caps: a meter cap turns a space claim into an enforced budget.
//! A solve either completes under the cap or aborts with a budget error —
//! useful for proving bounds rather than merely observing them.
//!
//! ```bash
//! cargo run --release -p ksum --example space_capped_run
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use ksum::error::Error;
use ksum::meter::Meter;
use ksum::reduce::{ceil_sqrt, ksum_self_reduce, ReductionConfig};
use ksum::solvers::Sorted3Sum;
use ksum::types::Instance;

fn attempt(inst: &Instance<i64>, g: usize, cap: u64) -> ksum::Result<String> {
    let meter = Meter::with_cap(cap);
    let base = Sorted3Sum;
    let cfg = ReductionConfig {
        g,
        base: &base,
        record_subproblems: false,
    };
    match ksum_self_reduce(inst, &cfg, &meter) {
        Ok((witness, stats)) => Ok(format!(
            "completed: decision={}, peak {} words, {} subproblems",
            witness.is_some(),
            meter.aux_words_peak(),
            stats.base_calls
        )),
        Err(Error::SpaceCapExceeded { cap, attempted }) => Ok(format!(
            "aborted: would have needed {attempted} words against cap {cap}"
        )),
        Err(e) => Err(e),
    }
}

fn main() -> ksum::Result<()> {
    let n = 10_000usize;
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let values: Vec<i64> = (0..n).map(|_| rng.random_range(-1_000_000..=1_000_000) * 2).collect();
    let inst = Instance::single_list(values, 3, 1)?;
    let g = ceil_sqrt(n);

    println!("3-SUM self-reduction, n = {n}, g = {g} (subproblems hold ~3(n/g) items)");
    println!();

    let generous = 20 * (n / g) as u64;
    println!("cap = 20(n/g) = {generous} words:");
    println!("  {}", attempt(&inst, g, generous)?);
    println!();

    let tight = (n / g) as u64;
    println!("cap = n/g = {tight} words (below what the groups alone need):");
    println!("  {}", attempt(&inst, g, tight)?);
    println!();

    // the direct quadratic solver cannot fit in o(n) words: its sorted copy
    // alone is n items
    let direct_cap = (n / 2) as u64;
    let meter = Meter::with_cap(direct_cap);
    match ksum::solvers::Solver::<i64>::solve(&Sorted3Sum, &inst, &meter) {
        Err(Error::SpaceCapExceeded { .. }) => {
            println!("direct sorted-3sum under cap n/2 = {direct_cap}: aborted, as it must");
        }
        other => panic!("expected a space abort, got {other:?}"),
    }
    println!(
        "the reduction at g = {g} runs the same decision in {} words",
        generous
    );
    Ok(())
}
