//! The group-count knob on 3-SUM: more groups means smaller subproblems and
//! less peak space, paid for with more charged work.
//!
//! ```bash
//! cargo run --release -p ksum --example three_sum_tradeoff
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use ksum::meter::Meter;
use ksum::reduce::{ceil_sqrt, ksum_self_reduce, ReductionConfig};
use ksum::solvers::{Solver, Sorted3Sum};
use ksum::types::Instance;

fn main() -> ksum::Result<()> {
    let n = 4096usize;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    // even values, odd target: no solution, so every run does its full work
    let values: Vec<i64> = (0..n).map(|_| rng.random_range(-50_000..=50_000) * 2).collect();
    let inst = Instance::single_list(values, 3, 1)?;
    let base = Sorted3Sum;

    println!("3-SUM, n = {n}, no solution planted (full enumeration)");
    println!();
    println!(
        "{:>6} {:>12} {:>14} {:>12} {:>10} {:>12}",
        "g", "subproblems", "charged ops", "peak words", "ops/n^2", "words*g/n"
    );

    let direct = Meter::new();
    let witness = Sorted3Sum.solve(&inst, &direct)?;
    assert!(witness.is_none());
    println!(
        "{:>6} {:>12} {:>14} {:>12} {:>10.2} {:>12}",
        "-",
        1,
        direct.charged_ops(),
        direct.aux_words_peak(),
        direct.charged_ops() as f64 / (n * n) as f64,
        "-",
    );

    for g in [2usize, 8, 16, ceil_sqrt(n), 256] {
        let meter = Meter::new();
        let cfg = ReductionConfig {
            g,
            base: &base,
            record_subproblems: false,
        };
        let (witness, stats) = ksum_self_reduce(&inst, &cfg, &meter)?;
        assert!(witness.is_none());
        println!(
            "{:>6} {:>12} {:>14} {:>12} {:>10.2} {:>12.2}",
            g,
            stats.base_calls,
            meter.charged_ops(),
            meter.aux_words_peak(),
            meter.charged_ops() as f64 / (n * n) as f64,
            (meter.aux_words_peak() * g as u64) as f64 / n as f64,
        );
    }

    println!();
    println!("peak words track n/g (right column flat); the g^2 subproblems");
    println!("keep total work quadratic while the buffers shrink");
    Ok(())
}
