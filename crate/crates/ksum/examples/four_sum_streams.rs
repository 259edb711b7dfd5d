//! 4-SUM in linear auxiliary space: two heap-backed pair-sum streams walked
//! against each other, versus meet-in-the-middle's quadratic table.
//!
//! ```bash
//! cargo run --release -p ksum --example four_sum_streams
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use ksum::meter::Meter;
use ksum::solvers::{MeetInMiddle, SchroeppelShamir4Sum, Solver};
use ksum::types::Instance;

fn run(
    label: &str,
    solver: &dyn Solver<i64>,
    inst: &Instance<i64>,
) -> ksum::Result<(u64, u64, bool)> {
    let meter = Meter::new();
    let witness = solver.solve(inst, &meter)?;
    let decision = witness.is_some();
    if let Some(w) = &witness {
        assert!(w.verify(inst));
    }
    println!(
        "  {label:<18} decision={decision:<5} charged ops={:>12} peak words={:>9}",
        meter.charged_ops(),
        meter.aux_words_peak(),
    );
    Ok((meter.charged_ops(), meter.aux_words_peak(), decision))
}

fn main() -> ksum::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [256usize, 512, 1024] {
        // an odd target over even values keeps the scan exhaustive
        let values: Vec<i64> = (0..n)
            .map(|_| rng.random_range(-1_000_000..=1_000_000) * 2)
            .collect();
        let inst = Instance::single_list(values, 4, 1)?;
        println!("4-SUM, n = {n}, no solution:");
        let stream = run("pair-sum streams", &SchroeppelShamir4Sum::default(), &inst)?;
        let table = run("meet-in-middle", &MeetInMiddle::default(), &inst)?;
        assert_eq!(stream.2, table.2);
        println!(
            "  stream space / table space = {:.4} (O(n) vs O(n^2) words)",
            stream.1 as f64 / table.1 as f64
        );
        println!();
    }

    // planted solution: both find it, the streams stop early
    let n = 512;
    let mut values: Vec<i64> = (0..n).map(|_| rng.random_range(-500_000..=500_000)).collect();
    let (a, b, c) = (values[17], values[93], values[401]);
    values[250] = -(a + b + c);
    let inst = Instance::single_list(values, 4, 0)?;
    println!("4-SUM, n = {n}, planted zero-sum quadruple:");
    run("pair-sum streams", &SchroeppelShamir4Sum::default(), &inst)?;
    run("meet-in-middle", &MeetInMiddle::default(), &inst)?;
    Ok(())
}
