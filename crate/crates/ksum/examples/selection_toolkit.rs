//! Bounded-space selection: streaming group extraction, the binary-search
//! selector for bounded integer ranges, and the batch scan for reals.
//!
//! ```bash
//! cargo run --release -p ksum --example selection_toolkit
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use ksum::meter::Meter;
use ksum::select::{batch_select, bounded_range_select, next_group};
use ksum::types::{Cut, Instance};

fn main() -> ksum::Result<()> {
    let big_n = 100_000usize;
    let range = 1_000_000i64;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let values: Vec<i64> = (0..big_n).map(|_| rng.random_range(-range..=range)).collect();
    let big = Instance::single_list(values, 3, 0)?;
    let big_view = big.row(0);

    println!("list: n = {big_n}, values uniform in [-{range}, {range}]");
    println!();

    // Walk the list in groups of s without ever holding more than ~2s items.
    let s = 40usize;
    println!("next_group chain, s = {s}:");
    let meter = Meter::new();
    let mut cut = Cut::NegInf;
    for step in 0..4 {
        let group = next_group(&big_view, cut, s, &meter)?;
        println!(
            "  group {step}: count={}, value span [{}, {}], starts at rank {}",
            group.count(),
            group.min_key().unwrap().value,
            group.max_key().unwrap().value,
            group.start_rank(),
        );
        cut = Cut::After(*group.max_key().unwrap());
    }
    println!(
        "  charged: {} reads, {} comparisons; peak {} words (buffer is 2s = {})",
        meter.input_reads(),
        meter.comparisons(),
        meter.aux_words_peak(),
        2 * s,
    );
    println!();

    // The same median, three ways, on a list the quadratic batch scan can
    // handle comfortably.
    let n = 2_000usize;
    let values: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
    let inst = Instance::single_list(values, 3, 0)?;
    let view = inst.row(0);
    println!("median of a fresh n = {n} list, three ways:");
    let rank = n / 2;
    let m1 = Meter::new();
    let by_range = bounded_range_select(&view, rank, range, &m1)?;
    println!("bounded_range_select: rank {rank} -> {by_range}");
    println!(
        "  {} passes over the list, peak {} words",
        m1.input_reads() / n as u64,
        m1.aux_words_peak(),
    );

    let m2 = Meter::new();
    let quartiles = batch_select(&view, &[n / 4, n / 2, 3 * n / 4], &m2)?;
    println!("batch_select quartiles: {quartiles:?}");
    println!(
        "  {} charged ops, peak {} words",
        m2.charged_ops(),
        m2.aux_words_peak(),
    );

    let m3 = Meter::new();
    let group = next_group(&view, Cut::NegInf, rank, &m3)?;
    println!(
        "next_group with s = rank: max key value {} (peak {} words, O(s))",
        group.max_key().unwrap().value,
        m3.aux_words_peak(),
    );

    assert_eq!(by_range, quartiles[1]);
    assert_eq!(by_range, group.max_key().unwrap().value);
    println!();
    println!("all three selectors agree on the median");
    Ok(())
}
