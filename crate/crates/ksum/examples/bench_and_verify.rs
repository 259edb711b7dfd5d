//! The harness end to end: generate seeded instances (including the
//! boundary-adversarial layout), run a bench grid to CSV, and cross-check
//! decisions against brute force.
//!
//! ```bash
//! cargo run --release -p ksum --example bench_and_verify
//! ```

use ksum::generate::{generate, Distribution, GenSpec};
use ksum::harness::{run_bench, verify_against_oracle, BenchConfig, SolverChoice};
use ksum::types::Mode;

fn main() -> ksum::Result<()> {
    // seeded generation: same seed, same bytes
    let spec = GenSpec {
        seed: 42,
        n: 24,
        k: 3,
        single_list: true,
        mode: Mode::Int,
        target: 5,
        range: 100,
        dist: Distribution::BoundaryAdversarial { g: 4 },
    };
    let inst = generate(&spec)?;
    println!("boundary-adversarial instance (planted solution at group edges):");
    print!("{}", ksum::instance_file::write_any(&inst));
    println!();

    for solver in ["self-reduce", "self-reduce(brute-force)", "meet-in-middle"] {
        let choice = SolverChoice {
            solver: solver.into(),
            g: Some(4),
            ..Default::default()
        };
        let outcome = verify_against_oracle(&inst, &choice, 64)?;
        println!(
            "  {solver:<28} decision={} oracle-match={}",
            outcome.decision,
            outcome.matches.unwrap()
        );
        assert_eq!(outcome.matches, Some(true));
    }
    println!();

    // a small grid; counter columns are byte-stable across reruns
    let cfg = BenchConfig {
        seed: 7,
        reps: 1,
        k: 3,
        mode: "int".into(),
        single_list: true,
        dist: "uniform".into(),
        range: 5000,
        target: 0,
        solvers: vec!["self-reduce(sorted-3sum)".into(), "sorted-3sum".into()],
        ns: vec![256, 512, 1024],
        gs: vec!["sqrt".into()],
        space_cap: None,
        gen_g: None,
    };
    println!("bench grid (solver x n, g = sqrt):");
    let mut csv = Vec::new();
    run_bench(&cfg, &mut csv)?;
    print!("{}", String::from_utf8(csv).expect("csv is utf8"));
    Ok(())
}
