//! Seeded instance generators.
//!
//! The RNG is ChaCha8 (`rand_chacha`), a fixed, portable algorithm, so a seed
//! pins the generated bytes on every platform. Integer magnitudes are capped
//! at 2^61 / k so no k-fold sum can overflow a 64-bit word; real mode uses
//! the same integers stored as doubles (capped at 2^51 / k), which keeps all
//! sums exactly representable.
//!
//! `Planted` instances embed exactly one target-sum k-tuple: background
//! values sit in a high band that any tuple touching it overshoots the
//! target. `BoundaryAdversarial` instances do the same but position the
//! planted elements at group-edge order statistics for a given g, the spots
//! that stress the reduction's window overlap; a residue trick (everything
//! scaled by k+1, background offset by one) keeps the planted tuple the only
//! solution.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance_file::AnyInstance;
use crate::types::{Instance, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distribution {
    Uniform,
    Planted,
    /// Planted with solution elements at group-boundary ranks for this g.
    BoundaryAdversarial { g: usize },
}

impl Distribution {
    pub fn parse(s: &str, g: Option<usize>) -> Result<Self> {
        match s {
            "uniform" => Ok(Distribution::Uniform),
            "planted" => Ok(Distribution::Planted),
            "boundary" | "boundary-adversarial" => {
                let g = g.ok_or_else(|| {
                    Error::InvalidParameter(
                        "boundary-adversarial generation needs --g".into(),
                    )
                })?;
                Ok(Distribution::BoundaryAdversarial { g })
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown distribution {other:?} (expected uniform, planted, or boundary-adversarial)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub single_list: bool,
    pub mode: Mode,
    pub target: i64,
    pub range: i64,
    pub dist: Distribution,
}

fn magnitude_limit(mode: Mode, k: usize) -> i64 {
    match mode {
        Mode::Int => (1i64 << 61) / k as i64,
        Mode::Real => (1i64 << 51) / k as i64,
    }
}

impl GenSpec {
    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        if self.k < 2 {
            return Err(Error::InvalidParameter("k must be >= 2".into()));
        }
        if self.range < 0 {
            return Err(Error::InvalidParameter("range must be >= 0".into()));
        }
        let limit = magnitude_limit(self.mode, self.k);
        let worst = match self.dist {
            Distribution::Uniform => self
                .target
                .unsigned_abs()
                .max(self.range.unsigned_abs()),
            Distribution::Planted => {
                // background band tops out near |target| + (k+1)·range
                self.target.unsigned_abs() + (self.k as u64 + 2) * self.range.unsigned_abs() + 2
            }
            Distribution::BoundaryAdversarial { g } => {
                if g == 0 || g > self.n {
                    return Err(Error::InvalidParameter(format!(
                        "boundary generation needs g in [1, {}]",
                        self.n
                    )));
                }
                let spread = 4 * (self.n as u64 + 2);
                (self.target.unsigned_abs() / self.k as u64
                    + spread * (self.k as u64 + 2) * (self.k as u64))
                    * (self.k as u64 + 1)
            }
        };
        if worst > limit as u64 {
            return Err(Error::InvalidParameter(format!(
                "range/target too large for {} mode at k={}: worst magnitude {worst} exceeds {limit}",
                self.mode, self.k
            )));
        }
        if self.single_list && matches!(self.dist, Distribution::Planted) && self.n < self.k {
            return Err(Error::InvalidParameter(
                "planting a single-list solution needs n >= k".into(),
            ));
        }
        Ok(())
    }
}

/// Generate the integer lists for a spec (real mode converts afterwards).
pub fn generate_lists(spec: &GenSpec) -> Result<Vec<Vec<i64>>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let rows = if spec.single_list { 1 } else { spec.k };
    match spec.dist {
        Distribution::Uniform => Ok((0..rows)
            .map(|_| {
                (0..spec.n)
                    .map(|_| rng.random_range(-spec.range..=spec.range))
                    .collect()
            })
            .collect()),
        Distribution::Planted => planted_lists(spec, &mut rng),
        Distribution::BoundaryAdversarial { g } => boundary_lists(spec, g, &mut rng),
    }
}

fn planted_values(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let mut planted: Vec<i64> = (0..spec.k - 1)
        .map(|_| rng.random_range(-spec.range..=spec.range))
        .collect();
    let rest: i64 = planted.iter().sum();
    planted.push(spec.target - rest);
    planted
}

/// Background values live in [band, band + range]: any k-tuple touching one
/// sums strictly above |target|, so the planted tuple is the only solution.
fn background_band(spec: &GenSpec) -> i64 {
    spec.target.abs() + (spec.k as i64 + 1) * spec.range.max(1) + 1
}

fn planted_lists(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<i64>>> {
    let planted = planted_values(spec, rng);
    let band = background_band(spec);
    if spec.single_list {
        let mut values: Vec<i64> = (0..spec.n)
            .map(|_| band + rng.random_range(0..=spec.range))
            .collect();
        let positions = rand::seq::index::sample(rng, spec.n, spec.k);
        for (slot, pos) in positions.iter().enumerate() {
            values[pos] = planted[slot];
        }
        Ok(vec![values])
    } else {
        Ok((0..spec.k)
            .map(|row| {
                let mut values: Vec<i64> = (0..spec.n)
                    .map(|_| band + rng.random_range(0..=spec.range))
                    .collect();
                values[rng.random_range(0..spec.n)] = planted[row];
                values
            })
            .collect())
    }
}

/// Candidate sorted ranks next to the group edges of the reduction grid
/// (group size ⌈n/g⌉ + 1): the last and first element of adjacent groups,
/// plus both list ends.
fn boundary_ranks(n: usize, g: usize) -> Vec<usize> {
    let s = n.div_ceil(g) + 1;
    let mut ranks = vec![1, n];
    let mut edge = s;
    while edge < n {
        ranks.push(edge);
        ranks.push(edge + 1);
        edge += s;
    }
    ranks.sort_unstable();
    ranks.dedup();
    ranks
}

fn boundary_lists(spec: &GenSpec, g: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<i64>>> {
    let k = spec.k;
    let n = spec.n;
    let scale = k as i64 + 1;
    let spread = 4 * (n as i64 + 2);

    // planted values, sorted, summing to target, pairwise at least `spread` apart
    let quotient = spec.target.div_euclid(k as i64);
    let mut planted: Vec<i64> = (0..k as i64).map(|i| quotient + i * spread).collect();
    let adjust = spec.target - planted.iter().sum::<i64>();
    planted[0] += adjust; // stays the minimum: |adjust| < spread·k(k−1)/2 margin

    if spec.single_list {
        let candidates = boundary_ranks(n, g);
        if candidates.len() < k {
            return Err(Error::InvalidParameter(format!(
                "only {} boundary ranks available for k={k}; increase n or g",
                candidates.len()
            )));
        }
        let picks = rand::seq::index::sample(rng, candidates.len(), k);
        let mut ranks: Vec<usize> = picks.iter().map(|i| candidates[i]).collect();
        ranks.sort_unstable();
        Ok(vec![sorted_fill(&planted, &ranks, n, spread, scale, rng)])
    } else {
        // one planted element per list, each at a boundary rank of its list
        let candidates = boundary_ranks(n, g);
        Ok((0..k)
            .map(|row| {
                let rank = candidates[rng.random_range(0..candidates.len())];
                sorted_fill(&[planted[row]], &[rank], n, spread, scale, rng)
            })
            .collect())
    }
}

/// Build a shuffled list whose sorted order has `planted[i]` exactly at rank
/// `ranks[i]`, background elsewhere. Backgrounds are scaled and offset by one
/// so no k-tuple through them can hit the scaled target.
fn sorted_fill(
    planted: &[i64],
    ranks: &[usize],
    n: usize,
    spread: i64,
    scale: i64,
    rng: &mut ChaCha8Rng,
) -> Vec<i64> {
    debug_assert_eq!(planted.len(), ranks.len());
    let mut sorted: Vec<(i64, bool)> = Vec::with_capacity(n); // (value, is_background)
    let mut next_rank = 0usize;
    for rank in 1..=n {
        if next_rank < ranks.len() && ranks[next_rank] == rank {
            sorted.push((planted[next_rank], false));
            next_rank += 1;
        } else {
            // background strictly between the neighboring planted values
            let (lo, hi) = if next_rank == 0 {
                (planted[0] - spread + 1, planted[0] - 1)
            } else if next_rank == ranks.len() {
                (planted[next_rank - 1] + 1, planted[next_rank - 1] + spread - 1)
            } else {
                (planted[next_rank - 1] + 1, planted[next_rank] - 1)
            };
            sorted.push((rng.random_range(lo..=hi), true));
        }
    }
    let mut values: Vec<i64> = sorted
        .into_iter()
        .map(|(v, bg)| v * scale + i64::from(bg))
        .collect();
    values.shuffle(rng);
    values
}

/// Effective target after generation (boundary mode rescales it).
pub fn effective_target(spec: &GenSpec) -> i64 {
    match spec.dist {
        Distribution::BoundaryAdversarial { .. } => spec.target * (spec.k as i64 + 1),
        _ => spec.target,
    }
}

pub fn generate_int(spec: &GenSpec) -> Result<Instance<i64>> {
    let lists = generate_lists(spec)?;
    let target = effective_target(spec);
    if spec.single_list {
        Instance::single_list(lists.into_iter().next().unwrap(), spec.k, target)
    } else {
        Instance::multi_list(lists, target)
    }
}

pub fn generate_real(spec: &GenSpec) -> Result<Instance<f64>> {
    let lists = generate_lists(spec)?;
    let target = effective_target(spec) as f64;
    let conv = |v: Vec<i64>| v.into_iter().map(|x| x as f64).collect::<Vec<f64>>();
    if spec.single_list {
        Instance::single_list(conv(lists.into_iter().next().unwrap()), spec.k, target)
    } else {
        Instance::multi_list(lists.into_iter().map(conv).collect(), target)
    }
}

pub fn generate(spec: &GenSpec) -> Result<AnyInstance> {
    Ok(match spec.mode {
        Mode::Int => AnyInstance::Int(generate_int(spec)?),
        Mode::Real => AnyInstance::Real(generate_real(spec)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meter::Meter;
    use crate::solvers::{BruteForce, Solver};

    fn spec(seed: u64, n: usize, k: usize, dist: Distribution) -> GenSpec {
        GenSpec {
            seed,
            n,
            k,
            single_list: true,
            mode: Mode::Int,
            target: 0,
            range: 50,
            dist,
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let s = spec(1, 30, 3, Distribution::Uniform);
        assert_eq!(generate_lists(&s).unwrap(), generate_lists(&s).unwrap());
        let s2 = GenSpec { seed: 2, ..s };
        assert_ne!(generate_lists(&s).unwrap(), generate_lists(&s2).unwrap());
    }

    #[test]
    fn planted_instances_decide_true() {
        for seed in 0..30 {
            for &target in &[0i64, 7, -13] {
                let mut s = spec(seed, 10, 3, Distribution::Planted);
                s.target = target;
                let inst = generate_int(&s).unwrap();
                let w = BruteForce.solve(&inst, &Meter::new()).unwrap();
                assert!(w.is_some(), "seed={seed} target={target}");
                assert!(w.unwrap().verify(&inst));
            }
        }
    }

    #[test]
    fn planted_multi_list_decides_true() {
        for seed in 0..20 {
            let s = GenSpec {
                single_list: false,
                target: 5,
                ..spec(seed, 8, 4, Distribution::Planted)
            };
            let inst = generate_int(&s).unwrap();
            assert!(BruteForce.solve(&inst, &Meter::new()).unwrap().is_some());
        }
    }

    #[test]
    fn planted_solution_is_unique() {
        // count all zero-sum triples; the band construction allows exactly one
        for seed in 0..20 {
            let s = spec(seed, 9, 3, Distribution::Planted);
            let inst = generate_int(&s).unwrap();
            let mut count = 0;
            let n = inst.n();
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        let sum = inst.item(0, a).value + inst.item(0, b).value
                            + inst.item(0, c).value;
                        if sum == 0 {
                            count += 1;
                        }
                    }
                }
            }
            assert_eq!(count, 1, "seed={seed}");
        }
    }

    #[test]
    fn boundary_instances_decide_true() {
        for seed in 0..20 {
            for &(n, g, k) in &[(16usize, 4usize, 3usize), (40, 8, 3), (24, 4, 4)] {
                let mut s = spec(seed, n, k, Distribution::BoundaryAdversarial { g });
                s.target = 3;
                let inst = generate_int(&s).unwrap();
                let w = BruteForce.solve(&inst, &Meter::new()).unwrap();
                assert!(w.is_some(), "seed={seed} n={n} g={g} k={k}");
            }
        }
    }

    #[test]
    fn boundary_solution_sits_on_group_edges() {
        let s = GenSpec {
            target: 3,
            ..spec(7, 20, 3, Distribution::BoundaryAdversarial { g: 4 })
        };
        let inst = generate_int(&s).unwrap();
        let w = BruteForce.solve(&inst, &Meter::new()).unwrap().unwrap();
        // recover sorted ranks of the witness values
        let mut all: Vec<i64> = (0..inst.n()).map(|i| inst.item(0, i).value).collect();
        all.sort_unstable();
        let edges = boundary_ranks(20, 4);
        for item in &w.items {
            let rank = all.iter().position(|&v| v == item.value).unwrap() + 1;
            assert!(edges.contains(&rank), "rank {rank} not a group edge {edges:?}");
        }
    }

    #[test]
    fn overflow_budget_rejected() {
        let s = GenSpec {
            range: 1 << 61,
            ..spec(1, 10, 3, Distribution::Uniform)
        };
        assert!(generate_lists(&s).is_err());
    }
}
