//! Group-splitting self-reduction: k-SUM on n items becomes O(k·g^{k−1})
//! k-SUM subproblems on O(n/g) items, extracted with the bounded-memory
//! selector so the whole reduction runs in O(n/g) auxiliary words beyond the
//! base solver.
//!
//! The driver walks the first k−1 lists with nested group cursors of size
//! `⌈n/g⌉ + 1` and slides a window of the same size over the last list,
//! covering exactly the value range where a completing element could lie:
//! the window starts at `target − Σ max` of the chosen groups and advances
//! while `Σ min + window-min ≤ target`. Group tuples whose value boxes
//! cannot straddle the target never reach the base solver; the tuples that
//! do form an antichain under coordinate-wise domination (up to the O(1)
//! misaligned windows per tuple), which is what caps the subproblem count.
//!
//! Subproblems assembled from a single-list instance are the identity-deduped
//! union of the chosen groups, solved as a smaller single-list instance so
//! index distinctness carries through unchanged; multi-list instances keep
//! one row per group.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::meter::{add_values, cmp_values, sort_items, sub_values, Meter};
use crate::select::{next_group, Group};
use crate::solvers::{Solver, SolverSpec};
use crate::types::{Cut, Instance, Item, Numeric, RowView, Witness};

/// Coordinates of one subproblem: a group ordinal (1-based) per list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubproblemTuple {
    pub coords: Vec<u32>,
}

impl SubproblemTuple {
    pub fn new(coords: Vec<u32>) -> Self {
        SubproblemTuple { coords }
    }

    /// Strict coordinate-wise domination: `self[i] < other[i]` for every i.
    pub fn precedes(&self, other: &Self) -> bool {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a < b)
    }
}

/// The diagonal chain through `start` (which must touch the boundary:
/// some coordinate equal to 1): start, start + (1,…,1), … until the largest
/// coordinate reaches `g`. The chains over all valid starts cover `[g]^k`.
pub fn chain_cover(start: &SubproblemTuple, g: u32) -> Result<Vec<SubproblemTuple>> {
    if start.coords.is_empty() {
        return Err(Error::InvalidParameter("empty tuple".into()));
    }
    if start.coords.iter().any(|&c| c < 1 || c > g) {
        return Err(Error::InvalidParameter(format!(
            "coordinates must lie in [1, {g}]"
        )));
    }
    if !start.coords.contains(&1) {
        return Err(Error::InvalidParameter(
            "chain start must have a coordinate equal to 1".into(),
        ));
    }
    let top = *start.coords.iter().max().unwrap();
    Ok((0..=g - top)
        .map(|j| SubproblemTuple::new(start.coords.iter().map(|&c| c + j).collect()))
        .collect())
}

/// Whether no tuple strictly dominates another. O(m²k); diagnostic use.
pub fn is_antichain(tuples: &[SubproblemTuple]) -> bool {
    for (i, a) in tuples.iter().enumerate() {
        for b in &tuples[i + 1..] {
            if a.precedes(b) || b.precedes(a) {
                return false;
            }
        }
    }
    true
}

/// Boundary keys of one list: `keys[0]` is the −∞ sentinel and `keys[j]` the
/// `j·⌈n/g⌉`-th smallest item (the last key sits at rank n when g does not
/// divide n). Computed with g chained group extractions, so it stays within
/// the O(n/g)-word budget.
pub struct GroupBoundaries<V: Numeric> {
    pub keys: Vec<Option<Item<V>>>,
}

impl<V: Numeric> GroupBoundaries<V> {
    /// Number of groups covered.
    pub fn groups(&self) -> usize {
        self.keys.len() - 1
    }
}

pub fn group_boundaries<V: Numeric>(
    view: &RowView<'_, V>,
    g: usize,
    meter: &Meter,
) -> Result<GroupBoundaries<V>> {
    let n = view.active_len();
    if g == 0 || g > n {
        return Err(Error::InvalidParameter(format!(
            "group count must lie in [1, {n}], got {g}"
        )));
    }
    let size = n.div_ceil(g);
    let mut keys = vec![None];
    let mut cut = Cut::NegInf;
    for _ in 0..g {
        let group = next_group(view, cut, size, meter)?;
        if group.is_empty() {
            break;
        }
        let max = *group.max_key().unwrap();
        keys.push(Some(max));
        cut = Cut::After(max);
    }
    Ok(GroupBoundaries { keys })
}

/// Classification of all g^k group tuples by their boundary-value boxes.
pub struct SubproblemCensus<V: Numeric> {
    pub nontrivial: u64,
    pub trivial: u64,
    /// Set when some box edge hits the target exactly with index-distinct
    /// boundary items; enumeration stops there.
    pub boundary_witness: Option<Witness<V>>,
    pub inspected: u64,
}

/// Enumerates every tuple of groups and classifies it as trivial (its
/// smallest possible sum exceeds the target, or its largest falls short),
/// boundary-exact (an edge sums to the target exactly; the edge items are
/// returned as a witness when index-distinct), or nontrivial. The nontrivial
/// count is the quantity the reduction's subproblem bound is about.
pub fn count_nontrivial_subproblems<V: Numeric>(
    bounds: &[GroupBoundaries<V>],
    target: V,
    meter: &Meter,
) -> Result<SubproblemCensus<V>> {
    let k = bounds.len();
    if k < 2 {
        return Err(Error::InvalidParameter("need at least two lists".into()));
    }
    let g = bounds[0].groups();
    if g == 0 || bounds.iter().any(|b| b.groups() != g) {
        return Err(Error::InvalidParameter(
            "boundary sequences must cover the same positive group count".into(),
        ));
    }

    let mut census = SubproblemCensus {
        nontrivial: 0,
        trivial: 0,
        boundary_witness: None,
        inspected: 0,
    };
    let mut coords = vec![1u32; k];
    loop {
        census.inspected += 1;

        let mut hi_sum = V::ZERO;
        for (i, &c) in coords.iter().enumerate() {
            let key = bounds[i].keys[c as usize].as_ref().unwrap();
            hi_sum = add_values(meter, hi_sum, key.value)?;
        }
        let mut lo_sum = Some(V::ZERO);
        for (i, &c) in coords.iter().enumerate() {
            lo_sum = match (lo_sum, &bounds[i].keys[(c - 1) as usize]) {
                (Some(acc), Some(key)) => Some(add_values(meter, acc, key.value)?),
                _ => None,
            };
        }

        let hi_cmp = cmp_values(meter, hi_sum, target);
        let lo_cmp = lo_sum.map(|lo| cmp_values(meter, lo, target));
        if hi_cmp == std::cmp::Ordering::Less || lo_cmp == Some(std::cmp::Ordering::Greater) {
            census.trivial += 1;
        } else if hi_cmp == std::cmp::Ordering::Equal {
            let items: Vec<Item<V>> = coords
                .iter()
                .enumerate()
                .map(|(i, &c)| *bounds[i].keys[c as usize].as_ref().unwrap())
                .collect();
            if distinct_identities(&items) {
                census.boundary_witness = Some(Witness::build(items, meter)?);
                return Ok(census);
            }
            census.nontrivial += 1;
        } else if lo_cmp == Some(std::cmp::Ordering::Equal) {
            let items: Vec<Item<V>> = coords
                .iter()
                .enumerate()
                .map(|(i, &c)| *bounds[i].keys[(c - 1) as usize].as_ref().unwrap())
                .collect();
            if distinct_identities(&items) {
                census.boundary_witness = Some(Witness::build(items, meter)?);
                return Ok(census);
            }
            census.nontrivial += 1;
        } else {
            census.nontrivial += 1;
        }

        // odometer over [1, g]^k
        let mut d = 0;
        loop {
            if d == k {
                return Ok(census);
            }
            if coords[d] < g as u32 {
                coords[d] += 1;
                break;
            }
            coords[d] = 1;
            d += 1;
        }
    }
}

fn distinct_identities<V: Numeric>(items: &[Item<V>]) -> bool {
    let mut ids: Vec<_> = items.iter().map(|i| i.identity()).collect();
    ids.sort_unstable();
    ids.dedup();
    ids.len() == items.len()
}

/// Parameters of one reduction run.
pub struct ReductionConfig<'a, V: Numeric> {
    /// Group count, in [1, n].
    pub g: usize,
    pub base: &'a dyn Solver<V>,
    /// Record the coordinates of every subproblem sent to the base solver
    /// (instrumentation storage, not metered).
    pub record_subproblems: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ReductionStats {
    pub base_calls: u64,
    pub next_group_calls: u64,
    /// Group/window size used: ⌈n/g⌉ + 1.
    pub group_size: usize,
    pub tuples: Option<Vec<SubproblemTuple>>,
}

/// The 3-SUM reduction: two nested group cursors and a sliding window.
pub fn three_sum_self_reduce<V: Numeric>(
    inst: &Instance<V>,
    cfg: &ReductionConfig<'_, V>,
    meter: &Meter,
) -> Result<(Option<Witness<V>>, ReductionStats)> {
    if inst.k() != 3 {
        return Err(Error::UnsupportedArity {
            solver: "three-sum-self-reduce".into(),
            k: inst.k(),
        });
    }
    ksum_self_reduce(inst, cfg, meter)
}

/// The general reduction: k−1 nested cursors, window over the last list.
pub fn ksum_self_reduce<V: Numeric>(
    inst: &Instance<V>,
    cfg: &ReductionConfig<'_, V>,
    meter: &Meter,
) -> Result<(Option<Witness<V>>, ReductionStats)> {
    let k = inst.k();
    if k < 3 {
        return Err(Error::UnsupportedArity {
            solver: "ksum-self-reduce".into(),
            k,
        });
    }
    if !cfg.base.supports_arity(k) {
        return Err(Error::UnsupportedArity {
            solver: cfg.base.spec().name,
            k,
        });
    }
    let n = inst.n();
    let mut stats = ReductionStats {
        tuples: cfg.record_subproblems.then(Vec::new),
        ..ReductionStats::default()
    };
    if n == 0 {
        return Ok((None, stats));
    }
    if cfg.g == 0 || cfg.g > n {
        return Err(Error::InvalidParameter(format!(
            "group count must lie in [1, {n}], got {}",
            cfg.g
        )));
    }
    stats.group_size = n.div_ceil(cfg.g) + 1;

    let mut engine = Engine {
        inst,
        base: cfg.base,
        meter,
        s: stats.group_size,
        stats,
    };
    let mut groups = Vec::with_capacity(k - 1);
    let witness = engine.cursor(0, &mut groups)?;
    Ok((witness, engine.stats))
}

struct Engine<'a, 'm, V: Numeric> {
    inst: &'a Instance<V>,
    base: &'a dyn Solver<V>,
    meter: &'m Meter,
    s: usize,
    stats: ReductionStats,
}

impl<'a, 'm, V: Numeric> Engine<'a, 'm, V> {
    fn cursor(
        &mut self,
        depth: usize,
        groups: &mut Vec<Group<'m, V>>,
    ) -> Result<Option<Witness<V>>> {
        if depth == self.inst.k() - 1 {
            return self.window(groups);
        }
        let view = self.inst.row(depth);
        let mut cut = Cut::NegInf;
        loop {
            let group = next_group(&view, cut, self.s, self.meter)?;
            self.stats.next_group_calls += 1;
            if group.is_empty() {
                break;
            }
            let full = group.count() == self.s;
            cut = Cut::After(*group.max_key().unwrap());
            groups.push(group);
            let found = self.cursor(depth + 1, groups)?;
            groups.pop();
            if found.is_some() {
                return Ok(found);
            }
            if !full {
                break;
            }
        }
        Ok(None)
    }

    fn window(&mut self, groups: &mut Vec<Group<'m, V>>) -> Result<Option<Witness<V>>> {
        let meter = self.meter;
        let target = self.inst.target();

        // the window begins where the largest reachable prefix sum lands
        let mut start = target;
        for group in groups.iter() {
            start = sub_values(meter, start, group.max_key().unwrap().value)?;
        }
        // and runs while the smallest reachable total can still make the target
        let mut min_sum = groups[0].min_key().unwrap().value;
        for group in &groups[1..] {
            min_sum = add_values(meter, min_sum, group.min_key().unwrap().value)?;
        }

        let view = self.inst.row(self.inst.k() - 1);
        let mut cut = Cut::From(start);
        loop {
            let window = next_group(&view, cut, self.s, meter)?;
            self.stats.next_group_calls += 1;
            if window.is_empty() {
                break;
            }
            let reach = add_values(meter, window.min_key().unwrap().value, min_sum)?;
            if cmp_values(meter, reach, target) == std::cmp::Ordering::Greater {
                break;
            }
            self.stats.base_calls += 1;
            if let Some(tuples) = &mut self.stats.tuples {
                let mut coords: Vec<u32> = groups
                    .iter()
                    .map(|g| ((g.start_rank() - 1) / self.s + 1) as u32)
                    .collect();
                coords.push(((window.start_rank() - 1) / self.s + 1) as u32);
                tuples.push(SubproblemTuple::new(coords));
            }
            let found = self.solve_subproblem(groups, &window)?;
            if found.is_some() {
                return Ok(found);
            }
            let full = window.count() == self.s;
            cut = Cut::After(*window.max_key().unwrap());
            if !full {
                break;
            }
        }
        Ok(None)
    }

    fn solve_subproblem(
        &mut self,
        groups: &[Group<'m, V>],
        window: &Group<'m, V>,
    ) -> Result<Option<Witness<V>>> {
        let k = self.inst.k();
        let target = self.inst.target();
        let total: usize = groups.iter().map(|g| g.count()).sum::<usize>() + window.count();
        let _token = self.meter.acquire(total as u64)?;
        if self.inst.is_single_list() {
            // identity-deduped union, solved as a smaller single-list instance
            let mut items: Vec<Item<V>> = Vec::with_capacity(total);
            for group in groups {
                items.extend_from_slice(group.items());
            }
            items.extend_from_slice(window.items());
            sort_items(self.meter, &mut items);
            items.dedup_by(|a, b| a.identity() == b.identity());
            let sub = Instance::single_list_items(Arc::from(items), k, target);
            self.base.solve(&sub, self.meter)
        } else {
            let mut rows: Vec<Arc<[Item<V>]>> = groups
                .iter()
                .map(|g| Arc::from(g.items().to_vec()))
                .collect();
            rows.push(Arc::from(window.items().to_vec()));
            let sub = Instance::multi_list_items(rows, target);
            self.base.solve(&sub, self.meter)
        }
    }
}

/// Group-count policy for the packaged reduction solver.
#[derive(Clone, Copy, Debug)]
pub enum GroupCount {
    Fixed(usize),
    /// ⌈√n⌉ — the default when nothing else is known about the base solver.
    SqrtN,
}

impl GroupCount {
    pub fn resolve(&self, n: usize) -> usize {
        match self {
            GroupCount::Fixed(g) => *g,
            GroupCount::SqrtN => ceil_sqrt(n),
        }
    }
}

pub fn ceil_sqrt(n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// The reduction packaged behind the solver interface.
pub struct SelfReduce<V: Numeric> {
    pub groups: GroupCount,
    pub base: Box<dyn Solver<V>>,
}

impl<V: Numeric> SelfReduce<V> {
    pub fn new(groups: GroupCount, base: Box<dyn Solver<V>>) -> Self {
        SelfReduce { groups, base }
    }
}

impl<V: Numeric> Solver<V> for SelfReduce<V> {
    fn spec(&self) -> SolverSpec {
        SolverSpec {
            name: format!("self-reduce({})", self.base.spec().name),
            time_claim: "g^(k-1) (n + T_base(n/g))".into(),
            space_claim: "n/g + S_base(n/g)".into(),
        }
    }

    fn supports_arity(&self, k: usize) -> bool {
        k >= 3 && self.base.supports_arity(k)
    }

    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        let n = inst.n();
        // clamp so the solver composes (an inner reduction stage may see
        // subproblems smaller than its configured group count)
        let cfg = ReductionConfig {
            g: self.groups.resolve(n).clamp(1, n.max(1)),
            base: &*self.base,
            record_subproblems: false,
        };
        ksum_self_reduce(inst, &cfg, meter).map(|(witness, _)| witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{BruteForce, SchroeppelShamir4Sum, Sorted3Sum};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chain_cover_examples() {
        let chain = chain_cover(&SubproblemTuple::new(vec![1, 1, 1]), 3).unwrap();
        assert_eq!(
            chain,
            vec![
                SubproblemTuple::new(vec![1, 1, 1]),
                SubproblemTuple::new(vec![2, 2, 2]),
                SubproblemTuple::new(vec![3, 3, 3]),
            ]
        );
        let chain = chain_cover(&SubproblemTuple::new(vec![1, 3]), 3).unwrap();
        assert_eq!(chain, vec![SubproblemTuple::new(vec![1, 3])]);
        assert!(chain_cover(&SubproblemTuple::new(vec![2, 3]), 3).is_err());
    }

    #[test]
    fn chains_cover_cube_exactly() {
        // g=3, k=3: 19 chains cover all 27 tuples
        let g = 3u32;
        let k = 3usize;
        let mut covered = std::collections::HashSet::new();
        let mut chains = 0;
        let mut coords = vec![1u32; k];
        'outer: loop {
            if coords.contains(&1) {
                chains += 1;
                for t in chain_cover(&SubproblemTuple::new(coords.clone()), g).unwrap() {
                    covered.insert(t.coords);
                }
            }
            let mut d = 0;
            loop {
                if d == k {
                    break 'outer;
                }
                if coords[d] < g {
                    coords[d] += 1;
                    break;
                }
                coords[d] = 1;
                d += 1;
            }
        }
        assert_eq!(chains, 27 - 8); // g^k − (g−1)^k
        assert_eq!(covered.len(), 27);
        assert!(chains <= 27); // k·g^{k−1}
    }

    fn census_for(vals: Vec<i64>, k: usize, g: usize, target: i64) -> SubproblemCensus<i64> {
        let inst = Instance::single_list(vals, k, target).unwrap();
        let meter = Meter::new();
        let bounds: Vec<_> = (0..k)
            .map(|r| group_boundaries(&inst.row(r), g, &meter).unwrap())
            .collect();
        count_nontrivial_subproblems(&bounds, target, &meter).unwrap()
    }

    #[test]
    fn census_single_group() {
        let census = census_for(vec![5, -5, 3], 3, 1, 1);
        assert_eq!(census.inspected, 1);
        assert_eq!(census.nontrivial + census.trivial, 1);
    }

    #[test]
    fn census_respects_domination_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for &(n, g, k) in &[(1000usize, 10usize, 3usize), (256, 4, 4)] {
            // even values with odd target: nothing decides early
            let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-500..=500) * 2).collect();
            let census = census_for(vals, k, g, 1);
            let bound = (k as u64) * (g as u64).pow(k as u32 - 1);
            assert!(
                census.nontrivial <= bound,
                "n={n} g={g} k={k}: {} > {bound}",
                census.nontrivial
            );
            assert_eq!(census.inspected, (g as u64).pow(k as u32));
        }
    }

    fn reduce_once(
        inst: &Instance<i64>,
        g: usize,
        base: &dyn Solver<i64>,
        record: bool,
    ) -> (Option<Witness<i64>>, ReductionStats) {
        let meter = Meter::new();
        let cfg = ReductionConfig {
            g,
            base,
            record_subproblems: record,
        };
        let out = ksum_self_reduce(inst, &cfg, &meter).unwrap();
        assert_eq!(meter.aux_words_current(), 0);
        out
    }

    #[test]
    fn g_equals_one_is_a_single_base_call() {
        let inst = Instance::single_list(vec![4i64, -1, -3, 9, 2], 3, 0).unwrap();
        let base = Sorted3Sum;
        let (w, stats) = reduce_once(&inst, 1, &base, false);
        assert_eq!(stats.base_calls, 1);
        assert_eq!(w.is_some(), BruteForce.solve(&inst, &Meter::new()).unwrap().is_some());
    }

    #[test]
    fn three_sum_reduce_agrees_with_brute() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let brute = BruteForce;
        let sorted = Sorted3Sum;
        for case in 0..400 {
            let n = rng.random_range(3..=60);
            let range = *[2i64, 6, 25, 200].choose(&mut rng).unwrap();
            let target = rng.random_range(-8..=8);
            let single = rng.random_bool(0.5);
            let inst = if single {
                let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
                Instance::single_list(vals, 3, target).unwrap()
            } else {
                let lists = (0..3)
                    .map(|_| (0..n).map(|_| rng.random_range(-range..=range)).collect())
                    .collect();
                Instance::multi_list(lists, target).unwrap()
            };
            let oracle = BruteForce.solve(&inst, &Meter::new()).unwrap().is_some();
            for g in [2usize, 4, 8, ceil_sqrt(n)] {
                if g > n {
                    continue;
                }
                for base in [&brute as &dyn Solver<i64>, &sorted as &dyn Solver<i64>] {
                    let meter = Meter::new();
                    let cfg = ReductionConfig {
                        g,
                        base,
                        record_subproblems: false,
                    };
                    let (w, _) = three_sum_self_reduce(&inst, &cfg, &meter).unwrap();
                    assert_eq!(
                        w.is_some(),
                        oracle,
                        "case {case} single={single} n={n} g={g}"
                    );
                    if let Some(w) = w {
                        assert!(w.verify(&inst));
                    }
                }
            }
        }
    }

    #[test]
    fn four_and_five_sum_reduce_agree_with_brute() {
        let mut rng = ChaCha8Rng::seed_from_u64(78);
        let ss = SchroeppelShamir4Sum::default();
        let boot: crate::solvers::Bootstrap<i64> =
            crate::solvers::Bootstrap::new(Box::new(SchroeppelShamir4Sum::default()));
        for case in 0..150 {
            let n = rng.random_range(4..=40);
            let range = *[2i64, 8].choose(&mut rng).unwrap();
            let target = rng.random_range(-6..=6);
            let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();

            let inst4 = Instance::single_list(vals.clone(), 4, target).unwrap();
            let oracle4 = BruteForce.solve(&inst4, &Meter::new()).unwrap().is_some();
            for g in [2usize, 4] {
                if g > n {
                    continue;
                }
                let (w, _) = reduce_once(&inst4, g, &ss, false);
                assert_eq!(w.is_some(), oracle4, "case {case} k=4 n={n} g={g}");
            }

            if n >= 5 && n <= 32 {
                let inst5 = Instance::single_list(vals, 5, target).unwrap();
                let oracle5 = BruteForce.solve(&inst5, &Meter::new()).unwrap().is_some();
                let (w, _) = reduce_once(&inst5, 2, &boot, false);
                assert_eq!(w.is_some(), oracle5, "case {case} k=5 n={n}");
            }
        }
    }

    #[test]
    fn reduce_over_meet_in_middle_agrees_with_brute() {
        // exercises canonical splits on union-assembled rows, where item
        // positions are value-ordered rather than index-ordered
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let mim = crate::solvers::MeetInMiddle::default();
        for case in 0..160 {
            let n = rng.random_range(4..=28);
            let range = *[2i64, 5, 20].choose(&mut rng).unwrap();
            let k = if case % 2 == 0 { 3 } else { 4 };
            let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
            let target = rng.random_range(-6..=6);
            let inst = Instance::single_list(vals, k, target).unwrap();
            let oracle = BruteForce.solve(&inst, &Meter::new()).unwrap().is_some();
            for g in [2usize, 3] {
                let (w, _) = reduce_once(&inst, g, &mim, false);
                assert_eq!(w.is_some(), oracle, "case {case} k={k} n={n} g={g}");
                if let Some(w) = w {
                    assert!(w.verify(&inst));
                }
            }
        }
    }

    #[test]
    fn base_call_count_stays_quadratic_in_g() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        let n = 2000usize;
        let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-1000..=1000) * 2).collect();
        let inst = Instance::single_list(vals, 3, 1).unwrap();
        let base = Sorted3Sum;
        for g in [5usize, 10, 25] {
            let (w, stats) = reduce_once(&inst, g, &base, false);
            assert!(w.is_none());
            assert!(
                stats.base_calls <= 6 * (g as u64) * (g as u64),
                "g={g}: {} base calls",
                stats.base_calls
            );
        }
    }

    #[test]
    fn recorded_tuples_form_an_antichain() {
        let mut rng = ChaCha8Rng::seed_from_u64(80);
        let base = Sorted3Sum;
        for _ in 0..40 {
            let n = rng.random_range(12..=60);
            let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-30..=30) * 2).collect();
            let inst = Instance::single_list(vals, 3, 1).unwrap();
            for g in [2usize, 3, 4] {
                let (w, stats) = reduce_once(&inst, g, &base, true);
                assert!(w.is_none());
                let tuples = stats.tuples.unwrap();
                assert_eq!(tuples.len() as u64, stats.base_calls);
                assert!(is_antichain(&tuples), "n={n} g={g} tuples={tuples:?}");
            }
        }
    }

    #[test]
    fn boundary_straddling_solution_is_found() {
        // n=16, g=4 gives s=5: group edges sit at sorted ranks 5|6, 10|11, 15|16.
        // Plant the only candidates at ranks 5, 6, 11 so the solution straddles
        // two group boundaries.
        let sorted: Vec<i64> = vec![
            -100, -90, -80, -70, -60, -10, 0, 10, 20, 30, 40, 50, 60, 70, 80, 90,
        ];
        let target = -60 + -10 + 40; // ranks 5, 6, 11
        let mut vals = sorted.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        vals.shuffle(&mut rng);
        let inst = Instance::single_list(vals, 3, target).unwrap();
        let base = Sorted3Sum;
        let (w, _) = reduce_once(&inst, 4, &base, false);
        let oracle = BruteForce.solve(&inst, &Meter::new()).unwrap();
        assert!(oracle.is_some());
        assert!(w.is_some());
        assert!(w.unwrap().verify(&inst));
    }

    #[test]
    fn space_stays_within_budget_at_sqrt_g() {
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        let n = 1024usize;
        let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-5000..=5000) * 2).collect();
        let inst = Instance::single_list(vals, 3, 1).unwrap();
        let g = ceil_sqrt(n);
        let cap = 20 * (n / g) as u64;
        let meter = Meter::with_cap(cap);
        let base = Sorted3Sum;
        let cfg = ReductionConfig {
            g,
            base: &base,
            record_subproblems: false,
        };
        let (w, _) = ksum_self_reduce(&inst, &cfg, &meter).unwrap();
        assert!(w.is_none());
    }
}
