//! Sort-and-scan solvers: 2-SUM and the quadratic three-list scan. The
//! quadratic scan is the stock base case for the 3-SUM self-reduction.

use std::cmp::Ordering;

use crate::error::Result;
use crate::meter::{add_values, cmp_values, sort_items, Meter};
use crate::solvers::{check_arity, Solver, SolverSpec};
use crate::types::{Instance, Item, Numeric, RowView, Witness};

fn sorted_copy<'m, V: Numeric>(
    view: &RowView<'_, V>,
    meter: &'m Meter,
) -> Result<(Vec<Item<V>>, crate::meter::SpaceToken<'m>)> {
    let token = meter.acquire(view.len() as u64)?;
    let mut items: Vec<Item<V>> = view.scan(meter).collect();
    sort_items(meter, &mut items);
    Ok((items, token))
}

/// Sort plus inward two-cursor scan: O(n log n) time, O(n) words.
pub struct TwoSum;

impl<V: Numeric> Solver<V> for TwoSum {
    fn spec(&self) -> SolverSpec {
        SolverSpec {
            name: "two-sum".into(),
            time_claim: "n log n".into(),
            space_claim: "n".into(),
        }
    }

    fn supports_arity(&self, k: usize) -> bool {
        k == 2
    }

    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        check_arity(self, inst)?;
        let target = inst.target();
        if inst.is_single_list() {
            // one sorted copy; cursor positions are distinct indices
            let (items, _token) = sorted_copy(&inst.row(0), meter)?;
            if items.len() < 2 {
                return Ok(None);
            }
            let (mut lo, mut hi) = (0usize, items.len() - 1);
            while lo < hi {
                let sum = add_values(meter, items[lo].value, items[hi].value)?;
                match cmp_values(meter, sum, target) {
                    Ordering::Less => lo += 1,
                    Ordering::Greater => hi -= 1,
                    Ordering::Equal => {
                        return Ok(Some(Witness::build(
                            vec![items[lo], items[hi]],
                            meter,
                        )?));
                    }
                }
            }
            Ok(None)
        } else {
            let (a, _ta) = sorted_copy(&inst.row(0), meter)?;
            let (b, _tb) = sorted_copy(&inst.row(1), meter)?;
            if a.is_empty() || b.is_empty() {
                return Ok(None);
            }
            let mut lo = 0usize;
            let mut hi = b.len() - 1;
            loop {
                let sum = add_values(meter, a[lo].value, b[hi].value)?;
                match cmp_values(meter, sum, target) {
                    Ordering::Less => {
                        lo += 1;
                        if lo == a.len() {
                            return Ok(None);
                        }
                    }
                    Ordering::Greater => {
                        if hi == 0 {
                            return Ok(None);
                        }
                        hi -= 1;
                    }
                    Ordering::Equal => {
                        return Ok(Some(Witness::build(vec![a[lo], b[hi]], meter)?));
                    }
                }
            }
        }
    }
}

/// The classic quadratic 3-SUM: sort, then for each anchor run an inward
/// two-cursor scan. O(n^2) charged time, O(n) words. Single-list instances
/// scan strictly increasing positions of one sorted copy, which makes index
/// distinctness structural rather than a filter.
pub struct Sorted3Sum;

impl<V: Numeric> Solver<V> for Sorted3Sum {
    fn spec(&self) -> SolverSpec {
        SolverSpec {
            name: "sorted-3sum".into(),
            time_claim: "n^2".into(),
            space_claim: "n".into(),
        }
    }

    fn supports_arity(&self, k: usize) -> bool {
        k == 3
    }

    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        check_arity(self, inst)?;
        let target = inst.target();
        if inst.is_single_list() {
            let (items, _token) = sorted_copy(&inst.row(0), meter)?;
            let n = items.len();
            if n < 3 {
                return Ok(None);
            }
            for anchor in 0..n - 2 {
                let a = items[anchor].value;
                let mut lo = anchor + 1;
                let mut hi = n - 1;
                while lo < hi {
                    let pair = add_values(meter, items[lo].value, items[hi].value)?;
                    let sum = add_values(meter, a, pair)?;
                    match cmp_values(meter, sum, target) {
                        Ordering::Less => lo += 1,
                        Ordering::Greater => hi -= 1,
                        Ordering::Equal => {
                            return Ok(Some(Witness::build(
                                vec![items[anchor], items[lo], items[hi]],
                                meter,
                            )?));
                        }
                    }
                }
            }
            Ok(None)
        } else {
            let (a, _ta) = sorted_copy(&inst.row(0), meter)?;
            let (b, _tb) = sorted_copy(&inst.row(1), meter)?;
            let (c, _tc) = sorted_copy(&inst.row(2), meter)?;
            if b.is_empty() || c.is_empty() {
                return Ok(None);
            }
            for anchor in &a {
                let mut lo = 0usize;
                let mut hi = c.len() - 1;
                loop {
                    let pair = add_values(meter, b[lo].value, c[hi].value)?;
                    let sum = add_values(meter, anchor.value, pair)?;
                    match cmp_values(meter, sum, target) {
                        Ordering::Less => {
                            lo += 1;
                            if lo == b.len() {
                                break;
                            }
                        }
                        Ordering::Greater => {
                            if hi == 0 {
                                break;
                            }
                            hi -= 1;
                        }
                        Ordering::Equal => {
                            return Ok(Some(Witness::build(
                                vec![*anchor, b[lo], c[hi]],
                                meter,
                            )?));
                        }
                    }
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::BruteForce;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_sum_examples() {
        let m = Meter::new();
        let inst = Instance::single_list(vec![4i64, -4], 2, 0).unwrap();
        let w = TwoSum.solve(&inst, &m).unwrap().unwrap();
        assert!(w.verify(&inst));

        let inst = Instance::single_list(vec![1i64, 2], 2, 0).unwrap();
        assert!(TwoSum.solve(&inst, &m).unwrap().is_none());

        let inst = Instance::single_list(vec![3i64, 5, -8, 1], 2, -5).unwrap();
        let w = TwoSum.solve(&inst, &m).unwrap().unwrap();
        let mut vals: Vec<i64> = w.items.iter().map(|x| x.value).collect();
        vals.sort_unstable();
        assert_eq!(vals, vec![-8, 3]);
        assert_eq!(m.aux_words_current(), 0);
    }

    #[test]
    fn sorted_3sum_examples() {
        let m = Meter::new();
        let inst =
            Instance::multi_list(vec![vec![1i64, 2], vec![3, 4], vec![-5, 9]], 0).unwrap();
        let w = Sorted3Sum.solve(&inst, &m).unwrap().unwrap();
        let mut vals: Vec<i64> = w.items.iter().map(|x| x.value).collect();
        vals.sort_unstable();
        assert_eq!(vals, vec![-5, 1, 4]);
        assert!(w.verify(&inst));

        // all-zero three-list instance
        let inst = Instance::multi_list(vec![vec![0i64], vec![0], vec![0]], 0).unwrap();
        assert!(Sorted3Sum.solve(&inst, &m).unwrap().is_some());

        // single-list [0] cannot provide three distinct indices
        let inst = Instance::single_list(vec![0i64], 3, 0).unwrap();
        assert!(Sorted3Sum.solve(&inst, &m).unwrap().is_none());
        assert_eq!(m.aux_words_current(), 0);
    }

    #[test]
    fn space_stays_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 500usize;
        let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-10_000..=10_000) * 2).collect();
        let single = Instance::single_list(vals.clone(), 3, 1).unwrap();
        let m = Meter::with_cap(2 * n as u64 + 32);
        assert!(Sorted3Sum.solve(&single, &m).unwrap().is_none());

        let lists = (0..3).map(|_| vals.clone()).collect();
        let multi = Instance::multi_list(lists, 1).unwrap();
        let m = Meter::with_cap(4 * n as u64 + 32);
        assert!(Sorted3Sum.solve(&multi, &m).unwrap().is_none());
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for case in 0..500 {
            let n = rng.random_range(1..=24);
            let range = *[2i64, 5, 40].choose(&mut rng).unwrap();
            let target = rng.random_range(-6..=6);
            let single = rng.random_bool(0.5);
            let (inst2, inst3);
            if single {
                let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
                inst2 = Instance::single_list(vals.clone(), 2, target).unwrap();
                inst3 = Instance::single_list(vals, 3, target).unwrap();
            } else {
                let lists = |k: usize, rng: &mut ChaCha8Rng| {
                    (0..k)
                        .map(|_| (0..n).map(|_| rng.random_range(-range..=range)).collect())
                        .collect::<Vec<Vec<i64>>>()
                };
                inst2 = Instance::multi_list(lists(2, &mut rng), target).unwrap();
                inst3 = Instance::multi_list(lists(3, &mut rng), target).unwrap();
            }
            for (inst, solver) in [
                (&inst2, &TwoSum as &dyn Solver<i64>),
                (&inst3, &Sorted3Sum as &dyn Solver<i64>),
            ] {
                let m = Meter::new();
                let got = solver.solve(inst, &m).unwrap();
                let oracle = BruteForce.solve(inst, &Meter::new()).unwrap();
                assert_eq!(
                    got.is_some(),
                    oracle.is_some(),
                    "case {case} single={single} n={n}"
                );
                if let Some(w) = got {
                    assert!(w.verify(inst));
                }
                assert_eq!(m.aux_words_current(), 0);
            }
        }
    }
}
