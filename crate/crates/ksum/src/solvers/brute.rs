//! Exhaustive enumeration: the correctness oracle every other solver is
//! differentially tested against.

use crate::error::Result;
use crate::meter::{add_values, cmp_values, Meter, OpKind};
use crate::solvers::{check_arity, Solver, SolverSpec};
use crate::types::{Instance, Item, Numeric, Witness};

/// O(n^k) time, O(k) auxiliary words. Single-list instances enumerate index
/// combinations in increasing order; multi-list instances enumerate the full
/// position product. Returns the first witness in enumeration order.
pub struct BruteForce;

impl<V: Numeric> Solver<V> for BruteForce {
    fn spec(&self) -> SolverSpec {
        SolverSpec {
            name: "brute-force".into(),
            time_claim: "n^k".into(),
            space_claim: "k".into(),
        }
    }

    fn supports_arity(&self, k: usize) -> bool {
        k >= 2
    }

    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        check_arity(self, inst)?;
        let k = inst.k();
        // chosen items + partial sums + odometer
        let _token = meter.acquire(3 * k as u64 + 2)?;
        let mut chosen: Vec<Item<V>> = Vec::with_capacity(k);
        descend(inst, meter, 0, 0, V::ZERO, &mut chosen)
    }
}

fn descend<V: Numeric>(
    inst: &Instance<V>,
    meter: &Meter,
    depth: usize,
    start: usize,
    partial: V,
    chosen: &mut Vec<Item<V>>,
) -> Result<Option<Witness<V>>> {
    let k = inst.k();
    if depth == k {
        if cmp_values(meter, partial, inst.target()) == std::cmp::Ordering::Equal {
            return Ok(Some(Witness::build(chosen.clone(), meter)?));
        }
        return Ok(None);
    }
    let from = if inst.is_single_list() { start } else { 0 };
    for pos in from..inst.row_len(depth) {
        meter.charge(OpKind::InputRead, 1);
        let item = inst.item(depth, pos);
        if inst.is_excluded(item.identity()) {
            continue;
        }
        let sum = add_values(meter, partial, item.value)?;
        chosen.push(item);
        let found = descend(inst, meter, depth + 1, pos + 1, sum, chosen)?;
        chosen.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_planted_triple() {
        let inst = Instance::single_list(vec![-7i64, 2, 5, 9], 3, 0).unwrap();
        let m = Meter::new();
        let w = BruteForce.solve(&inst, &m).unwrap().unwrap();
        let mut vals: Vec<i64> = w.items.iter().map(|x| x.value).collect();
        vals.sort_unstable();
        assert_eq!(vals, vec![-7, 2, 5]);
        assert!(w.verify(&inst));
        assert_eq!(m.aux_words_current(), 0);
    }

    #[test]
    fn all_positive_has_no_zero_triple() {
        let inst = Instance::single_list(vec![1i64, 2, 3], 3, 0).unwrap();
        let m = Meter::new();
        assert!(BruteForce.solve(&inst, &m).unwrap().is_none());
    }

    #[test]
    fn distinct_indices_required() {
        let inst = Instance::single_list(vec![0i64], 3, 0).unwrap();
        let m = Meter::new();
        assert!(BruteForce.solve(&inst, &m).unwrap().is_none());
    }

    #[test]
    fn multi_list_draws_one_per_list() {
        let inst = Instance::multi_list(vec![vec![0i64], vec![0], vec![0]], 0).unwrap();
        let m = Meter::new();
        let w = BruteForce.solve(&inst, &m).unwrap().unwrap();
        assert!(w.verify(&inst));
    }

    #[test]
    fn space_stays_order_k() {
        let inst = Instance::single_list((0..60).map(|i| i * 2 + 1).collect::<Vec<i64>>(), 3, 4).unwrap();
        let m = Meter::with_cap(4 * 3 + 8);
        assert!(BruteForce.solve(&inst, &m).unwrap().is_none());
    }

    #[test]
    fn respects_exclusions() {
        let inst = Instance::single_list(vec![4i64, -4, 0, 9], 3, 9).unwrap();
        let m = Meter::new();
        // excluding index 1 (value -4) removes the only zero-sum pair
        let shrunk = inst.prefix(2, 0, Some((0, 1)));
        assert!(BruteForce.solve(&shrunk, &m).unwrap().is_none());
        let shrunk_ok = inst.prefix(2, 0, Some((0, 3)));
        assert!(BruteForce.solve(&shrunk_ok, &m).unwrap().is_some());
    }
}
