//! Arity lift: fix each element of the last list in turn and solve the
//! remaining (k−1)-SUM with the shifted target. Adds one pass over the input
//! and O(1) words on top of the inner solver.

use crate::error::Result;
use crate::meter::{sub_values, Meter, OpKind};
use crate::solvers::{check_arity, Solver, SolverSpec};
use crate::types::{Instance, Numeric, Witness};

pub struct Bootstrap<V: Numeric> {
    inner: Box<dyn Solver<V>>,
}

impl<V: Numeric> Bootstrap<V> {
    pub fn new(inner: Box<dyn Solver<V>>) -> Self {
        Bootstrap { inner }
    }
}

impl<V: Numeric> Solver<V> for Bootstrap<V> {
    fn spec(&self) -> SolverSpec {
        SolverSpec {
            name: format!("bootstrap({})", self.inner.spec().name),
            time_claim: "n * T_inner(n)".into(),
            space_claim: "S_inner(n) + 1".into(),
        }
    }

    fn supports_arity(&self, k: usize) -> bool {
        k >= 3 && self.inner.supports_arity(k - 1)
    }

    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        check_arity(self, inst)?;
        let k = inst.k();
        for pos in 0..inst.row_len(k - 1) {
            meter.charge(OpKind::InputRead, 1);
            let fixed = inst.item(k - 1, pos);
            if inst.is_excluded(fixed.identity()) {
                continue;
            }
            let inner_target = sub_values(meter, inst.target(), fixed.value)?;
            // the narrowed instance: k−1 row handles plus the exclusion entry
            let _token = meter.acquire(k as u64 + inst.excluded().len() as u64 + 2)?;
            let sub = inst.prefix(
                k - 1,
                inner_target,
                inst.is_single_list().then(|| fixed.identity()),
            );
            if let Some(inner) = self.inner.solve(&sub, meter)? {
                let mut items = inner.items;
                items.push(fixed);
                return Ok(Some(Witness::build(items, meter)?));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{BruteForce, SchroeppelShamir4Sum, TwoSum};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn five_sum_full_list() {
        let inst = Instance::single_list(vec![-10i64, 1, 2, 3, 4], 5, 0).unwrap();
        let solver = Bootstrap::new(Box::new(SchroeppelShamir4Sum::default()));
        let m = Meter::new();
        let w = solver.solve(&inst, &m).unwrap().unwrap();
        assert!(w.verify(&inst));
        assert_eq!(m.aux_words_current(), 0);
    }

    #[test]
    fn empty_last_list_is_none() {
        let inst = Instance::multi_list(vec![vec![], vec![], vec![]], 0).unwrap();
        let solver: Bootstrap<i64> = Bootstrap::new(Box::new(TwoSum));
        let m = Meter::new();
        assert!(solver.solve(&inst, &m).unwrap().is_none());
    }

    #[test]
    fn adds_constant_words_over_inner() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 200usize;
        let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-50_000..=50_000) * 2).collect();
        let inst = Instance::single_list(vals, 3, 1).unwrap();

        let inner_meter = Meter::new();
        TwoSum
            .solve(&inst.prefix(2, 1, None), &inner_meter)
            .unwrap();
        let inner_peak = inner_meter.aux_words_peak();

        let capped = Meter::with_cap(inner_peak + 4 * 3 + 8);
        let boot: Bootstrap<i64> = Bootstrap::new(Box::new(TwoSum));
        assert!(boot.solve(&inst, &capped).unwrap().is_none());
    }

    #[test]
    fn five_sum_agrees_with_brute() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let solver = Bootstrap::new(Box::new(SchroeppelShamir4Sum::default()));
        for _ in 0..150 {
            let n = rng.random_range(5..=15);
            let range = *[2i64, 5].choose(&mut rng).unwrap();
            let vals: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
            let target = rng.random_range(-5..=5);
            let inst = Instance::single_list(vals, 5, target).unwrap();
            let got = solver.solve(&inst, &Meter::new()).unwrap();
            let oracle = BruteForce.solve(&inst, &Meter::new()).unwrap();
            assert_eq!(got.is_some(), oracle.is_some());
            if let Some(w) = got {
                assert!(w.verify(&inst));
            }
        }
    }

    #[test]
    fn nested_bootstrap_six_sum() {
        let solver: Bootstrap<i64> = Bootstrap::new(Box::new(Bootstrap::new(Box::new(
            SchroeppelShamir4Sum::default(),
        ))));
        let inst = Instance::single_list(vec![3i64, -1, -2, 4, -4, 0, 1], 6, 0).unwrap();
        let got = solver.solve(&inst, &Meter::new()).unwrap();
        let oracle = BruteForce.solve(&inst, &Meter::new()).unwrap();
        assert_eq!(got.is_some(), oracle.is_some());
    }
}
