//! Charged-operation and auxiliary-word accounting.
//!
//! Every solver reads input elements, compares and adds values, and acquires
//! scratch space only through a [`Meter`], which makes simultaneous
//! time/space claims observable and enforceable:
//!
//! - One *word* covers one value, one tagged item, or one index/counter.
//! - Subtraction charges the addition counter (it is an addition in the
//!   comparison-addition model); an item comparison charges one comparison,
//!   tie-breaks included. Pure index bookkeeping (loop counters, positions)
//!   is not charged.
//! - Scratch space is bracketed by [`SpaceToken`]s: acquisition bumps the
//!   current and peak word counts, dropping the token releases the words, so
//!   a solver that runs to completion always restores the count it entered
//!   with.
//! - An optional hard cap turns a space claim into an enforced budget: any
//!   acquisition that would cross it aborts the solve instead of merely being
//!   observed.
//!
//! A meter is owned by exactly one in-flight solve. Distinct solves with
//! distinct meters may run concurrently.

use std::cell::Cell;
use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{Item, Numeric, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Comparison,
    Addition,
    InputRead,
}

/// Counters for one solve: charged operations plus current/peak auxiliary
/// words, with an optional hard space cap.
#[derive(Debug, Default)]
pub struct Meter {
    comparisons: Cell<u64>,
    additions: Cell<u64>,
    input_reads: Cell<u64>,
    aux_current: Cell<u64>,
    aux_peak: Cell<u64>,
    cap: Option<u64>,
}

impl Meter {
    pub fn new() -> Self {
        Meter::default()
    }

    /// A meter whose acquisitions abort once they would cross `cap` words.
    pub fn with_cap(cap: u64) -> Self {
        Meter {
            cap: Some(cap),
            ..Meter::default()
        }
    }

    pub fn charge(&self, kind: OpKind, count: u64) {
        let cell = match kind {
            OpKind::Comparison => &self.comparisons,
            OpKind::Addition => &self.additions,
            OpKind::InputRead => &self.input_reads,
        };
        cell.set(cell.get() + count);
    }

    /// Reserves `words` of auxiliary space. The returned token releases them
    /// when dropped; each token is released exactly once.
    pub fn acquire(&self, words: u64) -> Result<SpaceToken<'_>> {
        let next = self.aux_current.get() + words;
        if let Some(cap) = self.cap {
            if next > cap {
                return Err(Error::SpaceCapExceeded {
                    cap,
                    attempted: next,
                });
            }
        }
        self.aux_current.set(next);
        if next > self.aux_peak.get() {
            self.aux_peak.set(next);
        }
        Ok(SpaceToken { meter: self, words })
    }

    fn release(&self, words: u64) {
        let cur = self.aux_current.get();
        debug_assert!(cur >= words, "release without matching acquire");
        self.aux_current.set(cur - words);
    }

    pub fn comparisons(&self) -> u64 {
        self.comparisons.get()
    }

    pub fn additions(&self) -> u64 {
        self.additions.get()
    }

    pub fn input_reads(&self) -> u64 {
        self.input_reads.get()
    }

    pub fn aux_words_current(&self) -> u64 {
        self.aux_current.get()
    }

    pub fn aux_words_peak(&self) -> u64 {
        self.aux_peak.get()
    }

    /// Sum of all charged operation counters; the library's time proxy.
    pub fn charged_ops(&self) -> u64 {
        self.comparisons.get() + self.additions.get() + self.input_reads.get()
    }
}

/// RAII receipt for acquired scratch words.
#[derive(Debug)]
pub struct SpaceToken<'m> {
    meter: &'m Meter,
    words: u64,
}

impl SpaceToken<'_> {
    pub fn words(&self) -> u64 {
        self.words
    }
}

impl Drop for SpaceToken<'_> {
    fn drop(&mut self) {
        self.meter.release(self.words);
    }
}

/// Metered value comparison.
pub fn cmp_values<V: Numeric>(meter: &Meter, a: V, b: V) -> Ordering {
    meter.charge(OpKind::Comparison, 1);
    a.total_cmp(&b)
}

/// Metered item comparison (one charged unit, tie-breaks included).
pub fn cmp_items<V: Numeric>(meter: &Meter, a: &Item<V>, b: &Item<V>) -> Ordering {
    meter.charge(OpKind::Comparison, 1);
    a.cmp(b)
}

/// Metered checked addition.
pub fn add_values<V: Numeric>(meter: &Meter, a: V, b: V) -> Result<V> {
    meter.charge(OpKind::Addition, 1);
    a.checked_add(b).ok_or(Error::Overflow)
}

/// Metered checked subtraction; charges the addition counter.
pub fn sub_values<V: Numeric>(meter: &Meter, a: V, b: V) -> Result<V> {
    meter.charge(OpKind::Addition, 1);
    a.checked_sub(b).ok_or(Error::Overflow)
}

/// Metered in-place sort by the item total order.
pub fn sort_items<V: Numeric>(meter: &Meter, buf: &mut [Item<V>]) {
    buf.sort_unstable_by(|a, b| cmp_items(meter, a, b));
}

/// One solve's observable record. Serializes to JSON with exactly these
/// field names and to one CSV row (see [`TispReport::CSV_HEADER`]).
#[derive(Clone, Debug, Serialize)]
pub struct TispReport<V: Numeric> {
    pub n: usize,
    pub g: Option<u64>,
    pub h: Option<u64>,
    pub comparisons: u64,
    pub additions: u64,
    pub input_reads: u64,
    pub aux_words_peak: u64,
    pub wall_time: f64,
    pub decision: bool,
    pub witness: Option<Witness<V>>,
    pub solver: String,
    pub time_claim: String,
    pub space_claim: String,
}

impl<V: Numeric> TispReport<V> {
    /// Column order of [`TispReport::csv_row`]. Wall time is the only
    /// non-deterministic column.
    pub const CSV_HEADER: &'static str =
        "n,g,h,comparisons,additions,input_reads,aux_words_peak,wall_time,decision";

    pub fn new(
        n: usize,
        g: Option<u64>,
        h: Option<u64>,
        meter: &Meter,
        wall_time: f64,
        witness: Option<Witness<V>>,
        solver: &crate::solvers::SolverSpec,
    ) -> Self {
        TispReport {
            n,
            g,
            h,
            comparisons: meter.comparisons(),
            additions: meter.additions(),
            input_reads: meter.input_reads(),
            aux_words_peak: meter.aux_words_peak(),
            wall_time,
            decision: witness.is_some(),
            witness,
            solver: solver.name.clone(),
            time_claim: solver.time_claim.clone(),
            space_claim: solver.space_claim.clone(),
        }
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{:.6},{}",
            self.n,
            opt(self.g),
            opt(self.h),
            self.comparisons,
            self.additions,
            self.input_reads,
            self.aux_words_peak,
            self.wall_time,
            self.decision
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acquire_release_bracketing() {
        let m = Meter::new();
        {
            let t = m.acquire(10).unwrap();
            assert_eq!(m.aux_words_current(), 10);
            assert_eq!(t.words(), 10);
        }
        assert_eq!(m.aux_words_current(), 0);
        assert!(m.aux_words_peak() >= 10);
    }

    #[test]
    fn acquire_zero_is_counter_noop() {
        let m = Meter::new();
        let before = m.aux_words_current();
        let _t = m.acquire(0).unwrap();
        assert_eq!(m.aux_words_current(), before);
    }

    #[test]
    fn acquire_additivity() {
        let m = Meter::new();
        let a = m.acquire(5).unwrap();
        let b = m.acquire(7).unwrap();
        assert_eq!(m.aux_words_peak(), 12);
        drop(a);
        drop(b);
        assert_eq!(m.aux_words_current(), 0);
        assert_eq!(m.aux_words_peak(), 12);
    }

    #[test]
    fn hard_cap_signals() {
        let m = Meter::with_cap(8);
        let _a = m.acquire(6).unwrap();
        match m.acquire(3) {
            Err(Error::SpaceCapExceeded { cap: 8, attempted: 9 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
        // failed acquire must not leak
        assert_eq!(m.aux_words_current(), 6);
    }

    #[test]
    fn charge_examples() {
        let m = Meter::new();
        m.charge(OpKind::Comparison, 1);
        m.charge(OpKind::Addition, 3);
        m.charge(OpKind::InputRead, 0);
        assert_eq!(m.comparisons(), 1);
        assert_eq!(m.additions(), 3);
        assert_eq!(m.input_reads(), 0);
        assert_eq!(m.charged_ops(), 4);
    }

    #[test]
    fn csv_row_shape() {
        let m = Meter::new();
        m.charge(OpKind::Comparison, 2);
        let spec = crate::solvers::SolverSpec {
            name: "test".into(),
            time_claim: "n".into(),
            space_claim: "1".into(),
        };
        let report: TispReport<i64> = TispReport::new(5, Some(2), None, &m, 0.25, None, &spec);
        assert_eq!(report.csv_row(), "5,2,,2,0,0,0,0.250000,false");
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["n"], 5);
        assert_eq!(json["decision"], false);
        assert!(json["witness"].is_null());
    }
}
