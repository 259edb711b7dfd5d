//! Meet-in-the-middle: materialize all half-size subset sums of one side,
//! sort them, and stream the other side against them. Fast and memory-hungry;
//! the configurable budget keeps it at desk scale.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::meter::{add_values, cmp_values, sub_values, Meter, OpKind};
use crate::solvers::{check_arity, Solver, SolverSpec};
use crate::types::{Instance, Item, Numeric, Witness};

/// Sorted-side entry: the part sum, its largest source index, and an offset
/// into the item pool for witness reconstruction.
struct HalfEntry<V: Numeric> {
    sum: V,
    max_index: u32,
    off: u32,
}

/// Reduces k-SUM to 2-SUM over `ceil(k/2)`-part sums. In single-list mode
/// parts are increasing position combinations and a match additionally
/// requires `max(left positions) < min(right positions)`: every solution has
/// exactly one such canonical split, so the constraint filters duplicates
/// without losing completeness.
pub struct MeetInMiddle {
    /// Ceiling on materialized words for the stored (left) side.
    pub max_words: u64,
}

impl Default for MeetInMiddle {
    fn default() -> Self {
        // 16M words; far above anything the test grids materialize.
        MeetInMiddle {
            max_words: 1 << 24,
        }
    }
}

impl MeetInMiddle {
    pub fn with_budget(max_words: u64) -> Self {
        MeetInMiddle { max_words }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

impl<V: Numeric> Solver<V> for MeetInMiddle {
    fn spec(&self) -> SolverSpec {
        SolverSpec {
            name: "meet-in-middle".into(),
            time_claim: "n^ceil(k/2) log n".into(),
            space_claim: "n^ceil(k/2)".into(),
        }
    }

    fn supports_arity(&self, k: usize) -> bool {
        k >= 3
    }

    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        check_arity(self, inst)?;
        let k = inst.k();
        let left_q = k.div_ceil(2);

        let entry_count: u128 = if inst.is_single_list() {
            binomial(inst.n() as u128, left_q as u128)
        } else {
            (0..left_q).map(|r| inst.row_len(r) as u128).product()
        };
        let words = entry_count.saturating_mul(3 + left_q as u128);
        if words > self.max_words as u128 {
            return Err(Error::BudgetExceeded {
                budget: self.max_words,
                required: words.min(u64::MAX as u128) as u64,
            });
        }

        let _token = meter.acquire(words as u64 + 2 * k as u64)?;
        let mut entries: Vec<HalfEntry<V>> = Vec::with_capacity(entry_count as usize);
        let mut pool: Vec<Item<V>> = Vec::with_capacity(entry_count as usize * left_q);
        let mut combo: Vec<Item<V>> = Vec::with_capacity(left_q);
        build_side(
            inst,
            meter,
            0,
            left_q,
            0,
            V::ZERO,
            &mut combo,
            &mut |items, sum| {
                let off = pool.len() as u32;
                pool.extend_from_slice(items);
                entries.push(HalfEntry {
                    sum,
                    // index extremes, not positions: assembled rows are not
                    // position-ordered by index
                    max_index: items.iter().map(|i| i.index).max().unwrap_or(0),
                    off,
                });
            },
        )?;
        entries.sort_unstable_by(|a, b| {
            cmp_values(meter, a.sum, b.sum).then(a.max_index.cmp(&b.max_index))
        });

        // Stream the right side against the sorted left table.
        let mut right: Vec<Item<V>> = Vec::with_capacity(k - left_q);
        let found = scan_right(inst, meter, left_q, k, 0, V::ZERO, &mut right, &entries)?;
        match found {
            None => Ok(None),
            Some((entry_idx, right_items)) => {
                let e = &entries[entry_idx];
                let mut items: Vec<Item<V>> =
                    pool[e.off as usize..e.off as usize + left_q].to_vec();
                items.extend_from_slice(&right_items);
                Ok(Some(Witness::build(items, meter)?))
            }
        }
    }
}

/// Enumerate part combinations of rows `[row_from, row_from + q)` (multi-list)
/// or increasing position q-combinations of the shared list (single-list),
/// carrying the running sum.
#[allow(clippy::too_many_arguments)]
fn build_side<V: Numeric>(
    inst: &Instance<V>,
    meter: &Meter,
    depth: usize,
    q: usize,
    start: usize,
    partial: V,
    combo: &mut Vec<Item<V>>,
    emit: &mut impl FnMut(&[Item<V>], V),
) -> Result<()> {
    if depth == q {
        emit(combo, partial);
        return Ok(());
    }
    let row = if inst.is_single_list() { 0 } else { depth };
    let from = if inst.is_single_list() { start } else { 0 };
    for pos in from..inst.row_len(row) {
        meter.charge(OpKind::InputRead, 1);
        let item = inst.item(row, pos);
        if inst.is_excluded(item.identity()) {
            continue;
        }
        let sum = add_values(meter, partial, item.value)?;
        combo.push(item);
        build_side(inst, meter, depth + 1, q, pos + 1, sum, combo, emit)?;
        combo.pop();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn scan_right<V: Numeric>(
    inst: &Instance<V>,
    meter: &Meter,
    row_from: usize,
    row_to: usize,
    start: usize,
    partial: V,
    combo: &mut Vec<Item<V>>,
    entries: &[HalfEntry<V>],
) -> Result<Option<(usize, Vec<Item<V>>)>> {
    if row_from == row_to {
        let want = sub_values(meter, inst.target(), partial)?;
        // run start: first entry with sum >= want
        let idx = entries.partition_point(|e| cmp_values(meter, e.sum, want) == Ordering::Less);
        if idx == entries.len() {
            return Ok(None);
        }
        let e = &entries[idx];
        if cmp_values(meter, e.sum, want) != Ordering::Equal {
            return Ok(None);
        }
        if inst.is_single_list() {
            // entries with this sum are ordered by max index; the first is
            // the only candidate that can clear the canonical split
            let min_right = combo.iter().map(|i| i.index).min().unwrap();
            if e.max_index < min_right {
                return Ok(Some((idx, combo.clone())));
            }
            return Ok(None);
        }
        return Ok(Some((idx, combo.clone())));
    }
    let row = if inst.is_single_list() { 0 } else { row_from };
    let from = if inst.is_single_list() { start } else { 0 };
    for pos in from..inst.row_len(row) {
        meter.charge(OpKind::InputRead, 1);
        let item = inst.item(row, pos);
        if inst.is_excluded(item.identity()) {
            continue;
        }
        let sum = add_values(meter, partial, item.value)?;
        combo.push(item);
        let found =
            scan_right(inst, meter, row_from + 1, row_to, pos + 1, sum, combo, entries)?;
        combo.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}
