//! Order-statistic machinery in bounded space: in-buffer deterministic
//! selection, a streaming bounded-memory selector, threshold-keyed group
//! extraction, and two whole-list selection scans (a bounded-range binary
//! search for integers and a batch scan for reals).
//!
//! [`next_group`] is the workhorse: the `s` smallest items of a list strictly
//! above a cut, in one charged pass and `O(s)` auxiliary words. Successive
//! calls with `Cut::After(prev_max)` partition a list into groups exactly,
//! even on duplicate-heavy inputs, because the cut is a full item key.

use crate::error::{Error, Result};
use crate::meter::{cmp_items, cmp_values, Meter, OpKind, SpaceToken};
use crate::types::{Cut, Item, Mode, Numeric, RowView};

/// Charged words per selection recursion frame (loop counters and the pivot).
const FRAME_WORDS: u64 = 4;

/// Rank-`rank` (1-based) smallest item of `buf` under the item total order.
/// Items must be pairwise distinct (the item order is strict), which every
/// single scan of a list guarantees.
///
/// Deterministic median-of-medians pivoting, entirely in the caller's buffer:
/// groups of five are sorted in place, their medians are swapped to a prefix,
/// the pivot is selected recursively from that prefix, and the search then
/// recurses into one partition side only. The buffer is permuted. Charged
/// comparisons and acquired words are both linear in the buffer length.
pub fn mom_select<V: Numeric>(meter: &Meter, buf: &mut [Item<V>], rank: usize) -> Result<Item<V>> {
    if rank == 0 || rank > buf.len() {
        return Err(Error::RankOutOfRange {
            rank,
            len: buf.len(),
        });
    }
    select_rec(meter, buf, rank)
}

fn select_rec<V: Numeric>(meter: &Meter, buf: &mut [Item<V>], rank: usize) -> Result<Item<V>> {
    let _frame = meter.acquire(FRAME_WORDS)?;
    let n = buf.len();
    if n <= 10 {
        insertion_sort(meter, buf);
        return Ok(buf[rank - 1]);
    }

    // Lower median of each group of five, swapped into a prefix.
    let mut medians = 0;
    let mut i = 0;
    while i < n {
        let end = (i + 5).min(n);
        insertion_sort(meter, &mut buf[i..end]);
        let mid = i + (end - i - 1) / 2;
        buf.swap(medians, mid);
        medians += 1;
        i = end;
    }

    let pivot = select_rec(meter, &mut buf[..medians], medians.div_ceil(2))?;
    let pivot_pos = partition_around(meter, buf, &pivot);
    match (rank - 1).cmp(&pivot_pos) {
        std::cmp::Ordering::Equal => Ok(buf[pivot_pos]),
        std::cmp::Ordering::Less => select_rec(meter, &mut buf[..pivot_pos], rank),
        std::cmp::Ordering::Greater => {
            select_rec(meter, &mut buf[pivot_pos + 1..], rank - pivot_pos - 1)
        }
    }
}

fn insertion_sort<V: Numeric>(meter: &Meter, buf: &mut [Item<V>]) {
    for i in 1..buf.len() {
        let mut j = i;
        while j > 0 && cmp_items(meter, &buf[j - 1], &buf[j]) == std::cmp::Ordering::Greater {
            buf.swap(j - 1, j);
            j -= 1;
        }
    }
}

/// Lomuto partition around a pivot known to be present exactly once (items
/// are pairwise distinct). Returns the pivot's final position.
fn partition_around<V: Numeric>(meter: &Meter, buf: &mut [Item<V>], pivot: &Item<V>) -> usize {
    let n = buf.len();
    let pos = buf
        .iter()
        .position(|x| x.identity() == pivot.identity())
        .expect("pivot present in buffer");
    buf.swap(pos, n - 1);
    let mut store = 0;
    for i in 0..n - 1 {
        if cmp_items(meter, &buf[i], pivot) == std::cmp::Ordering::Less {
            buf.swap(i, store);
            store += 1;
        }
    }
    buf.swap(store, n - 1);
    store
}

/// Bounded-memory tracker of the `s` smallest items of a stream of pairwise
/// distinct items.
///
/// Holds at most `2s` items. When the buffer fills, the `(s+1)`-th smallest
/// is selected in place and everything at or above it is discarded — the item
/// order is strict, so "strictly below the pivot" keeps exactly the `s`
/// smallest seen. The discarded pivot doubles as an admission threshold:
/// later items at or above it can never rejoin the running `s` smallest, so
/// they are dropped on push without occupying a slot. Pushes are amortized
/// O(1) charged operations.
pub struct StreamingSelector<'m, V: Numeric> {
    meter: &'m Meter,
    buf: Vec<Item<V>>,
    s: usize,
    threshold: Option<Item<V>>,
    compactions: u64,
    _token: SpaceToken<'m>,
}

impl<'m, V: Numeric> StreamingSelector<'m, V> {
    pub fn new(meter: &'m Meter, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParameter("selector needs s >= 1".into()));
        }
        let token = meter.acquire(2 * s as u64)?;
        Ok(StreamingSelector {
            meter,
            buf: Vec::with_capacity(2 * s),
            s,
            threshold: None,
            compactions: 0,
            _token: token,
        })
    }

    pub fn push(&mut self, item: Item<V>) -> Result<()> {
        if let Some(t) = &self.threshold {
            if cmp_items(self.meter, &item, t) != std::cmp::Ordering::Less {
                return Ok(());
            }
        }
        self.buf.push(item);
        if self.buf.len() == 2 * self.s {
            self.compact()?;
        }
        Ok(())
    }

    fn compact(&mut self) -> Result<()> {
        let pivot = mom_select(self.meter, &mut self.buf, self.s + 1)?;
        let meter = self.meter;
        self.buf
            .retain(|x| cmp_items(meter, x, &pivot) == std::cmp::Ordering::Less);
        debug_assert_eq!(self.buf.len(), self.s);
        self.threshold = Some(pivot);
        self.compactions += 1;
        Ok(())
    }

    /// Compactions run so far (including the final one, after `finalize`).
    pub fn compactions(&self) -> u64 {
        self.compactions
    }

    /// The `s` smallest items pushed — all of them, if fewer than `s` — as an
    /// unordered group with its extremes.
    pub fn finalize(mut self) -> Result<Group<'m, V>> {
        if self.buf.len() > self.s {
            let pivot = mom_select(self.meter, &mut self.buf, self.s + 1)?;
            let meter = self.meter;
            self.buf
                .retain(|x| cmp_items(meter, x, &pivot) == std::cmp::Ordering::Less);
            self.compactions += 1;
        }
        let mut min_key = None;
        let mut max_key = None;
        for item in &self.buf {
            match &min_key {
                None => min_key = Some(*item),
                Some(m) if cmp_items(self.meter, item, m) == std::cmp::Ordering::Less => {
                    min_key = Some(*item)
                }
                _ => {}
            }
            match &max_key {
                None => max_key = Some(*item),
                Some(m) if cmp_items(self.meter, item, m) == std::cmp::Ordering::Greater => {
                    max_key = Some(*item)
                }
                _ => {}
            }
        }
        // Swap the 2s-slot reservation for one sized to the survivors.
        let token = self.meter.acquire(self.buf.len() as u64)?;
        let mut items = std::mem::take(&mut self.buf);
        items.shrink_to_fit();
        Ok(Group {
            items,
            min_key,
            max_key,
            start_rank: 1,
            compactions: self.compactions,
            _token: token,
        })
    }
}

/// A batch of items extracted above a cut: an unordered buffer plus its
/// extremes. `count < s` only when the source ran out above the cut.
pub struct Group<'m, V: Numeric> {
    items: Vec<Item<V>>,
    min_key: Option<Item<V>>,
    max_key: Option<Item<V>>,
    start_rank: usize,
    compactions: u64,
    _token: SpaceToken<'m>,
}

impl<V: Numeric> Group<'_, V> {
    pub fn count(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Item<V>] {
        &self.items
    }

    pub fn min_key(&self) -> Option<&Item<V>> {
        self.min_key.as_ref()
    }

    pub fn max_key(&self) -> Option<&Item<V>> {
        self.max_key.as_ref()
    }

    /// 1-based rank (within the scanned view, after the exclusion filter) of
    /// this group's first item; maps windows onto the ideal group grid.
    pub fn start_rank(&self) -> usize {
        self.start_rank
    }

    pub fn compactions(&self) -> u64 {
        self.compactions
    }
}

/// The `s` smallest items of `view` strictly above `cut` (fewer if the list
/// is exhausted), in one charged pass and `O(s)` auxiliary words.
pub fn next_group<'m, V: Numeric>(
    view: &RowView<'_, V>,
    cut: Cut<V>,
    s: usize,
    meter: &'m Meter,
) -> Result<Group<'m, V>> {
    let mut selector = StreamingSelector::new(meter, s)?;
    let mut below = 0usize;
    for item in view.scan(meter) {
        meter.charge(OpKind::Comparison, 1); // cut test
        if cut.admits(&item) {
            selector.push(item)?;
        } else {
            below += 1;
        }
    }
    let mut group = selector.finalize()?;
    group.start_rank = below + 1;
    Ok(group)
}

/// Binary search over the integer value range `[-range, range]`: the smallest
/// integer `v` with at least `rank` list values `<= v`, which is the rank-th
/// smallest value. One full pass per halving, O(1) auxiliary words. Rejects
/// real-mode instances.
pub fn bounded_range_select<V: Numeric>(
    view: &RowView<'_, V>,
    rank: usize,
    range: i64,
    meter: &Meter,
) -> Result<V> {
    if V::MODE != Mode::Int {
        return Err(Error::ModeMismatch {
            expected: Mode::Int,
            found: V::MODE,
        });
    }
    if range < 0 {
        return Err(Error::InvalidParameter("range must be >= 0".into()));
    }
    let n = view.active_len();
    if rank == 0 || rank > n {
        return Err(Error::RankOutOfRange { rank, len: n });
    }
    let _token = meter.acquire(6)?;
    let mut lo = -range;
    let mut hi = range;
    while lo < hi {
        meter.charge(OpKind::Addition, 1); // midpoint arithmetic
        let mid = ((lo as i128 + hi as i128).div_euclid(2)) as i64;
        let mut count = 0usize;
        for item in view.scan(meter) {
            let v = item.value.as_i64().ok_or_else(|| {
                Error::InvalidParameter("non-integral value in integer selection".into())
            })?;
            if v < -range || v > range {
                return Err(Error::InvalidParameter(format!(
                    "value {v} outside [-{range}, {range}]"
                )));
            }
            meter.charge(OpKind::Comparison, 1);
            if v <= mid {
                count += 1;
            }
        }
        if count >= rank {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(V::from_i64(lo))
}

/// The `ranks[j]`-th smallest values (1-based, strictly increasing) by
/// repeated next-distinct-value scans with duplicate counting: O(n) passes,
/// O(g) auxiliary words, no range or integrality assumptions. Returns bare
/// values — duplicates collapse here.
pub fn batch_select<V: Numeric>(
    view: &RowView<'_, V>,
    ranks: &[usize],
    meter: &Meter,
) -> Result<Vec<V>> {
    let n = view.active_len();
    if ranks.is_empty() || ranks.len() > n {
        return Err(Error::InvalidParameter(format!(
            "need between 1 and {n} ranks"
        )));
    }
    for w in ranks.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidParameter(
                "ranks must be strictly increasing".into(),
            ));
        }
    }
    if ranks[0] == 0 || *ranks.last().unwrap() > n {
        return Err(Error::RankOutOfRange {
            rank: *ranks.last().unwrap(),
            len: n,
        });
    }

    let _token = meter.acquire(ranks.len() as u64 + 4)?;
    let mut out = Vec::with_capacity(ranks.len());
    let mut prev: Option<V> = None;
    let mut covered = 0usize;
    let mut next_rank = 0usize;
    while covered < n && next_rank < ranks.len() {
        // Pass 1: the smallest value strictly above prev.
        let mut curr: Option<V> = None;
        for item in view.scan(meter) {
            let above = match prev {
                None => true,
                Some(p) => cmp_values(meter, item.value, p) == std::cmp::Ordering::Greater,
            };
            if above {
                curr = Some(match curr {
                    None => item.value,
                    Some(c) => {
                        if cmp_values(meter, item.value, c) == std::cmp::Ordering::Less {
                            item.value
                        } else {
                            c
                        }
                    }
                });
            }
        }
        let curr = curr.expect("covered < n implies another distinct value");
        // Pass 2: duplicate count.
        let mut dup = 0usize;
        for item in view.scan(meter) {
            if cmp_values(meter, item.value, curr) == std::cmp::Ordering::Equal {
                dup += 1;
            }
        }
        while next_rank < ranks.len() && ranks[next_rank] <= covered + dup {
            out.push(curr);
            next_rank += 1;
        }
        prev = Some(curr);
        covered += dup;
    }
    debug_assert_eq!(out.len(), ranks.len());
    Ok(out)
}
