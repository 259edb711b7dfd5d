//! Four-list scanning via monotone pair-sum streams.
//!
//! Two seeded heaps enumerate A+B pair sums in non-decreasing order and C+D
//! pair sums in non-increasing order, each holding at most one candidate per
//! left-side entry; the two streams are advanced against each other exactly
//! like the two cursors of 2-SUM. Quarter tables turn the same scan into a
//! k-SUM solver for any k divisible by four: each "list" becomes the table of
//! all (k/4)-part sums.
//!
//! Single-list instances enforce index distinctness canonically: a candidate
//! is accepted only when the four parts occupy pairwise disjoint,
//! increasingly ordered identity ranges. Every solution, read off in identity
//! order, has exactly one such split, so the filter loses nothing. Equal-sum
//! runs are folded to one representative per side (the pair minimizing its
//! maximum identity on the ascending side, maximizing its minimum identity on
//! the descending side), which decides matchability of the entire run pair in
//! O(1) extra space.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::meter::{add_values, cmp_values, Meter, OpKind, SpaceToken};
use crate::solvers::{check_arity, Solver, SolverSpec};
use crate::types::{Identity, Instance, Item, Numeric, Witness};

fn packed(id: Identity) -> u64 {
    (u64::from(id.0) << 32) | u64::from(id.1)
}

/// One materialized part of size q >= 2: a subset sum, its identity extremes,
/// and the offset of its constituent items in the owning side's pool.
#[derive(Clone, Copy, Debug)]
struct ComboEntry<V: Numeric> {
    sum: V,
    lo: u64,
    hi: u64,
    off: u32,
}

enum PartData<V: Numeric> {
    /// q = 1: plain items; sums and identity spans derive from the item.
    Items(Vec<Item<V>>),
    /// q >= 2: all q-part combinations plus an item pool for witnesses.
    Combos {
        entries: Vec<ComboEntry<V>>,
        pool: Vec<Item<V>>,
        per: usize,
    },
}

/// One of the four scan roles.
pub(crate) struct PartSide<'m, V: Numeric> {
    data: PartData<V>,
    _token: SpaceToken<'m>,
}

impl<V: Numeric> PartSide<'_, V> {
    fn len(&self) -> usize {
        match &self.data {
            PartData::Items(items) => items.len(),
            PartData::Combos { entries, .. } => entries.len(),
        }
    }

    fn sum(&self, i: usize) -> V {
        match &self.data {
            PartData::Items(items) => items[i].value,
            PartData::Combos { entries, .. } => entries[i].sum,
        }
    }

    /// Identity span (packed) of part i.
    fn span(&self, i: usize) -> (u64, u64) {
        match &self.data {
            PartData::Items(items) => {
                let id = packed(items[i].identity());
                (id, id)
            }
            PartData::Combos { entries, .. } => (entries[i].lo, entries[i].hi),
        }
    }

    fn items_of(&self, i: usize) -> &[Item<V>] {
        match &self.data {
            PartData::Items(items) => std::slice::from_ref(&items[i]),
            PartData::Combos { entries, pool, per } => {
                let off = entries[i].off as usize;
                &pool[off..off + per]
            }
        }
    }

    fn sort_by_sum(&mut self, meter: &Meter) {
        match &mut self.data {
            PartData::Items(items) => {
                items.sort_unstable_by(|a, b| cmp_values(meter, a.value, b.value));
            }
            PartData::Combos { entries, .. } => {
                entries.sort_unstable_by(|a, b| cmp_values(meter, a.sum, b.sum));
            }
        }
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

fn charge_side(count: u128, per: usize, max_words: u64, meter: &Meter) -> Result<SpaceToken<'_>> {
    let words = if per == 1 {
        count
    } else {
        count.saturating_mul(4 + per as u128)
    };
    if words > max_words as u128 {
        return Err(Error::BudgetExceeded {
            budget: max_words,
            required: words.min(u64::MAX as u128) as u64,
        });
    }
    meter.acquire(words as u64)
}

/// Copy one row as an item side (q = 1), exclusions filtered.
fn build_item_side<'m, V: Numeric>(
    inst: &Instance<V>,
    row: usize,
    max_words: u64,
    meter: &'m Meter,
) -> Result<PartSide<'m, V>> {
    let token = charge_side(inst.row_len(row) as u128, 1, max_words, meter)?;
    let items: Vec<Item<V>> = inst.row(row).scan(meter).collect();
    Ok(PartSide {
        data: PartData::Items(items),
        _token: token,
    })
}

/// All increasing-position q-combinations of rows `[row_from, row_from+q)`
/// (multi-list: one position per row; single-list: row 0 combinations).
fn build_combo_side<'m, V: Numeric>(
    inst: &Instance<V>,
    row_from: usize,
    q: usize,
    max_words: u64,
    meter: &'m Meter,
) -> Result<PartSide<'m, V>> {
    let count = if inst.is_single_list() {
        binomial(inst.row(0).active_len() as u128, q as u128)
    } else {
        (0..q).map(|r| inst.row_len(row_from + r) as u128).product()
    };
    let token = charge_side(count, q, max_words, meter)?;
    let mut entries = Vec::with_capacity(count as usize);
    let mut pool = Vec::with_capacity(count as usize * q);
    let mut combo: Vec<Item<V>> = Vec::with_capacity(q);
    build_combos(
        inst,
        meter,
        row_from,
        q,
        0,
        V::ZERO,
        &mut combo,
        &mut entries,
        &mut pool,
    )?;
    Ok(PartSide {
        data: PartData::Combos { entries, pool, per: q },
        _token: token,
    })
}

#[allow(clippy::too_many_arguments)]
fn build_combos<V: Numeric>(
    inst: &Instance<V>,
    meter: &Meter,
    row_from: usize,
    q: usize,
    start: usize,
    partial: V,
    combo: &mut Vec<Item<V>>,
    entries: &mut Vec<ComboEntry<V>>,
    pool: &mut Vec<Item<V>>,
) -> Result<()> {
    if combo.len() == q {
        let ids = combo.iter().map(|it| packed(it.identity()));
        let lo = ids.clone().min().unwrap();
        let hi = ids.max().unwrap();
        entries.push(ComboEntry {
            sum: partial,
            lo,
            hi,
            off: pool.len() as u32,
        });
        pool.extend_from_slice(combo);
        return Ok(());
    }
    let single = inst.is_single_list();
    let row = if single { 0 } else { row_from + combo.len() };
    let from = if single { start } else { 0 };
    for pos in from..inst.row_len(row) {
        meter.charge(OpKind::InputRead, 1);
        let item = inst.item(row, pos);
        if inst.is_excluded(item.identity()) {
            continue;
        }
        let sum = add_values(meter, partial, item.value)?;
        combo.push(item);
        build_combos(inst, meter, row_from, q, pos + 1, sum, combo, entries, pool)?;
        combo.pop();
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct StreamHead<V: Numeric> {
    pub sum: V,
    pub li: u32,
    pub rj: u32,
}

/// Monotone enumerator of `left[i] + right[j]` part sums over a sum-sorted
/// right side: a heap holding one candidate per left entry, popped in
/// non-decreasing (or non-increasing) sum order.
pub(crate) struct PairSumStream<'q, 'm, V: Numeric> {
    left: &'q PartSide<'m, V>,
    right: &'q PartSide<'m, V>,
    heap: Vec<StreamHead<V>>,
    descending: bool,
    meter: &'m Meter,
    last: Option<V>,
    _token: SpaceToken<'m>,
}

impl<'q, 'm, V: Numeric> PairSumStream<'q, 'm, V> {
    pub fn new(
        left: &'q PartSide<'m, V>,
        right: &'q PartSide<'m, V>,
        descending: bool,
        meter: &'m Meter,
    ) -> Result<Self> {
        let token = meter.acquire(3 * left.len() as u64)?;
        let mut stream = PairSumStream {
            left,
            right,
            heap: Vec::with_capacity(left.len()),
            descending,
            meter,
            last: None,
            _token: token,
        };
        if right.len() > 0 {
            let rj = if descending { right.len() - 1 } else { 0 };
            for li in 0..left.len() {
                let sum = add_values(meter, left.sum(li), right.sum(rj))?;
                stream.heap.push(StreamHead {
                    sum,
                    li: li as u32,
                    rj: rj as u32,
                });
            }
        }
        let len = stream.heap.len();
        for i in (0..len / 2).rev() {
            stream.sift_down(i);
        }
        Ok(stream)
    }

    fn above(&self, a: &StreamHead<V>, b: &StreamHead<V>) -> bool {
        let ord = cmp_values(self.meter, a.sum, b.sum);
        if self.descending {
            ord == Ordering::Greater
        } else {
            ord == Ordering::Less
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        let n = self.heap.len();
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < n && self.above(&self.heap[l], &self.heap[best]) {
                best = l;
            }
            if r < n && self.above(&self.heap[r], &self.heap[best]) {
                best = r;
            }
            if best == i {
                return;
            }
            self.heap.swap(i, best);
            i = best;
        }
    }

    pub fn peek(&self) -> Option<&StreamHead<V>> {
        self.heap.first()
    }

    /// Pops the head and inserts its successor (same left entry, next right
    /// position). Emitted sums are certified monotone in debug builds.
    pub fn advance(&mut self) -> Result<Option<StreamHead<V>>> {
        if self.heap.is_empty() {
            return Ok(None);
        }
        let head = self.heap[0];
        debug_assert!(
            self.last.is_none_or(|prev| {
                let ord = head.sum.total_cmp(&prev);
                if self.descending {
                    ord != Ordering::Greater
                } else {
                    ord != Ordering::Less
                }
            }),
            "pair-sum stream emitted out of order"
        );
        self.last = Some(head.sum);

        let successor = if self.descending {
            head.rj.checked_sub(1)
        } else {
            let next = head.rj + 1;
            (next < self.right.len() as u32).then_some(next)
        };
        match successor {
            Some(rj) => {
                let sum = add_values(
                    self.meter,
                    self.left.sum(head.li as usize),
                    self.right.sum(rj as usize),
                )?;
                self.heap[0] = StreamHead {
                    sum,
                    li: head.li,
                    rj,
                };
                self.sift_down(0);
            }
            None => {
                let tail = self.heap.pop().unwrap();
                if !self.heap.is_empty() {
                    self.heap[0] = tail;
                    self.sift_down(0);
                }
            }
        }
        Ok(Some(head))
    }
}

#[derive(Clone, Copy)]
struct RunBest {
    lo: u64,
    hi: u64,
    li: u32,
    rj: u32,
}

enum FoldGoal {
    MinHi,
    MaxLo,
}

/// Consume one equal-sum run, keeping the best internally valid pair
/// (disjoint identity ranges) for the requested goal.
fn fold_run<V: Numeric>(
    stream: &mut PairSumStream<'_, '_, V>,
    run_sum: V,
    goal: FoldGoal,
    meter: &Meter,
) -> Result<Option<RunBest>> {
    let mut best: Option<RunBest> = None;
    loop {
        match stream.peek() {
            Some(head) if cmp_values(meter, head.sum, run_sum) == Ordering::Equal => {}
            _ => break,
        }
        let head = stream.advance()?.expect("peeked head");
        let (llo, lhi) = stream.left.span(head.li as usize);
        let (rlo, rhi) = stream.right.span(head.rj as usize);
        if !(lhi < rlo || rhi < llo) {
            continue;
        }
        let cand = RunBest {
            lo: llo.min(rlo),
            hi: lhi.max(rhi),
            li: head.li,
            rj: head.rj,
        };
        let take = match (&best, &goal) {
            (None, _) => true,
            (Some(b), FoldGoal::MinHi) => cand.hi < b.hi,
            (Some(b), FoldGoal::MaxLo) => cand.lo > b.lo,
        };
        if take {
            best = Some(cand);
        }
    }
    Ok(best)
}

fn witness_from<V: Numeric>(
    sides: [&PartSide<'_, V>; 4],
    picks: [usize; 4],
    meter: &Meter,
) -> Result<Option<Witness<V>>> {
    let mut items = Vec::new();
    for (side, pick) in sides.iter().zip(picks) {
        items.extend_from_slice(side.items_of(pick));
    }
    Ok(Some(Witness::build(items, meter)?))
}

/// The four-list scan shared by the 4-SUM solver and its quarter-table k-SUM
/// lift. `distinct` enables the canonical identity-range filter.
fn four_list_scan<V: Numeric>(
    qa: &PartSide<'_, V>,
    qb: &PartSide<'_, V>,
    qc: &PartSide<'_, V>,
    qd: &PartSide<'_, V>,
    target: V,
    distinct: bool,
    meter: &Meter,
) -> Result<Option<Witness<V>>> {
    let mut ab = PairSumStream::new(qa, qb, false, meter)?;
    let mut cd = PairSumStream::new(qc, qd, true, meter)?;
    loop {
        let (x, y) = match (ab.peek(), cd.peek()) {
            (Some(x), Some(y)) => (*x, *y),
            _ => return Ok(None),
        };
        let total = add_values(meter, x.sum, y.sum)?;
        match cmp_values(meter, total, target) {
            Ordering::Less => {
                ab.advance()?;
            }
            Ordering::Greater => {
                cd.advance()?;
            }
            Ordering::Equal => {
                if !distinct {
                    return witness_from(
                        [qa, qb, qc, qd],
                        [x.li as usize, x.rj as usize, y.li as usize, y.rj as usize],
                        meter,
                    );
                }
                let best_ab = fold_run(&mut ab, x.sum, FoldGoal::MinHi, meter)?;
                let best_cd = fold_run(&mut cd, y.sum, FoldGoal::MaxLo, meter)?;
                if let (Some(a), Some(c)) = (best_ab, best_cd) {
                    if a.hi < c.lo {
                        return witness_from(
                            [qa, qb, qc, qd],
                            [a.li as usize, a.rj as usize, c.li as usize, c.rj as usize],
                            meter,
                        );
                    }
                }
            }
        }
    }
}

fn solve_via_quarters<V: Numeric>(
    inst: &Instance<V>,
    q: usize,
    max_words: u64,
    meter: &Meter,
) -> Result<Option<Witness<V>>> {
    let target = inst.target();
    if inst.is_single_list() {
        // one sum-sorted side serves all four roles
        let mut side = if q == 1 {
            build_item_side(inst, 0, max_words, meter)?
        } else {
            build_combo_side(inst, 0, q, max_words, meter)?
        };
        side.sort_by_sum(meter);
        four_list_scan(&side, &side, &side, &side, target, true, meter)
    } else {
        let mut sides = Vec::with_capacity(4);
        for quarter in 0..4 {
            sides.push(if q == 1 {
                build_item_side(inst, quarter, max_words, meter)?
            } else {
                build_combo_side(inst, quarter * q, q, max_words, meter)?
            });
        }
        sides[1].sort_by_sum(meter);
        sides[3].sort_by_sum(meter);
        four_list_scan(
            &sides[0], &sides[1], &sides[2], &sides[3], target, false, meter,
        )
    }
}

/// Deterministic 4-SUM in O(n) words: priority-queue pair-sum streams plus
/// the 2-SUM cursor discipline. Comparison-based heaps put the charged time
/// at O(n^2 log n).
pub struct SchroeppelShamir4Sum {
    pub max_words: u64,
}

impl Default for SchroeppelShamir4Sum {
    fn default() -> Self {
        SchroeppelShamir4Sum {
            max_words: 1 << 24,
        }
    }
}

impl<V: Numeric> Solver<V> for SchroeppelShamir4Sum {
    fn spec(&self) -> SolverSpec {
        SolverSpec {
            name: "schroeppel-shamir".into(),
            time_claim: "n^2 log n".into(),
            space_claim: "n".into(),
        }
    }

    fn supports_arity(&self, k: usize) -> bool {
        k == 4
    }

    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        check_arity(self, inst)?;
        solve_via_quarters(inst, 1, self.max_words, meter)
    }
}

/// k-SUM for k divisible by four, via tables of all (k/4)-part sums fed to
/// the same four-list scan: O(n^{k/2} log n) charged time, O(n^{k/4}) words.
pub struct KsumVia4Sum {
    pub max_words: u64,
}

impl Default for KsumVia4Sum {
    fn default() -> Self {
        KsumVia4Sum {
            max_words: 1 << 24,
        }
    }
}

impl<V: Numeric> Solver<V> for KsumVia4Sum {
    fn spec(&self) -> SolverSpec {
        SolverSpec {
            name: "ksum-via-4sum".into(),
            time_claim: "n^(k/2) log n".into(),
            space_claim: "n^(k/4)".into(),
        }
    }

    fn supports_arity(&self, k: usize) -> bool {
        k >= 4 && k.is_multiple_of(4)
    }

    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        check_arity(self, inst)?;
        solve_via_quarters(inst, inst.k() / 4, self.max_words, meter)
    }
}
