//! Shared domain types: the value abstraction, origin-tagged items, instances,
//! witnesses, and the threshold keys used by group extraction.
//!
//! Everything here is immutable after construction and safe to share across
//! concurrently running solves. No algorithms live in this module.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::meter::{Meter, OpKind};

/// Which value domain an instance lives in: machine integers (word model) or
/// IEEE doubles (comparison-addition model at desk scale).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Int,
    Real,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Int => f.write_str("int"),
            Mode::Real => f.write_str("real"),
        }
    }
}

/// An ordered additive scalar. Comparison and addition (subtraction counts as
/// an addition) are the only operations solvers ever apply to values.
/// Integer mode detects and rejects overflow; real mode rejects non-finite
/// results so witness sums stay exact.
pub trait Numeric:
    Copy + PartialEq + fmt::Debug + fmt::Display + Serialize + Send + Sync + 'static
{
    const MODE: Mode;
    const ZERO: Self;

    fn total_cmp(&self, other: &Self) -> Ordering;
    fn checked_add(self, rhs: Self) -> Option<Self>;
    fn checked_sub(self, rhs: Self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    /// Exact integer view, when the value is integral and in range.
    fn as_i64(self) -> Option<i64>;
    fn parse_text(text: &str) -> Option<Self>;
}

impl Numeric for i64 {
    const MODE: Mode = Mode::Int;
    const ZERO: Self = 0;

    fn total_cmp(&self, other: &Self) -> Ordering {
        Ord::cmp(self, other)
    }

    fn checked_add(self, rhs: Self) -> Option<Self> {
        i64::checked_add(self, rhs)
    }

    fn checked_sub(self, rhs: Self) -> Option<Self> {
        i64::checked_sub(self, rhs)
    }

    fn from_i64(v: i64) -> Self {
        v
    }

    fn as_i64(self) -> Option<i64> {
        Some(self)
    }

    fn parse_text(text: &str) -> Option<Self> {
        text.parse().ok()
    }
}

/// Largest double magnitude at which every integer is exactly representable.
const F64_EXACT_INT: f64 = 9_007_199_254_740_992.0; // 2^53

impl Numeric for f64 {
    const MODE: Mode = Mode::Real;
    const ZERO: Self = 0.0;

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }

    fn checked_add(self, rhs: Self) -> Option<Self> {
        let sum = self + rhs;
        sum.is_finite().then_some(sum)
    }

    fn checked_sub(self, rhs: Self) -> Option<Self> {
        let diff = self - rhs;
        diff.is_finite().then_some(diff)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn as_i64(self) -> Option<i64> {
        (self.fract() == 0.0 && self.abs() <= F64_EXACT_INT).then_some(self as i64)
    }

    fn parse_text(text: &str) -> Option<Self> {
        let v: f64 = text.parse().ok()?;
        v.is_finite().then_some(v)
    }
}

/// Origin of an item: `(list_id, index)` within the original input.
pub type Identity = (u32, u32);

/// One input element tagged with its origin. The `(value, list_id, index)`
/// triple induces a strict total order, so boundary keys and ties resolve
/// deterministically even on duplicate-heavy inputs.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Item<V: Numeric> {
    pub value: V,
    pub list_id: u32,
    pub index: u32,
}

impl<V: Numeric> Item<V> {
    pub fn new(value: V, list_id: u32, index: u32) -> Self {
        Item {
            value,
            list_id,
            index,
        }
    }

    pub fn identity(&self) -> Identity {
        (self.list_id, self.index)
    }
}

impl<V: Numeric> PartialEq for Item<V> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<V: Numeric> Eq for Item<V> {}

impl<V: Numeric> PartialOrd for Item<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Numeric> Ord for Item<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| self.list_id.cmp(&other.list_id))
            .then_with(|| self.index.cmp(&other.index))
    }
}

/// Lower threshold for group extraction: nothing (start of list), everything
/// strictly above a full item key, or everything whose value is at least `v`
/// (used when a window starts at an arithmetic bound rather than at an
/// existing element).
#[derive(Clone, Copy, Debug)]
pub enum Cut<V: Numeric> {
    NegInf,
    After(Item<V>),
    From(V),
}

impl<V: Numeric> Cut<V> {
    /// Whether `item` lies strictly above the cut. Call sites charge one
    /// comparison per test.
    pub fn admits(&self, item: &Item<V>) -> bool {
        match self {
            Cut::NegInf => true,
            Cut::After(key) => item > key,
            Cut::From(v) => item.value.total_cmp(v) != Ordering::Less,
        }
    }
}

#[derive(Clone, Debug)]
enum RowData<V: Numeric> {
    /// Raw value sequence; items synthesize their tags on the fly.
    Values { values: Arc<[V]>, list_id: u32 },
    /// Pre-tagged items. Scratch rows assembled by the self-reduction keep
    /// original identities this way.
    Items(Arc<[Item<V>]>),
}

impl<V: Numeric> RowData<V> {
    fn len(&self) -> usize {
        match self {
            RowData::Values { values, .. } => values.len(),
            RowData::Items(items) => items.len(),
        }
    }

    fn item(&self, pos: usize) -> Item<V> {
        match self {
            RowData::Values { values, list_id } => Item::new(values[pos], *list_id, pos as u32),
            RowData::Items(items) => items[pos],
        }
    }
}

/// A k-SUM instance: `k` read-only value rows, a target, and the single-list
/// flag. In single-list mode all rows alias one underlying sequence and a
/// witness must use pairwise distinct indices of it; in multi-list mode one
/// element is drawn from each row with no distinctness constraint.
///
/// `excluded` carries indices a wrapping solver has already fixed (only
/// meaningful in single-list mode); iteration skips them.
#[derive(Clone, Debug)]
pub struct Instance<V: Numeric> {
    rows: Vec<RowData<V>>,
    target: V,
    single_list: bool,
    excluded: Arc<[Identity]>,
}

impl<V: Numeric> Instance<V> {
    /// The classic k-SUM variant: one list, `k` picks with distinct
    /// indices.
    pub fn single_list(values: impl Into<Arc<[V]>>, k: usize, target: V) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("arity must be >= 2, got {k}")));
        }
        let values: Arc<[V]> = values.into();
        let rows = (0..k)
            .map(|_| RowData::Values {
                values: values.clone(),
                list_id: 0,
            })
            .collect();
        Ok(Instance {
            rows,
            target,
            single_list: true,
            excluded: Arc::from([]),
        })
    }

    /// The k-list variant: one element from each list, no index constraint.
    /// Lists must have equal lengths.
    pub fn multi_list(lists: Vec<Vec<V>>, target: V) -> Result<Self> {
        let k = lists.len();
        if k < 2 {
            return Err(Error::InvalidParameter(format!("arity must be >= 2, got {k}")));
        }
        let n = lists[0].len();
        if lists.iter().any(|l| l.len() != n) {
            return Err(Error::InvalidParameter(
                "all lists must have equal length".into(),
            ));
        }
        let rows = lists
            .into_iter()
            .enumerate()
            .map(|(i, values)| RowData::Values {
                values: values.into(),
                list_id: i as u32,
            })
            .collect();
        Ok(Instance {
            rows,
            target,
            single_list: false,
            excluded: Arc::from([]),
        })
    }

    /// Scratch single-list instance over pre-tagged items (identity-deduped
    /// union of groups). Used by the self-reduction.
    pub(crate) fn single_list_items(items: Arc<[Item<V>]>, k: usize, target: V) -> Self {
        let rows = (0..k).map(|_| RowData::Items(items.clone())).collect();
        Instance {
            rows,
            target,
            single_list: true,
            excluded: Arc::from([]),
        }
    }

    /// Scratch multi-list instance over pre-tagged item rows.
    pub(crate) fn multi_list_items(rows: Vec<Arc<[Item<V>]>>, target: V) -> Self {
        Instance {
            rows: rows.into_iter().map(RowData::Items).collect(),
            target,
            single_list: false,
            excluded: Arc::from([]),
        }
    }

    /// The same instance narrowed to its first `new_k` rows with a shifted
    /// target, optionally excluding one more identity (bootstrap step).
    pub(crate) fn prefix(&self, new_k: usize, target: V, exclude: Option<Identity>) -> Self {
        debug_assert!(new_k >= 2 && new_k < self.rows.len());
        let excluded = match exclude {
            None => self.excluded.clone(),
            Some(id) => {
                let mut v: Vec<Identity> = self.excluded.to_vec();
                v.push(id);
                v.into()
            }
        };
        Instance {
            rows: self.rows[..new_k].to_vec(),
            target,
            single_list: self.single_list,
            excluded,
        }
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Length of the first row (all rows are equal-length for instances built
    /// through the public constructors).
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row_len(&self, row: usize) -> usize {
        self.rows[row].len()
    }

    pub fn target(&self) -> V {
        self.target
    }

    pub fn is_single_list(&self) -> bool {
        self.single_list
    }

    pub fn mode(&self) -> Mode {
        V::MODE
    }

    pub fn excluded(&self) -> &[Identity] {
        &self.excluded
    }

    pub fn is_excluded(&self, id: Identity) -> bool {
        self.excluded.contains(&id)
    }

    /// Raw item access, bypassing the exclusion filter and the meter.
    pub fn item(&self, row: usize, pos: usize) -> Item<V> {
        self.rows[row].item(pos)
    }

    pub fn row(&self, row: usize) -> RowView<'_, V> {
        RowView {
            instance: self,
            row,
        }
    }
}

/// Read-only view of one instance row; the unit all selection routines and
/// solvers scan over.
#[derive(Clone, Copy)]
pub struct RowView<'a, V: Numeric> {
    instance: &'a Instance<V>,
    row: usize,
}

impl<'a, V: Numeric> RowView<'a, V> {
    /// Raw row length, exclusions included.
    pub fn len(&self) -> usize {
        self.instance.row_len(self.row)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of scannable (non-excluded) elements. Unmetered; used for
    /// precondition checks only.
    pub fn active_len(&self) -> usize {
        if self.instance.excluded.is_empty() {
            return self.len();
        }
        (0..self.len())
            .filter(|&pos| {
                !self
                    .instance
                    .is_excluded(self.instance.item(self.row, pos).identity())
            })
            .count()
    }

    pub fn instance(&self) -> &'a Instance<V> {
        self.instance
    }

    /// One metered pass over the row: charges an input read per underlying
    /// element and skips excluded identities.
    pub fn scan<'s>(&'s self, meter: &'s Meter) -> impl Iterator<Item = Item<V>> + 's {
        (0..self.len()).filter_map(move |pos| {
            meter.charge(OpKind::InputRead, 1);
            let item = self.instance.item(self.row, pos);
            (!self.instance.is_excluded(item.identity())).then_some(item)
        })
    }
}

/// `k` items certifying a solution, plus the recomputed sum.
#[derive(Clone, Debug, Serialize)]
pub struct Witness<V: Numeric> {
    pub items: Vec<Item<V>>,
    pub sum_check: V,
}

impl<V: Numeric> Witness<V> {
    /// Re-sums the items through the meter (k−1 charged additions).
    pub fn build(items: Vec<Item<V>>, meter: &Meter) -> Result<Self> {
        debug_assert!(!items.is_empty());
        let mut sum = items[0].value;
        for item in &items[1..] {
            sum = crate::meter::add_values(meter, sum, item.value)?;
        }
        Ok(Witness {
            items,
            sum_check: sum,
        })
    }

    /// Diagnostic validity check against an instance, outside the metered
    /// path: exact target sum, index distinctness and exclusion-freedom for
    /// single-list instances, and membership of every item.
    pub fn verify(&self, inst: &Instance<V>) -> bool {
        if self.items.len() != inst.k() {
            return false;
        }
        let mut sum = Some(V::ZERO);
        for item in &self.items {
            sum = sum.and_then(|s| s.checked_add(item.value));
        }
        match sum {
            Some(s) if s.total_cmp(&inst.target()) == Ordering::Equal => {}
            _ => return false,
        }
        if self.sum_check.total_cmp(&inst.target()) != Ordering::Equal {
            return false;
        }
        if inst.is_single_list() {
            let mut ids: Vec<Identity> = self.items.iter().map(|i| i.identity()).collect();
            ids.sort_unstable();
            ids.dedup();
            if ids.len() != self.items.len() {
                return false;
            }
            if self.items.iter().any(|i| inst.is_excluded(i.identity())) {
                return false;
            }
        }
        self.items.iter().all(|item| {
            (0..inst.k()).any(|row| {
                (0..inst.row_len(row)).any(|pos| {
                    let other = inst.item(row, pos);
                    other.identity() == item.identity()
                        && other.value.total_cmp(&item.value) == Ordering::Equal
                })
            })
        })
    }
}
