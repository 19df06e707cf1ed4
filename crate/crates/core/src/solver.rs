//! Common subset sums over a family of integer multisets.
//!
//! Every multiset is reduced to the dense set of values reachable by its
//! nonempty sub-multisets (a shift-and-or bit-vector DP). A family's common
//! sums are the intersection of those sets, computed incrementally: once the
//! running intersection is known, later passes only track values up to its
//! largest live member, and the computation stops as soon as it empties.

use std::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

/// An ordered multiset of non-negative integer items.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ItemMultiset {
    items: Vec<u64>,
}

impl ItemMultiset {
    pub fn new(items: Vec<u64>) -> Self {
        Self { items }
    }

    pub fn items(&self) -> &[u64] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Sum of all items, the largest value any sub-multiset can reach.
    pub fn total(&self) -> u64 {
        self.items.iter().sum()
    }

    pub fn min_item(&self) -> Option<u64> {
        self.items.iter().copied().min()
    }
}

impl From<Vec<u64>> for ItemMultiset {
    fn from(items: Vec<u64>) -> Self {
        Self::new(items)
    }
}

impl<const N: usize> From<[u64; N]> for ItemMultiset {
    fn from(items: [u64; N]) -> Self {
        Self::new(items.to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("a set family must contain at least one set")]
pub struct EmptyFamily;

/// A nonempty, ordered list of multisets. Sets may differ in size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    sets: Vec<ItemMultiset>,
}

impl SetFamily {
    pub fn new(sets: Vec<ItemMultiset>) -> Result<Self, EmptyFamily> {
        if sets.is_empty() {
            return Err(EmptyFamily);
        }
        Ok(Self { sets })
    }

    /// Builds a family from plain item lists.
    pub fn from_items<I, S>(sets: I) -> Result<Self, EmptyFamily>
    where
        I: IntoIterator<Item = S>,
        S: Into<Vec<u64>>,
    {
        Self::new(
            sets.into_iter()
                .map(|s| ItemMultiset::new(s.into()))
                .collect(),
        )
    }

    pub fn sets(&self) -> &[ItemMultiset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Returns the item count shared by every set, or `None` if the family is ragged.
    pub fn uniform_width(&self) -> Option<usize> {
        let m = self.sets[0].len();
        self.sets.iter().all(|s| s.len() == m).then_some(m)
    }

    pub fn push(&mut self, set: ItemMultiset) {
        self.sets.push(set);
    }
}

/// A set of sums over `[0, capacity]`, stored as a dense bit vector.
#[derive(Clone)]
pub struct SumSet {
    capacity: usize,
    words: Vec<u64>,
}

impl SumSet {
    /// An empty set able to hold values in `[0, capacity]`.
    pub fn empty(capacity: usize) -> Self {
        Self {
            capacity,
            words: vec![0; capacity / WORD_BITS + 1],
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn contains(&self, value: u64) -> bool {
        match usize::try_from(value) {
            Ok(v) if v <= self.capacity => self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1,
            _ => false,
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min(&self) -> Option<u64> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<u64> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| (i * WORD_BITS + WORD_BITS - 1 - w.leading_zeros() as usize) as u64)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some((i * WORD_BITS + bit) as u64)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// Members of both sets; the result's capacity is the smaller of the two.
    pub fn intersection(&self, other: &SumSet) -> SumSet {
        let capacity = self.capacity.min(other.capacity);
        let mut out = SumSet::empty(capacity);
        for (dst, (a, b)) in out
            .words
            .iter_mut()
            .zip(self.words.iter().zip(&other.words))
        {
            *dst = a & b;
        }
        out.mask_tail();
        out
    }

    pub(crate) fn insert(&mut self, value: usize) {
        if value <= self.capacity {
            self.words[value / WORD_BITS] |= 1 << (value % WORD_BITS);
        }
    }

    /// `self |= self << shift`, dropping anything past capacity.
    pub(crate) fn shift_or(&mut self, shift: usize) {
        if shift > self.capacity {
            return;
        }
        let word_shift = shift / WORD_BITS;
        let bit_shift = shift % WORD_BITS;
        // High to low, so every source word is read before it is updated.
        for i in (word_shift..self.words.len()).rev() {
            let src = i - word_shift;
            let mut shifted = self.words[src] << bit_shift;
            if bit_shift != 0 && src > 0 {
                shifted |= self.words[src - 1] >> (WORD_BITS - bit_shift);
            }
            self.words[i] |= shifted;
        }
        self.mask_tail();
    }

    fn mask_tail(&mut self) {
        let used = self.capacity % WORD_BITS + 1;
        if used < WORD_BITS {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

impl PartialEq for SumSet {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for SumSet {}

impl fmt::Debug for SumSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Outcome of solving one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MisspResult {
    /// Exactly one common sum.
    Unique(u64),
    /// No common sum.
    Empty,
    /// Two or more common sums, strictly increasing.
    Ambiguous(Vec<u64>),
}

impl MisspResult {
    pub fn from_sums(sums: &SumSet) -> Self {
        let mut values = sums.to_vec();
        match values.len() {
            0 => MisspResult::Empty,
            1 => MisspResult::Unique(values.pop().unwrap()),
            _ => MisspResult::Ambiguous(values),
        }
    }

    pub fn unique(&self) -> Option<u64> {
        match self {
            MisspResult::Unique(s) => Some(*s),
            _ => None,
        }
    }

    /// Number of common sums.
    pub fn count(&self) -> usize {
        match self {
            MisspResult::Unique(_) => 1,
            MisspResult::Empty => 0,
            MisspResult::Ambiguous(v) => v.len(),
        }
    }
}

impl fmt::Display for MisspResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MisspResult::Unique(s) => write!(f, "Unique {s}"),
            MisspResult::Empty => f.write_str("None"),
            MisspResult::Ambiguous(values) => {
                f.write_str("Ambiguous")?;
                for v in values {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Item positions into a multiset, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
}

impl Witness {
    /// The referenced items, in index order.
    pub fn items<'a>(&'a self, set: &'a ItemMultiset) -> impl Iterator<Item = u64> + 'a {
        self.indices.iter().map(|&i| set.items()[i])
    }

    pub fn sum(&self, set: &ItemMultiset) -> u64 {
        self.items(set).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no nonempty sub-multiset sums to {target}")]
pub struct NoWitness {
    pub target: u64,
}

fn to_capacity(total: u64) -> usize {
    usize::try_from(total).expect("item total exceeds addressable memory")
}

/// Sums of nonempty sub-multisets, limited to values `<= limit`.
fn sums_up_to(set: &ItemMultiset, limit: usize) -> SumSet {
    let mut sums = SumSet::empty(limit.min(to_capacity(set.total())));
    for &item in set.items() {
        let Ok(item) = usize::try_from(item) else {
            continue;
        };
        if item > sums.capacity {
            continue;
        }
        sums.shift_or(item);
        sums.insert(item);
    }
    sums
}

/// All values reachable as the sum of a nonempty sub-multiset of `set`.
/// The capacity is the total of all items.
pub fn achievable_sums(set: &ItemMultiset) -> SumSet {
    sums_up_to(set, usize::MAX)
}

/// Values reachable in every set of the family.
pub fn common_sums(family: &SetFamily) -> SumSet {
    let capacity = family
        .sets()
        .iter()
        .map(|s| to_capacity(s.total()))
        .min()
        .unwrap_or(0);

    // Smallest total first gives the tightest starting bound.
    let mut order: Vec<&ItemMultiset> = family.sets().iter().collect();
    order.sort_by_key(|s| s.total());

    let mut running = achievable_sums(order[0]);
    for set in &order[1..] {
        let Some(live_max) = running.max() else {
            return SumSet::empty(capacity);
        };
        let sums = sums_up_to(set, live_max as usize);
        running = running.intersection(&sums);
    }
    let mut out = SumSet::empty(capacity);
    for v in running.iter() {
        out.insert(v as usize);
    }
    out
}

pub fn solve_missp(family: &SetFamily) -> MisspResult {
    MisspResult::from_sums(&common_sums(family))
}

/// Finds the lexicographically smallest index list whose items sum to `target`.
pub fn find_witness(set: &ItemMultiset, target: u64) -> Result<Witness, NoWitness> {
    let items = set.items();
    if target > set.total() {
        return Err(NoWitness { target });
    }
    let cap = to_capacity(target);

    // reach[i]: sums of sub-multisets (empty included) of items[i..], up to target.
    let mut reach = Vec::with_capacity(items.len() + 1);
    let mut tail = SumSet::empty(cap);
    tail.insert(0);
    reach.push(tail.clone());
    for &item in items.iter().rev() {
        if item as usize <= cap {
            tail.shift_or(item as usize);
        }
        reach.push(tail.clone());
    }
    reach.reverse();

    let mut indices = Vec::new();
    let mut remaining = target;
    let mut start = 0;
    loop {
        let pick = (start..items.len())
            .find(|&j| items[j] <= remaining && reach[j + 1].contains(remaining - items[j]));
        let Some(j) = pick else {
            return Err(NoWitness { target });
        };
        indices.push(j);
        remaining -= items[j];
        if remaining == 0 {
            return Ok(Witness { indices });
        }
        start = j + 1;
    }
}
