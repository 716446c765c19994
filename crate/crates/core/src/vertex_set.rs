//! Fixed-width vertex subsets.
//!
//! Vertex labels are `1..=MAX_VERTICES`; label `v` occupies bit `v - 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Largest vertex label a [`VertexSet`] can hold.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex labels, stored as a 64-bit mask.
///
/// Ordering is lexicographic on the ascending label lists, so `{1,3} < {2}` and
/// `{1} < {1,2}`. This is the order faces are listed in for chain bases.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    /// Builds a set from labels, rejecting labels outside `1..=MAX_VERTICES`.
    pub fn try_from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Result<Self, Error> {
        let mut bits = 0u64;
        for v in labels {
            if v == 0 || v > MAX_VERTICES {
                return Err(Error::LabelOutOfRange {
                    label: v,
                    n: MAX_VERTICES,
                });
            }
            bits |= 1u64 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    /// Panicking variant of [`VertexSet::try_from_labels`] for literals in code and tests.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        Self::try_from_labels(labels).expect("vertex label out of range")
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << (v - 1));
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << (v - 1)))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << (v - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Ascending labels.
    pub fn iter(self) -> Labels {
        Labels(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of elements of `self` strictly smaller than `v`.
    pub fn rank_of(self, v: usize) -> usize {
        (self.0 & ((1u64 << (v - 1)) - 1)).count_ones() as usize
    }

    /// All subsets of `self`, in ascending order of their bit patterns.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// All subsets of `self` with exactly `k` elements, in ascending bit-pattern order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = VertexSet> {
        self.subsets().filter(move |s| s.len() == k)
    }

    /// Re-indexes `self` relative to the ascending enumeration of `ground`: the
    /// `i`-th smallest element of `ground` becomes label `i + 1`.
    pub fn compress(self, ground: VertexSet) -> VertexSet {
        debug_assert!(self.is_subset(ground));
        let mut out = 0u64;
        for (i, v) in ground.iter().enumerate() {
            if self.contains(v) {
                out |= 1u64 << i;
            }
        }
        VertexSet(out)
    }

    /// Inverse of [`VertexSet::compress`].
    pub fn expand(self, ground: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for (i, v) in ground.iter().enumerate() {
            if self.0 & (1u64 << i) != 0 {
                out |= 1u64 << (v - 1);
            }
        }
        VertexSet(out)
    }

    /// Adds `offset` to every label.
    pub fn shift(self, offset: usize) -> VertexSet {
        if self.0 == 0 {
            return self;
        }
        assert!(
            self.max().unwrap() + offset <= MAX_VERTICES,
            "shifted label exceeds {MAX_VERTICES}"
        );
        VertexSet(self.0 << offset)
    }

    /// Applies a label map (`map[v]` is the image of label `v`; index 0 unused).
    pub fn relabel(self, map: &[usize]) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in self.iter() {
            out.insert(map[v]);
        }
        out
    }
}

pub struct Labels(u64);

impl Iterator for Labels {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Labels {}

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask greater than cur
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(VertexSet(cur))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        // decided by the smallest label in exactly one of the two sets
        let x = self.0 ^ other.0;
        if x == 0 {
            return Ordering::Equal;
        }
        let low = x & x.wrapping_neg();
        let above = !(low | (low - 1));
        let (holder, other_bits) = if self.0 & low != 0 {
            (true, other.0)
        } else {
            (false, self.0)
        };
        // the set holding `low` is smaller unless the other one ends before it
        match (holder, other_bits & above != 0) {
            (true, true) => Ordering::Less,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Greater,
            (false, false) => Ordering::Less,
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    fn bitxor(self, rhs: Self) -> Self {
        VertexSet(self.0 ^ rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Labels;
    fn into_iter(self) -> Labels {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::from_labels(iter)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        VertexSet::try_from_labels(labels).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_on_label_lists() {
        let a = VertexSet::from_labels([1, 3]);
        let b = VertexSet::from_labels([2]);
        let c = VertexSet::from_labels([1]);
        let d = VertexSet::from_labels([1, 2]);
        assert!(a < b);
        assert!(c < d);
        assert!(d < a);
    }

    #[test]
    fn order_agrees_with_label_list_comparison() {
        let all: Vec<VertexSet> = VertexSet::full(5).subsets().collect();
        for a in &all {
            for b in &all {
                assert_eq!(a.cmp(b), a.iter().cmp(b.iter()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn subsets_enumerate_every_submask_once_in_numeric_order() {
        let s = VertexSet::from_labels([2, 4, 5]);
        let subs: Vec<u64> = s.subsets().map(|x| x.bits()).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|&b| b & !s.bits() == 0));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn compress_expand_round_trip() {
        let ground = VertexSet::from_labels([2, 5, 7, 9]);
        let x = VertexSet::from_labels([5, 9]);
        let c = x.compress(ground);
        assert_eq!(c, VertexSet::from_labels([2, 4]));
        assert_eq!(c.expand(ground), x);
    }

    #[test]
    fn out_of_range_label_is_rejected() {
        assert!(VertexSet::try_from_labels([0]).is_err());
        assert!(VertexSet::try_from_labels([65]).is_err());
        assert_eq!(VertexSet::full(64).len(), 64);
    }

    #[test]
    fn rank_of_counts_smaller_members() {
        let s = VertexSet::from_labels([1, 4, 6, 9]);
        assert_eq!(s.rank_of(6), 2);
        assert_eq!(s.rank_of(1), 0);
        assert_eq!(s.rank_of(10), 4);
    }
}
