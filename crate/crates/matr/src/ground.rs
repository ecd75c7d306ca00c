//! Ground sets and bitmask subsets.
//!
//! Every matroid in this crate lives on a ground set of at most 16 labelled
//! elements, so a subset is a `u16` mask and a table indexed by subsets fits
//! in a `Vec` of length `2^n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on ground set size; keeps every subset a `u16` and every
/// subset-indexed table at most 65536 entries.
pub const MAX_GROUND: usize = 16;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GroundError {
    #[error("ground set has {0} elements, maximum is {MAX_GROUND}")]
    TooLarge(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

/// An ordered set of distinct element names. Index ↔ label is stable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self, GroundError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(GroundError::TooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(GroundError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set `e0, e1, ..` of the given size.
    pub fn numbered(n: usize) -> Self {
        GroundSet::new((0..n).map(|i| format!("e{i}"))).expect("numbered ground is valid")
    }

    pub fn empty() -> Self {
        GroundSet { labels: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The subset containing every element.
    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// All `2^n` subsets in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        let n = self.len();
        (0u32..(1u32 << n)).map(|m| Subset(m as u16))
    }

    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset, GroundError> {
        let mut s = Subset::EMPTY;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| GroundError::UnknownLabel(l.as_ref().to_string()))?;
            s = s.with(i);
        }
        Ok(s)
    }

    /// Labels of a subset, in lexicographic order (the JSON convention).
    pub fn labels_of(&self, s: Subset) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|i| self.labels[i].clone()).collect();
        v.sort();
        v
    }

    /// Human-readable `{a,b}` rendering of a subset.
    pub fn render(&self, s: Subset) -> String {
        format!("{{{}}}", self.labels_of(s).join(","))
    }
}

/// A subset of a ground set, as a bitmask over element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset(pub u16);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_GROUND);
        Subset(((1u32 << n) - 1) as u16)
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).minus(self)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices of the elements in the subset, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing mask order (includes ∅ and self).
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur: Option<u16> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            let out = Subset(c);
            cur = if c == full {
                None
            } else {
                Some(((c as u32 | !full as u32) + 1) as u16 & full)
            };
            Some(out)
        })
    }

    /// Canonical family order: by (popcount, numeric value).
    pub fn canon_key(self) -> (u32, u16) {
        (self.0.count_ones(), self.0)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#018b}", self.0)
    }
}

/// A canonically sorted, duplicate-free list of subsets of a ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    pub ground: GroundSet,
    members: Vec<Subset>,
}

impl SubsetFamily {
    pub fn new(ground: GroundSet, members: impl IntoIterator<Item = Subset>) -> Self {
        let full = ground.full();
        let mut members: Vec<Subset> = members.into_iter().collect();
        debug_assert!(members.iter().all(|s| s.is_subset_of(full)));
        members.sort_by_key(|s| s.canon_key());
        members.dedup();
        SubsetFamily { ground, members }
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members
            .binary_search_by_key(&s.canon_key(), |m| m.canon_key())
            .is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_rejects_duplicates_and_oversize() {
        assert_eq!(
            GroundSet::new(["a", "a"]).unwrap_err(),
            GroundError::DuplicateLabel("a".into())
        );
        let big: Vec<String> = (0..17).map(|i| i.to_string()).collect();
        assert!(matches!(
            GroundSet::new(big).unwrap_err(),
            GroundError::TooLarge(17)
        ));
    }

    #[test]
    fn subset_iteration_and_ops() {
        let s = Subset(0b1011);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(s.len(), 3);
        assert!(Subset(0b0011).is_subset_of(s));
        assert_eq!(s.subsets().count(), 8);
        // subsets of the full 4-set
        assert_eq!(Subset::full(4).subsets().count(), 16);
        // empty ground edge case
        assert_eq!(Subset::full(0), Subset::EMPTY);
        assert_eq!(Subset::EMPTY.subsets().collect::<Vec<_>>(), vec![Subset::EMPTY]);
    }

    #[test]
    fn family_canonical_order() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let f = SubsetFamily::new(
            g,
            [Subset(0b111), Subset(0b001), Subset(0b110), Subset(0b001)],
        );
        assert_eq!(f.members(), &[Subset(0b001), Subset(0b110), Subset(0b111)]);
        assert!(f.contains(Subset(0b110)));
        assert!(!f.contains(Subset(0b010)));
    }
}
