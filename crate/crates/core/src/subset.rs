//! Fixed-width bit-vector subsets of a finite carrier.
//!
//! Element `i` of a carrier is bit `i`. All carriers handled by this crate
//! have at most [`MAX_CARRIER`] elements, so a single machine word suffices
//! and every set operation is one word operation.

use std::fmt;

/// Largest carrier a [`Subset`] can address.
pub const MAX_CARRIER: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_CARRIER);
        Subset(1 << i)
    }

    /// The whole carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CARRIER);
        if n == MAX_CARRIER {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(Subset::EMPTY, |acc, i| acc.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_CARRIER && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        Subset(!self.0 & Subset::full(n).0)
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

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending index order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Every subset of an `n`-element carrier, in ascending bit order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < MAX_CARRIER, "cannot enumerate subsets of a {n}-element carrier");
        (0..(1u64 << n)).map(Subset)
    }

    /// Every subset of `self` (including `∅` and `self`), in ascending bit order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let top = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == top {
                None
            } else {
                Some((cur.wrapping_sub(top)) & top)
            };
            Some(Subset(cur))
        })
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_indices(iter)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}
