//! Points and fixed-width point sets.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest number of points a space may have; a [`PointSet`] is one `u64`.
pub const CAPACITY: usize = 64;

/// A point of a space, identified by its position in the label table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point(pub usize);

impl Point {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for Point {
    fn from(i: usize) -> Self {
        Point(i)
    }
}

/// A subset of `{0, .., universe - 1}` stored as a bit-vector.
///
/// Members never exceed the universe; every constructor masks or checks.
/// The derived order compares the bit pattern first, which is the canonical
/// set order used for witness selection throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PointSet {
    bits: u64,
    universe: u8,
}

#[inline]
pub(crate) fn universe_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= CAPACITY, "universe {universe} exceeds capacity");
        PointSet { bits: 0, universe: universe as u8 }
    }

    pub fn full(universe: usize) -> Self {
        assert!(universe <= CAPACITY, "universe {universe} exceeds capacity");
        PointSet { bits: universe_mask(universe), universe: universe as u8 }
    }

    pub fn singleton(universe: usize, x: Point) -> Self {
        let mut s = Self::empty(universe);
        s.insert(x);
        s
    }

    /// Builds a set from raw bits. Returns `None` when a bit lies outside the universe.
    pub fn from_bits(universe: usize, bits: u64) -> Option<Self> {
        if universe > CAPACITY || bits & !universe_mask(universe) != 0 {
            return None;
        }
        Some(PointSet { bits, universe: universe as u8 })
    }

    pub(crate) fn from_bits_unchecked(universe: usize, bits: u64) -> Self {
        debug_assert!(bits & !universe_mask(universe) == 0);
        PointSet { bits, universe: universe as u8 }
    }

    /// Panics on an out-of-range index.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(Point(i));
        }
        s
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, x: Point) -> bool {
        x.0 < self.universe() && self.bits >> x.0 & 1 == 1
    }

    pub fn insert(&mut self, x: Point) {
        assert!(x.0 < self.universe(), "point {} outside universe {}", x.0, self.universe);
        self.bits |= 1 << x.0;
    }

    pub fn remove(&mut self, x: Point) {
        if x.0 < self.universe() {
            self.bits &= !(1 << x.0);
        }
    }

    pub fn with(mut self, x: Point) -> Self {
        self.insert(x);
        self
    }

    #[inline]
    fn same_universe(&self, other: &Self) {
        assert_eq!(self.universe, other.universe, "point sets over different universes");
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        self.same_universe(other);
        PointSet { bits: self.bits | other.bits, universe: self.universe }
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        self.same_universe(other);
        PointSet { bits: self.bits & other.bits, universe: self.universe }
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        self.same_universe(other);
        PointSet { bits: self.bits & !other.bits, universe: self.universe }
    }

    #[inline]
    pub fn complement(&self) -> Self {
        PointSet { bits: !self.bits & universe_mask(self.universe()), universe: self.universe }
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.same_universe(other);
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    #[inline]
    pub fn meets(&self, other: &Self) -> bool {
        self.same_universe(other);
        self.bits & other.bits != 0
    }

    /// Least member.
    pub fn first(&self) -> Option<Point> {
        (self.bits != 0).then(|| Point(self.bits.trailing_zeros() as usize))
    }

    pub fn iter(&self) -> Points {
        Points { bits: self.bits }
    }

    /// Every subset of `self`, in ascending bit order (starting with the empty set).
    pub fn subsets(&self) -> Subsets {
        Subsets { mask: self.bits, next: Some(0), universe: self.universe }
    }

    /// All subsets of a universe of size `n`, ascending; `n` must be below 64.
    pub fn all(n: usize) -> impl Iterator<Item = PointSet> {
        assert!(n < 64, "cannot enumerate all subsets of a {n}-point universe");
        (0..1u64 << n).map(move |b| PointSet::from_bits_unchecked(n, b))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|p| p.0)).finish()
    }
}

/// Iterator over the members of a [`PointSet`], ascending.
#[derive(Clone)]
pub struct Points {
    bits: u64,
}

impl Iterator for Points {
    type Item = Point;

    #[inline]
    fn next(&mut self) -> Option<Point> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(Point(i as usize))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

impl IntoIterator for &PointSet {
    type Item = Point;
    type IntoIter = Points;

    fn into_iter(self) -> Points {
        self.iter()
    }
}

/// Submask enumeration of a fixed mask, ascending.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
    universe: u8,
}

impl Iterator for Subsets {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        let cur = self.next?;
        // standard ascending submask step: (cur - mask) & mask
        self.next = if cur == self.mask { None } else { Some(cur.wrapping_sub(self.mask) & self.mask) };
        Some(PointSet { bits: cur, universe: self.universe })
    }
}
