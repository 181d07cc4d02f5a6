//! Subsets of a finite carrier and exact set arithmetic.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::error::CosetError;
use crate::gyro::Gyrogroup;
use crate::models::FiniteTable;

/// A subset of `{0, …, universe − 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    bits: FixedBitSet,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        Self { bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(x);
        s
    }

    /// Fails on the first index outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Result<Self, CosetError> {
        let mut s = Self::empty(universe);
        for x in items {
            if x >= universe {
                return Err(CosetError::OutOfRange(x));
            }
            s.insert(x);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: usize) {
        self.bits.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.bits.set(x, false);
    }

    /// Ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    /// Some element of `self` missing from `other`.
    pub fn first_outside(&self, other: &ElemSet) -> Option<usize> {
        self.bits.difference(&other.bits).next()
    }

    /// `A ⊕ B = {a ⊕ b : a ∈ A, b ∈ B}`.
    pub fn product(m: &FiniteTable, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(m.order());
        for x in a.iter() {
            let row = m.row(x);
            for y in b.iter() {
                out.insert(row[y]);
            }
        }
        out
    }

    /// `a ⊕ S`.
    pub fn left_translate(m: &FiniteTable, a: usize, s: &ElemSet) -> ElemSet {
        let row = m.row(a);
        let mut out = ElemSet::empty(m.order());
        for y in s.iter() {
            out.insert(row[y]);
        }
        out
    }

    /// Image under an arbitrary map of the carrier.
    pub fn map<F: Fn(usize) -> usize>(&self, f: F) -> ElemSet {
        let mut out = ElemSet::empty(self.universe());
        for x in self.iter() {
            out.insert(f(x));
        }
        out
    }

    /// `x ∈ S ⟺ ⊖x ∈ S`.
    pub fn is_symmetric(&self, m: &FiniteTable) -> bool {
        self.iter().all(|x| self.contains(m.inv(&x)))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
