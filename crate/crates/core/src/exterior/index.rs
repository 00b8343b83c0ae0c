use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Frame dimension.
pub const DIM: usize = 8;

/// A strictly increasing tuple of frame indices in `0..8`, stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u8);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);
    pub const FULL: MultiIndex = MultiIndex(0xff);

    pub fn from_mask(mask: u8) -> Self {
        MultiIndex(mask)
    }

    /// Builds from an already increasing list; rejects anything else.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= DIM {
                return Err(Error::InvalidIndex(indices.to_vec(), "index out of range"));
            }
            if prev.is_some_and(|p| p >= i) {
                return Err(Error::InvalidIndex(indices.to_vec(), "not strictly increasing"));
            }
            mask |= 1 << i;
            prev = Some(i);
        }
        Ok(MultiIndex(mask))
    }

    /// Sorts an arbitrary index tuple. Returns `None` on a repeated index,
    /// otherwise the canonical index and the sign of the sorting permutation.
    pub fn sorted(indices: &[usize]) -> Option<(Self, f64)> {
        let mut mask = 0u8;
        let mut inversions = 0u32;
        for &i in indices {
            debug_assert!(i < DIM);
            let bit = 1u8 << i;
            if mask & bit != 0 {
                return None;
            }
            // earlier entries larger than i
            inversions += (mask & !(bit | (bit - 1))).count_ones();
            mask |= bit;
        }
        Some((MultiIndex(mask), if inversions.is_multiple_of(2) { 1.0 } else { -1.0 }))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..DIM).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    pub fn complement(self) -> Self {
        MultiIndex(!self.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        MultiIndex(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> Self {
        MultiIndex(self.0 & !(1 << i))
    }

    /// Sign of `e_self ∧ e_other` relative to the sorted union (0 if they overlap).
    pub fn wedge_sign(self, other: Self) -> f64 {
        if !self.is_disjoint(other) {
            return 0.0;
        }
        let mut swaps = 0u32;
        for j in other.indices() {
            let above = !((1u16 << (j + 1)) - 1) as u8;
            swaps += (self.0 & above).count_ones();
        }
        if swaps.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Sign picked up by moving index `i` to the front: `(-1)^{position of i}`.
    pub fn position_sign(self, i: usize) -> f64 {
        let below = ((1u16 << i) - 1) as u8;
        if (self.0 & below).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// All multi-indices of a given degree, in lexicographic order.
    pub fn all_of_degree(k: usize) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = (0u16..256).map(|m| MultiIndex(m as u8)).filter(|m| m.degree() == k).collect();
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e")?;
        if self.0 == 0 {
            return write!(f, "∅");
        }
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert_eq!(MultiIndex::new(&[]).unwrap(), MultiIndex::EMPTY);
        assert_eq!(MultiIndex::new(&[0, 3, 7]).unwrap().to_vec(), vec![0, 3, 7]);
        assert!(MultiIndex::new(&[3, 1]).is_err());
        assert!(MultiIndex::new(&[1, 1]).is_err());
        assert!(MultiIndex::new(&[8]).is_err());
    }

    #[test]
    fn sorting_sign() {
        let (m, s) = MultiIndex::sorted(&[1, 0]).unwrap();
        assert_eq!((m.to_vec(), s), (vec![0, 1], -1.0));
        let (_, s) = MultiIndex::sorted(&[2, 0, 1]).unwrap();
        assert_eq!(s, 1.0);
        let (_, s) = MultiIndex::sorted(&[3, 2, 1, 0]).unwrap();
        assert_eq!(s, 1.0);
        assert!(MultiIndex::sorted(&[4, 2, 4]).is_none());
    }

    #[test]
    fn wedge_sign_matches_sorting() {
        for a in 0u16..256 {
            for b in [0b1010_0101u8, 0b0001_0010, 0b1100_0000] {
                let (a, b) = (MultiIndex(a as u8), MultiIndex(b));
                let cat: Vec<usize> = a.indices().chain(b.indices()).collect();
                let expected = MultiIndex::sorted(&cat).map_or(0.0, |(_, s)| s);
                assert_eq!(a.wedge_sign(b), expected);
            }
        }
    }

    #[test]
    fn counts_and_order() {
        let counts: Vec<usize> = (0..=8).map(|k| MultiIndex::all_of_degree(k).len()).collect();
        assert_eq!(counts, vec![1, 8, 28, 56, 70, 56, 28, 8, 1]);
        let two = MultiIndex::all_of_degree(2);
        assert_eq!(two[0].to_vec(), vec![0, 1]);
        assert_eq!(two[7].to_vec(), vec![1, 2]);
    }
}
