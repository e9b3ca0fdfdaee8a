//! Basis blades e{i1,…,ip} of the exterior algebra, encoded as bitmasks.
//!
//! Index `i` (1-based, as in the user-facing notation) occupies bit `i - 1`.
//! The empty mask is the scalar blade.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// Largest supported phase-space dimension.
pub const MAX_DIM: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Builds a blade from strictly ascending 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > MAX_DIM {
                return Err(Error::InvalidBlade("index outside 1..=16"));
            }
            if i <= last {
                return Err(Error::InvalidBlade("indices must be strictly ascending"));
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        Ok(Blade(bits))
    }

    /// The single-index blade e_i (1-based).
    pub fn vector(i: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&i), "basis index {i} out of range");
        Blade(1 << (i - 1))
    }

    pub const fn from_bits(bits: u32) -> Self {
        Blade(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_scalar(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, i: usize) -> bool {
        i >= 1 && i <= MAX_DIM && self.0 & (1 << (i - 1)) != 0
    }

    /// Highest index present, 0 for the scalar blade.
    pub const fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Ascending 1-based indices.
    pub fn indices(self) -> Indices {
        Indices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// The top blade e{1,…,n}.
    pub fn top(dim: usize) -> Self {
        assert!(dim <= MAX_DIM);
        Blade(((1u64 << dim) - 1) as u32)
    }

    pub(crate) fn with(self, i: usize) -> Self {
        Blade(self.0 | (1 << (i - 1)))
    }

    pub(crate) fn without(self, i: usize) -> Self {
        Blade(self.0 & !(1 << (i - 1)))
    }

    /// Sign of reordering the concatenation of `self` and `other` into
    /// ascending order, i.e. `(-1)^(#pairs (i in self, j in other) with i > j)`.
    /// Shared indices are ignored; callers decide what an overlap means.
    pub fn reorder_sign(self, other: Blade) -> f64 {
        let mut a = self.0 >> 1;
        let mut swaps = 0u32;
        while a != 0 {
            swaps += (a & other.0).count_ones();
            a >>= 1;
        }
        if swaps & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Zero-based position of index `i` inside the ascending list.
    pub(crate) fn position(self, i: usize) -> usize {
        (self.0 & ((1u32 << (i - 1)) - 1)).count_ones() as usize
    }

    /// Label used in CSV headers: `e`, `e1`, `e13`; indices are separated by
    /// `_` once any index needs two digits.
    pub fn label(self, dim: usize) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::from("e");
        let sep = dim >= 10;
        for (k, i) in self.indices().enumerate() {
            if sep && k > 0 {
                s.push('_');
            }
            let _ = write!(s, "{i}");
        }
        s
    }
}

/// Grade first, then lexicographic order of the ascending index lists.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // the lowest differing index belongs to the lexicographically smaller list
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("e{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

pub struct Indices(u32);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as usize + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_unsorted_and_out_of_range() {
        assert!(Blade::from_indices(&[2, 1]).is_err());
        assert!(Blade::from_indices(&[1, 1]).is_err());
        assert!(Blade::from_indices(&[0]).is_err());
        assert!(Blade::from_indices(&[17]).is_err());
        assert_eq!(Blade::from_indices(&[]).unwrap(), Blade::SCALAR);
    }

    #[test]
    fn indices_round_trip() {
        let b = Blade::from_indices(&[1, 3, 4]).unwrap();
        assert_eq!(b.to_vec(), vec![1, 3, 4]);
        assert_eq!(b.grade(), 3);
        assert_eq!(b.position(4), 2);
        assert_eq!(b.max_index(), 4);
    }

    #[test]
    fn ordering_is_grade_then_lex() {
        let mut v = [
            Blade::from_indices(&[2, 3]).unwrap(),
            Blade::from_indices(&[1, 4]).unwrap(),
            Blade::vector(3),
            Blade::SCALAR,
            Blade::from_indices(&[1, 2]).unwrap(),
        ];
        v.sort();
        let lists: Vec<_> = v.iter().map(|b| b.to_vec()).collect();
        assert_eq!(
            lists,
            vec![vec![], vec![3], vec![1, 2], vec![1, 4], vec![2, 3]]
        );
    }

    #[test]
    fn reorder_sign_counts_inversions() {
        let e1 = Blade::vector(1);
        let e2 = Blade::vector(2);
        assert_eq!(e1.reorder_sign(e2), 1.0);
        assert_eq!(e2.reorder_sign(e1), -1.0);
        let e23 = Blade::from_indices(&[2, 3]).unwrap();
        // (2,3,1) -> two inversions
        assert_eq!(e23.reorder_sign(e1), 1.0);
    }

    #[test]
    fn labels() {
        assert_eq!(Blade::SCALAR.label(3), "e");
        assert_eq!(Blade::from_indices(&[1, 3]).unwrap().label(3), "e13");
        assert_eq!(Blade::from_indices(&[1, 10]).unwrap().label(12), "e1_10");
    }
}
