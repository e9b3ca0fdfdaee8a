//! Elements of the exterior algebra Λ(Φ) as sparse blade → coefficient maps.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::blade::Blade;
use crate::{Error, Result, MAX_DIM};

/// A multivector over an n-dimensional phase space.
///
/// Coefficients that become exactly zero are dropped; nothing is thresholded.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    terms: BTreeMap<Blade, f64>,
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: f64) -> Self {
        Self::from_blade(dim, Blade::SCALAR, c)
    }

    /// `c · e_i` with a 1-based index.
    pub fn basis_vector(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "basis index {i} outside 1..={dim}");
        Self::from_blade(dim, Blade::vector(i), 1.0)
    }

    pub fn from_blade(dim: usize, blade: Blade, c: f64) -> Self {
        let mut mv = Self::zero(dim);
        assert!(
            blade.max_index() <= dim,
            "blade {blade:?} outside dimension {dim}"
        );
        mv.add_term(blade, c);
        mv
    }

    /// `c · e{indices}`; indices must be strictly ascending and within 1..=dim.
    pub fn blade(dim: usize, indices: &[usize], c: f64) -> Result<Self> {
        let blade = Blade::from_indices(indices)?;
        if blade.max_index() > dim {
            return Err(Error::InvalidBlade("index exceeds dimension"));
        }
        Ok(Self::from_blade(dim, blade, c))
    }

    /// Sums the given terms; repeated blades accumulate.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, f64)>,
    {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimTooLarge(dim));
        }
        let mut mv = Self::zero(dim);
        for (b, c) in terms {
            if b.max_index() > dim {
                return Err(Error::InvalidBlade("index exceeds dimension"));
            }
            if !c.is_finite() {
                return Err(Error::NonFinite);
            }
            mv.add_term(b, c);
        }
        Ok(mv)
    }

    /// A grade-1 element from components `v[a] = η^(a+1)`.
    pub fn vector(components: &[f64]) -> Self {
        let mut mv = Self::zero(components.len());
        for (a, &c) in components.iter().enumerate() {
            mv.add_term(Blade::vector(a + 1), c);
        }
        mv
    }

    /// Adds `c` to the coefficient of `blade`, pruning an exact zero.
    pub fn add_term(&mut self, blade: Blade, c: f64) {
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(blade) {
            Entry::Vacant(v) => {
                if c != 0.0 {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s == 0.0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficient(&self, blade: Blade) -> f64 {
        self.terms.get(&blade).copied().unwrap_or(0.0)
    }

    /// Coefficient of `e{indices}`; zero for anything not stored.
    pub fn coeff(&self, indices: &[usize]) -> f64 {
        Blade::from_indices(indices)
            .map(|b| self.coefficient(b))
            .unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coefficient(Blade::SCALAR)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, f64)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`is_zero`](Self::is_zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn grade_part(&self, p: usize) -> Self {
        Multivector {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == p)
                .map(|(b, c)| (*b, *c))
                .collect(),
        }
    }

    /// Grades with at least one stored coefficient, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut mask = 0u32;
        for b in self.terms.keys() {
            mask |= 1 << b.grade();
        }
        (0..=self.dim).filter(|p| mask & (1 << p) != 0).collect()
    }

    /// `Some(p)` when every stored blade has grade p (zero counts as grade 0).
    pub fn homogeneous_grade(&self) -> Option<usize> {
        match self.grades().as_slice() {
            [] => Some(0),
            [p] => Some(*p),
            _ => None,
        }
    }

    /// Components of a grade-1 element, or `NotAVector`.
    pub fn to_vector(&self) -> Result<Vec<f64>> {
        let mut v = alloc::vec![0.0; self.dim];
        for (b, c) in self.terms() {
            if b.grade() != 1 {
                return Err(Error::NotAVector);
            }
            v[b.max_index() - 1] = c;
        }
        Ok(v)
    }

    /// Largest absolute coefficient.
    pub fn norm_inf(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in self.terms() {
            out.add_term(b, c * s);
        }
        out
    }

    /// Applies `f(grade)` as a factor to every blade.
    pub fn map_grades(&self, f: impl Fn(usize) -> f64) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in self.terms() {
            out.add_term(b, c * f(b.grade()));
        }
        out
    }

    pub(crate) fn check_same_dim(&self, other: &Multivector) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimMismatch(self.dim, other.dim))
        }
    }

    /// `self + s·other` without intermediate allocation of `s·other`.
    pub fn add_scaled(&self, other: &Multivector, s: f64) -> Self {
        assert_eq!(self.dim, other.dim, "multivector dimension mismatch");
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, s * c);
        }
        out
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 (n={})", self.dim);
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{b:?}")?;
        }
        write!(f, " (n={})", self.dim)
    }
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        self.add_scaled(rhs, 1.0)
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        self.add_scaled(rhs, -1.0)
    }
}

impl Add for Multivector {
    type Output = Multivector;

    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;

    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;

    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;

    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_zero_pruning() {
        let a = Multivector::basis_vector(3, 1);
        let d = &a - &a;
        assert!(d.is_zero());
        let tiny = Multivector::scalar(3, 1e-300);
        assert_eq!(tiny.len(), 1, "tiny values are kept");
    }

    #[test]
    fn grade_parts_sum_back() {
        let a = Multivector::from_terms(
            3,
            [
                (Blade::SCALAR, 2.0),
                (Blade::vector(2), -1.0),
                (Blade::from_indices(&[1, 3]).unwrap(), 0.5),
                (Blade::from_indices(&[1, 3]).unwrap(), 0.25),
            ],
        )
        .unwrap();
        assert_eq!(a.coeff(&[1, 3]), 0.75);
        let mut sum = Multivector::zero(3);
        for p in 0..=3 {
            sum = sum + a.grade_part(p);
        }
        assert_eq!(sum, a);
        assert_eq!(a.grades(), alloc::vec![0, 1, 2]);
        assert_eq!(a.homogeneous_grade(), None);
    }

    #[test]
    fn blade_outside_dimension() {
        assert!(Multivector::blade(2, &[1, 3], 1.0).is_err());
        assert!(Multivector::blade(2, &[2, 1], 1.0).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let v = [0.5, 0.0, -2.0];
        assert_eq!(Multivector::vector(&v).to_vector().unwrap(), v.to_vec());
        assert_eq!(
            Multivector::scalar(3, 1.0).to_vector().unwrap_err(),
            Error::NotAVector
        );
    }
}
