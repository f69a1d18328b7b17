//! Truncated multivariate series over finite boxes in `Z^r`.
//!
//! A truncated series stores exact integer coefficients on a box; absent keys
//! are zero. Multiplication by `(1 - t^q)` shrinks the box so that every
//! emitted coefficient is exact even when the series continues beyond the
//! truncation window.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::lattice::MultiIndex;
use crate::Result;

/// Finite axis-aligned box `[min, max]` in `Z^r`, componentwise inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexBox {
    min: MultiIndex,
    max: MultiIndex,
}

impl IndexBox {
    pub fn new(min: MultiIndex, max: MultiIndex) -> Result<Self> {
        if min.len() != max.len() {
            return Err(Error::DimensionMismatch { expected: min.len(), got: max.len() });
        }
        if min.is_empty() {
            return Err(Error::Validation("box must have at least one axis".into()));
        }
        if !min.le(&max) {
            return Err(Error::Validation(format!("box min {min} exceeds max {max}")));
        }
        Ok(IndexBox { min, max })
    }

    pub fn dim(&self) -> usize {
        self.min.len()
    }

    pub fn min(&self) -> &MultiIndex {
        &self.min
    }

    pub fn max(&self) -> &MultiIndex {
        &self.max
    }

    pub fn contains(&self, v: &MultiIndex) -> bool {
        v.len() == self.dim() && self.min.le(v) && v.le(&self.max)
    }

    pub fn point_count(&self) -> u64 {
        self.min
            .0
            .iter()
            .zip(&self.max.0)
            .map(|(a, b)| (b - a + 1) as u64)
            .product()
    }

    pub fn intersect(&self, other: &IndexBox) -> Option<IndexBox> {
        if self.dim() != other.dim() {
            return None;
        }
        let min: Vec<i64> =
            self.min.0.iter().zip(&other.min.0).map(|(a, b)| *a.max(b)).collect();
        let max: Vec<i64> =
            self.max.0.iter().zip(&other.max.0).map(|(a, b)| *a.min(b)).collect();
        if min.iter().zip(&max).all(|(a, b)| a <= b) {
            Some(IndexBox { min: MultiIndex::new(min), max: MultiIndex::new(max) })
        } else {
            None
        }
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &IndexBox) -> IndexBox {
        debug_assert_eq!(self.dim(), other.dim());
        let min: Vec<i64> =
            self.min.0.iter().zip(&other.min.0).map(|(a, b)| *a.min(b)).collect();
        let max: Vec<i64> =
            self.max.0.iter().zip(&other.max.0).map(|(a, b)| *a.max(b)).collect();
        IndexBox { min: MultiIndex::new(min), max: MultiIndex::new(max) }
    }

    /// Translate by `q`.
    pub fn shift(&self, q: &MultiIndex) -> IndexBox {
        IndexBox { min: self.min.add(q), max: self.max.add(q) }
    }

    /// Lattice points of the box in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        let dims = self.dim();
        let mut current: Option<Vec<i64>> = Some(self.min.0.clone());
        std::iter::from_fn(move || {
            let value = current.clone()?;
            // lexicographic successor
            let mut next = value.clone();
            let mut pos = dims;
            current = None;
            while pos > 0 {
                pos -= 1;
                if next[pos] < self.max.0[pos] {
                    next[pos] += 1;
                    for i in (pos + 1)..dims {
                        next[i] = self.min.0[i];
                    }
                    current = Some(next);
                    break;
                }
            }
            Some(MultiIndex::new(value))
        })
    }
}

/// Integer-coefficient series materialized on a box. Keys outside the box are
/// never stored; absent keys inside the box mean zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    bounds: IndexBox,
    coeffs: BTreeMap<MultiIndex, i64>,
}

/// One coefficient mismatch found by [`TruncatedSeries::equal_on_box`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub v: MultiIndex,
    pub left: i64,
    pub right: i64,
}

impl TruncatedSeries {
    pub fn zero(bounds: IndexBox) -> Self {
        TruncatedSeries { bounds, coeffs: BTreeMap::new() }
    }

    /// Materializes `coeff_fn` on every point of the box. Errors from the
    /// coefficient function are reported with the offending index attached.
    pub fn from_fn(
        bounds: IndexBox,
        mut coeff_fn: impl FnMut(&MultiIndex) -> Result<i64>,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for v in bounds.iter() {
            let c = coeff_fn(&v).map_err(|e| e.at(&v.0))?;
            if c != 0 {
                coeffs.insert(v, c);
            }
        }
        Ok(TruncatedSeries { bounds, coeffs })
    }

    pub fn bounds(&self) -> &IndexBox {
        &self.bounds
    }

    /// Coefficient at `v`; None outside the box.
    pub fn coefficient(&self, v: &MultiIndex) -> Option<i64> {
        self.bounds.contains(v).then(|| self.coeffs.get(v).copied().unwrap_or(0))
    }

    fn read_as_zero_outside(&self, v: &MultiIndex) -> i64 {
        self.coefficient(v).unwrap_or(0)
    }

    pub fn set(&mut self, v: MultiIndex, c: i64) -> Result<()> {
        if !self.bounds.contains(&v) {
            return Err(Error::Validation(format!("index {v} outside the series box")));
        }
        if c == 0 {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, c);
        }
        Ok(())
    }

    /// Nonzero coefficients in lexicographic key order.
    pub fn support(&self) -> impl Iterator<Item = (&MultiIndex, i64)> {
        self.coeffs.iter().map(|(v, &c)| (v, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies by `(1 - t^q)`: the coefficient at `v` becomes
    /// `s(v) - s(v - q)`. The result box shrinks to the indices where both
    /// terms are known exactly; `None` when that box is empty.
    pub fn mul_one_minus_monomial(&self, q: &MultiIndex) -> Option<TruncatedSeries> {
        if q.len() != self.bounds.dim() {
            return None;
        }
        let shifted = self.bounds.shift(q);
        let bounds = self.bounds.intersect(&shifted)?;
        let mut coeffs = BTreeMap::new();
        for v in bounds.iter() {
            let c = self.read_as_zero_outside(&v) - self.read_as_zero_outside(&v.sub(q));
            if c != 0 {
                coeffs.insert(v, c);
            }
        }
        Some(TruncatedSeries { bounds, coeffs })
    }

    /// Restriction to a smaller box; None if the boxes do not intersect.
    pub fn restrict(&self, window: &IndexBox) -> Option<TruncatedSeries> {
        let bounds = self.bounds.intersect(window)?;
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(v, _)| bounds.contains(v))
            .map(|(v, &c)| (v.clone(), c))
            .collect();
        Some(TruncatedSeries { bounds, coeffs })
    }

    /// Compares coefficients on the intersection of the two boxes. An empty
    /// report means agreement everywhere both series are defined.
    pub fn equal_on_box(&self, other: &TruncatedSeries) -> Result<Vec<Mismatch>> {
        let Some(common) = self.bounds.intersect(&other.bounds) else {
            return Err(Error::DisjointBoxes);
        };
        let mut mismatches = Vec::new();
        for v in common.iter() {
            let left = self.coefficient(&v).expect("inside both boxes");
            let right = other.coefficient(&v).expect("inside both boxes");
            if left != right {
                mismatches.push(Mismatch { v, left, right });
            }
        }
        Ok(mismatches)
    }
}
