//! Chain complexes attached to a multi-index `v`.
//!
//! For a subset `I` of the valuation indices let `V_I` be the quotient
//! `M(v + e_I) / M(v + 1)`. The degree-i space is the direct sum of the `V_I`
//! with `#I = i`, and the boundary sends the copy of `x` in `V_I`,
//! `I = {a_1 < ... < a_i}`, to `(-1)^k x` in `V_{I \ {a_k}}`. Three variants
//! are built here over explicit bases:
//!
//! * the ambient complex over all subsets of `{1..r}`,
//! * the complex over subsets of `{1..r-1}` with single steps in the last
//!   coordinate, which has finite-dimensional components whenever the last
//!   valuation is centered at the maximal ideal,
//! * the embedded complex for a principal ideal `(h)`, whose components are
//!   images inside a degree-truncated working quotient.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enumeration::{region_basis, Enumerator};
use crate::error::Error;
use crate::lattice::{
    is_centered_at_maximal_ideal, AmbientSpace, LatticePoint, MonomialPoly, MultiIndex,
    ValuationSet,
};
use crate::linalg::{homology_dims, IntMatrix};
use crate::Result;

/// Identifies one basis vector of a component `V_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisLabel {
    /// A monomial basis element of a filtration quotient.
    Monomial(LatticePoint),
    /// The k-th vector of a reduced basis of an image subspace.
    Class(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    /// Sorted 0-based valuation indices of the component the vector lives in.
    pub subset: Vec<usize>,
    pub label: BasisLabel,
}

/// A chain complex with explicit bases and integer boundary matrices.
/// `boundaries[i]` is the map from degree `i+1` to degree `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub value: MultiIndex,
    pub spaces: Vec<Vec<BasisVector>>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.len()).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    /// Checks shapes and that consecutive boundaries compose to zero.
    pub fn validate(&self) -> Result<()> {
        if self.boundaries.len() + 1 != self.spaces.len() {
            return Err(Error::MalformedComplex(format!(
                "{} spaces need {} boundaries, got {}",
                self.spaces.len(),
                self.spaces.len() - 1,
                self.boundaries.len()
            )));
        }
        for (i, b) in self.boundaries.iter().enumerate() {
            if b.rows() != self.spaces[i].len() || b.cols() != self.spaces[i + 1].len() {
                return Err(Error::MalformedComplex(format!(
                    "boundary {} has shape {}x{}, expected {}x{}",
                    i + 1,
                    b.rows(),
                    b.cols(),
                    self.spaces[i].len(),
                    self.spaces[i + 1].len()
                )));
            }
        }
        for w in self.boundaries.windows(2) {
            if !w[0].matmul(&w[1])?.is_zero() {
                return Err(Error::MalformedComplex(
                    "consecutive boundaries do not compose to zero".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Homology dimensions of a complex, one entry per degree, with the
/// alternating sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub h: Vec<i64>,
    pub euler: i64,
}

impl HomologyProfile {
    fn new(h: Vec<i64>) -> Self {
        let euler = h.iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x } else { -*x }).sum();
        HomologyProfile { h, euler }
    }
}

/// Signed targets of the boundary on the component of a sorted subset:
/// removing the k-th smallest element (1-based) carries sign `(-1)^k`.
pub fn subset_boundary_targets(subset: &[usize]) -> Vec<(Vec<usize>, i64)> {
    (0..subset.len())
        .map(|p| {
            let mut target: Vec<usize> = subset.to_vec();
            target.remove(p);
            let sign = if p % 2 == 0 { -1 } else { 1 };
            (target, sign)
        })
        .collect()
}

/// All subsets of `0..n` of the given size, in lexicographic order.
fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    (0..n).combinations(size).collect()
}

/// The complex in which every subset component of `{1..r}` is one-dimensional:
/// the augmented simplicial chain complex of the full simplex. Its boundary
/// matrices realize the sign convention in the smallest possible bases.
pub fn full_simplex_complex(r: usize) -> ChainComplex {
    let mut spaces = Vec::with_capacity(r + 1);
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(r + 1);
    for size in 0..=r {
        let subsets = subsets_of_size(r, size);
        let mut idx = BTreeMap::new();
        let mut basis = Vec::new();
        for (k, subset) in subsets.iter().enumerate() {
            idx.insert(subset.clone(), k);
            basis.push(BasisVector { subset: subset.clone(), label: BasisLabel::Class(0) });
        }
        spaces.push(basis);
        index.push(idx);
    }
    let mut boundaries = Vec::with_capacity(r);
    for i in 1..=r {
        let mut m = IntMatrix::zero(spaces[i - 1].len(), spaces[i].len());
        for (col, bv) in spaces[i].iter().enumerate() {
            for (target, sign) in subset_boundary_targets(&bv.subset) {
                let row = index[i - 1][&target];
                m.set(row, col, BigInt::from(sign)).expect("in-range entry");
            }
        }
        boundaries.push(m);
    }
    ChainComplex { value: MultiIndex::zeros(r), spaces, boundaries }
}

/// Shared assembly for complexes whose components have monomial bases and
/// whose boundaries are signed identity inclusions.
fn build_monomial_complex(
    v: &MultiIndex,
    subset_universe: usize,
    mut basis_of: impl FnMut(&[usize]) -> Result<Vec<LatticePoint>>,
) -> Result<ChainComplex> {
    let top = subset_universe;
    let mut spaces: Vec<Vec<BasisVector>> = Vec::with_capacity(top + 1);
    let mut index: Vec<BTreeMap<(Vec<usize>, LatticePoint), usize>> = Vec::with_capacity(top + 1);
    for size in 0..=top {
        let mut basis = Vec::new();
        let mut idx = BTreeMap::new();
        for subset in subsets_of_size(subset_universe, size) {
            for m in basis_of(&subset)? {
                idx.insert((subset.clone(), m.clone()), basis.len());
                basis.push(BasisVector { subset: subset.clone(), label: BasisLabel::Monomial(m) });
            }
        }
        spaces.push(basis);
        index.push(idx);
    }
    let mut boundaries = Vec::with_capacity(top);
    for i in 1..=top {
        let mut m = IntMatrix::zero(spaces[i - 1].len(), spaces[i].len());
        for (col, bv) in spaces[i].iter().enumerate() {
            let BasisLabel::Monomial(point) = &bv.label else { unreachable!() };
            for (target, sign) in subset_boundary_targets(&bv.subset) {
                let row = index[i - 1]
                    .get(&(target.clone(), point.clone()))
                    .copied()
                    .ok_or_else(|| {
                        Error::MalformedComplex(format!(
                            "monomial {point} of component {:?} is missing from {target:?}",
                            bv.subset
                        ))
                    })?;
                m.set(row, col, BigInt::from(sign))?;
            }
        }
        boundaries.push(m);
    }
    let complex = ChainComplex { value: v.clone(), spaces, boundaries };
    complex.validate()?;
    Ok(complex)
}

/// The complex over all subsets of the valuation indices with components
/// `M(v + e_I) / M(v + 1)`. Without a degree bound every component must be
/// certified finite; with one, each basis is truncated to that total degree.
pub fn build_ambient_complex(
    ambient: &AmbientSpace,
    valuations: &ValuationSet,
    v: &MultiIndex,
    degree_bound: Option<i64>,
) -> Result<ChainComplex> {
    if v.len() != valuations.len() {
        return Err(Error::DimensionMismatch { expected: valuations.len(), got: v.len() });
    }
    let upper = v.plus_ones();
    build_monomial_complex(v, valuations.len(), |subset| {
        let lower = v.plus_subset(subset);
        region_basis(ambient, valuations, &lower, &upper, degree_bound).map_err(|e| match e {
            Error::InfiniteBasis { coordinate, witness } => {
                Error::InfiniteDimension { coordinate, witness, subset: Some(subset.to_vec()) }
            }
            other => other,
        })
    })
}

/// The complex over subsets of all but the last valuation index, with
/// components `M(v + e_I) / M(v + e_I + e_r)`. Requires the last valuation to
/// be centered at the maximal ideal, which makes every component finite.
pub fn build_last_step_complex(
    ambient: &AmbientSpace,
    valuations: &ValuationSet,
    v: &MultiIndex,
) -> Result<ChainComplex> {
    let r = valuations.len();
    if v.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: v.len() });
    }
    let last = valuations.get(r - 1);
    if !is_centered_at_maximal_ideal(last, ambient)? {
        let witness = ambient
            .generators()
            .into_iter()
            .find(|g| last.dot(g) == 0)
            .map(|g| g.coords().to_vec())
            .unwrap_or_default();
        return Err(Error::NotCentered { index: r - 1, witness });
    }
    build_monomial_complex(v, r - 1, |subset| {
        let lower = v.plus_subset(subset);
        let upper = lower.plus_subset(&[r - 1]);
        region_basis(ambient, valuations, &lower, &upper, None)
    })
}

/// Row-reduced basis of a rational row space, with pivot columns.
struct ReducedBasis {
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl ReducedBasis {
    fn from_rows(mut rows: Vec<Vec<BigRational>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut out: Vec<Vec<BigRational>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for col in 0..ncols {
            let Some(pos) = rows.iter().position(|r| !r[col].is_zero()) else { continue };
            let mut pivot_row = rows.swap_remove(pos);
            let inv = pivot_row[col].clone();
            for x in pivot_row.iter_mut() {
                *x /= &inv;
            }
            for r in rows.iter_mut() {
                if !r[col].is_zero() {
                    let f = r[col].clone();
                    for (x, p) in r.iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
            for r in out.iter_mut() {
                if !r[col].is_zero() {
                    let f = r[col].clone();
                    for (x, p) in r.iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
            out.push(pivot_row);
            pivots.push(col);
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            if rows.is_empty() {
                break;
            }
        }
        ReducedBasis { rows: out, pivots }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Normal form modulo the row space.
    fn reduce(&self, vec: &mut [BigRational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !vec[p].is_zero() {
                let f = vec[p].clone();
                for (x, y) in vec.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
    }

    /// Coordinates of `vec` in this basis; None if it is not in the span.
    fn coordinates(&self, vec: &[BigRational]) -> Option<Vec<BigRational>> {
        let coeffs: Vec<BigRational> = self.pivots.iter().map(|&p| vec[p].clone()).collect();
        let mut residual = vec.to_vec();
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if !c.is_zero() {
                for (x, y) in residual.iter_mut().zip(row) {
                    *x -= c * y;
                }
            }
        }
        residual.iter().all(|x| x.is_zero()).then_some(coeffs)
    }
}

/// All monomials of `C^d` with total degree at most `bound`, in lex order.
fn monomials_up_to_degree(d: usize, bound: i64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let mut current = vec![0i64; d];
    fn rec(out: &mut Vec<LatticePoint>, current: &mut Vec<i64>, pos: usize, left: i64) {
        if pos == current.len() {
            out.push(LatticePoint::new(current.clone()));
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            rec(out, current, pos + 1, left - e);
            current[pos] = 0;
        }
    }
    rec(&mut out, &mut current, 0, bound.max(0));
    out.sort();
    out
}

/// The embedded complex for the principal ideal `(h)`: components are the
/// images of the degree-bounded parts of `M(v + e_I)` inside the working
/// quotient of all degree-bounded polynomials by the span of the
/// `M(v + 1)`-monomials together with the multiples of `h` that fit under the
/// bound. Bases are reduced; boundary matrices are scaled to integers, which
/// leaves ranks and compositions unchanged.
pub fn build_embedded_complex(
    ambient: &AmbientSpace,
    valuations: &ValuationSet,
    h: &MonomialPoly,
    v: &MultiIndex,
    degree_bound: i64,
) -> Result<ChainComplex> {
    let AmbientSpace::AffineSpace(d) = *ambient else {
        return Err(Error::Validation(
            "the embedded complex is built over affine space (polynomial ring)".into(),
        ));
    };
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if h.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: h.dim() });
    }
    if degree_bound < 0 {
        return Err(Error::Validation("degree bound must be nonnegative".into()));
    }
    let r = valuations.len();
    if v.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: v.len() });
    }
    valuations.validate_for(ambient)?;

    let monomials = monomials_up_to_degree(d, degree_bound);
    let col_of: BTreeMap<&LatticePoint, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = monomials.len();
    let values: Vec<MultiIndex> = monomials.iter().map(|m| valuations.values(m)).collect();

    // Working quotient: kill M(v+1)-monomials and whole multiples of h.
    let tail = v.plus_ones().clamp_nonnegative();
    let mut relation_rows: Vec<Vec<BigRational>> = Vec::new();
    for (i, val) in values.iter().enumerate() {
        if tail.le(val) {
            let mut row = vec![BigRational::zero(); n];
            row[i] = BigRational::one();
            relation_rows.push(row);
        }
    }
    let h_deg = h.max_degree().expect("h is nonzero");
    for m in &monomials {
        if m.total_degree() + h_deg <= degree_bound {
            let product = h.shift(m);
            let mut row = vec![BigRational::zero(); n];
            for (e, c) in product.terms() {
                row[col_of[e]] = c.clone();
            }
            relation_rows.push(row);
        }
    }
    let relations = ReducedBasis::from_rows(relation_rows);

    // Normal forms of the candidate generators, shared across subsets.
    let floor = v.clamp_nonnegative();
    let candidates: Vec<usize> =
        (0..n).filter(|&i| floor.le(&values[i])).collect();
    let mut normal_forms: BTreeMap<usize, Vec<BigRational>> = BTreeMap::new();
    for &i in &candidates {
        let mut vec = vec![BigRational::zero(); n];
        vec[i] = BigRational::one();
        relations.reduce(&mut vec);
        normal_forms.insert(i, vec);
    }

    // Image basis per subset.
    let mut component: BTreeMap<Vec<usize>, ReducedBasis> = BTreeMap::new();
    let mut spaces: Vec<Vec<BasisVector>> = Vec::with_capacity(r + 1);
    let mut offsets: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(r + 1);
    for size in 0..=r {
        let mut basis = Vec::new();
        let mut offs = BTreeMap::new();
        for subset in subsets_of_size(r, size) {
            let lower = v.plus_subset(&subset).clamp_nonnegative();
            let gens: Vec<Vec<BigRational>> = candidates
                .iter()
                .filter(|&&i| lower.le(&values[i]))
                .map(|i| normal_forms[i].clone())
                .filter(|nf| nf.iter().any(|x| !x.is_zero()))
                .collect();
            let reduced = ReducedBasis::from_rows(gens);
            offs.insert(subset.clone(), basis.len());
            for k in 0..reduced.dim() {
                basis.push(BasisVector { subset: subset.clone(), label: BasisLabel::Class(k) });
            }
            component.insert(subset, reduced);
        }
        spaces.push(basis);
        offsets.push(offs);
    }

    // Boundaries: inclusion-induced maps expressed in the reduced bases,
    // then scaled entrywise by a common denominator.
    let mut boundaries = Vec::with_capacity(r);
    for i in 1..=r {
        let rational = {
            let mut entries: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
            for subset in subsets_of_size(r, i) {
                let src = &component[&subset];
                let col0 = offsets[i][&subset];
                for (target, sign) in subset_boundary_targets(&subset) {
                    let dst = &component[&target];
                    let row0 = offsets[i - 1][&target];
                    for (k, row) in src.rows.iter().enumerate() {
                        let coords = dst.coordinates(row).ok_or_else(|| {
                            Error::MalformedComplex(format!(
                                "image of component {subset:?} does not land in {target:?}"
                            ))
                        })?;
                        for (t, c) in coords.into_iter().enumerate() {
                            if !c.is_zero() {
                                let cell = entries
                                    .entry((row0 + t, col0 + k))
                                    .or_insert_with(BigRational::zero);
                                *cell += BigRational::from_integer(sign.into()) * c;
                            }
                        }
                    }
                }
            }
            entries
        };
        let mut denom = BigInt::one();
        for c in rational.values() {
            denom = num_integer::lcm(denom, c.denom().clone());
        }
        let mut m = IntMatrix::zero(spaces[i - 1].len(), spaces[i].len());
        for ((row, col), c) in rational {
            let scaled = c * BigRational::from_integer(denom.clone());
            debug_assert!(scaled.is_integer());
            m.set(row, col, scaled.to_integer())?;
        }
        boundaries.push(m);
    }
    let complex = ChainComplex { value: v.clone(), spaces, boundaries };
    complex.validate()?;
    Ok(complex)
}

/// Homology dimensions of a complex, degree by degree.
pub fn homology_profile(complex: &ChainComplex) -> Result<HomologyProfile> {
    let h = if complex.boundaries.is_empty() {
        let padded = [IntMatrix::zero(complex.spaces[0].len(), 0)];
        let mut h = homology_dims(&padded)?;
        h.truncate(complex.spaces.len());
        h
    } else {
        homology_dims(&complex.boundaries)?
    };
    Ok(HomologyProfile::new(h))
}

/// Euler characteristic together with the profile trace along a schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilization {
    pub euler: i64,
    pub trace: Vec<(i64, HomologyProfile)>,
}

/// Builds the complex at increasing degree bounds and accepts the Euler
/// characteristic once two consecutive bounds give identical profiles.
pub fn stabilized_profile(
    mut build: impl FnMut(i64) -> Result<ChainComplex>,
    schedule: &[i64],
) -> Result<Stabilization> {
    if schedule.is_empty() {
        return Err(Error::Validation("stabilization schedule must be nonempty".into()));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Validation("stabilization schedule must be strictly increasing".into()));
    }
    let mut trace: Vec<(i64, HomologyProfile)> = Vec::new();
    for &bound in schedule {
        let profile = homology_profile(&build(bound)?)?;
        if let Some((_, prev)) = trace.last() {
            if prev == &profile {
                let euler = profile.euler;
                trace.push((bound, profile));
                return Ok(Stabilization { euler, trace });
            }
        }
        trace.push((bound, profile));
    }
    Err(Error::NonStabilized {
        schedule: schedule.to_vec(),
        trace: trace.into_iter().map(|(b, p)| (b, p.h)).collect(),
    })
}

/// As `stabilized_profile`, returning only the Euler characteristic.
pub fn stabilized_euler(
    build: impl FnMut(i64) -> Result<ChainComplex>,
    schedule: &[i64],
) -> Result<i64> {
    stabilized_profile(build, schedule).map(|s| s.euler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_fiber;
    use crate::lattice::Valuation;
    use num_bigint::BigInt;

    fn plane() -> AmbientSpace {
        AmbientSpace::affine(2).unwrap()
    }

    fn vs(weights: &[&[i64]]) -> ValuationSet {
        ValuationSet::new(weights.iter().map(|w| Valuation::new(w.to_vec()).unwrap()).collect())
            .unwrap()
    }

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn x_plus_y() -> MonomialPoly {
        MonomialPoly::new(2, vec![(rat(1), lp(&[1, 0])), (rat(1), lp(&[0, 1]))]).unwrap()
    }

    #[test]
    fn degree_three_boundary_matches_sign_convention() {
        let c = full_simplex_complex(4);
        let expected = IntMatrix::from_rows(vec![
            vec![-1, -1, 0, 0],
            vec![1, 0, -1, 0],
            vec![0, 1, 1, 0],
            vec![-1, 0, 0, -1],
            vec![0, -1, 0, 1],
            vec![0, 0, -1, -1],
        ]);
        assert_eq!(c.boundaries[2], expected);
        c.validate().unwrap();
    }

    #[test]
    fn ambient_complex_in_one_variable() {
        let line = AmbientSpace::affine(1).unwrap();
        let nus = vs(&[&[1]]);
        let c = build_ambient_complex(&line, &nus, &mi(&[0]), None).unwrap();
        assert_eq!(c.dims(), vec![1, 0]);
        assert_eq!(c.spaces[0][0].label, BasisLabel::Monomial(lp(&[0])));
        for b in &c.boundaries {
            assert!(b.is_zero());
        }
    }

    #[test]
    fn ambient_complex_dims_and_homology() {
        // nu = {a+b, a+2b} at v = (2,3): component bases by brute force are
        // V_{} = {(0,2),(1,1),(3,0)}, V_{0} = {(3,0)}, V_{1} = {(0,2)},
        // V_{0,1} = {}; homology is concentrated on the fiber {(1,1)}.
        let nus = vs(&[&[1, 1], &[1, 2]]);
        let c = build_ambient_complex(&plane(), &nus, &mi(&[2, 3]), None).unwrap();
        assert_eq!(c.dims(), vec![3, 2, 0]);
        let labels: Vec<_> = c.spaces[0]
            .iter()
            .map(|b| match &b.label {
                BasisLabel::Monomial(m) => m.clone(),
                _ => panic!(),
            })
            .collect();
        assert_eq!(labels, vec![lp(&[0, 2]), lp(&[1, 1]), lp(&[3, 0])]);
        let profile = homology_profile(&c).unwrap();
        assert_eq!(profile.h, vec![1, 0, 0]);
        assert_eq!(profile.euler, 1);
    }

    #[test]
    fn ambient_complex_requires_finite_components() {
        let coord = vs(&[&[1, 0], &[0, 1]]);
        let err = build_ambient_complex(&plane(), &coord, &mi(&[1, 1]), None).unwrap_err();
        assert!(matches!(err, Error::InfiniteDimension { .. }));
    }

    #[test]
    fn last_step_complex_examples() {
        // r = 1: a single component M(v)/M(v+1), no boundaries.
        let line = AmbientSpace::affine(1).unwrap();
        let c = build_last_step_complex(&line, &vs(&[&[1]]), &mi(&[2])).unwrap();
        assert_eq!(c.dims(), vec![1]);

        let nus = vs(&[&[1, 0], &[1, 1]]);
        let c = build_last_step_complex(&plane(), &nus, &mi(&[1, 1])).unwrap();
        assert_eq!(c.dims(), vec![1, 0]);
        assert_eq!(homology_profile(&c).unwrap().euler, 1);

        let nus = vs(&[&[1, 1], &[1, 2]]);
        let c = build_last_step_complex(&plane(), &nus, &mi(&[0, 0])).unwrap();
        assert_eq!(c.dims(), vec![1, 0]);
        assert_eq!(homology_profile(&c).unwrap().euler, 1);
    }

    #[test]
    fn last_step_complex_requires_centered_last_valuation() {
        let nus = vs(&[&[1, 1], &[1, 0]]);
        let err = build_last_step_complex(&plane(), &nus, &mi(&[0, 0])).unwrap_err();
        assert_eq!(err, Error::NotCentered { index: 1, witness: vec![0, 1] });
    }

    #[test]
    fn last_step_euler_matches_fiber_count_when_last_is_centered() {
        let instances: Vec<(ValuationSet, Vec<i64>)> = vec![
            (vs(&[&[1, 0], &[1, 1]]), vec![1, 1]),
            (vs(&[&[1, 0], &[1, 1]]), vec![2, 3]),
            (vs(&[&[2, 0], &[1, 1]]), vec![2, 2]),
            (vs(&[&[0, 3], &[2, 1]]), vec![3, 4]),
            (vs(&[&[1, 2], &[1, 1]]), vec![4, 3]),
        ];
        for (nus, v) in instances {
            let v = mi(&v);
            let chi = homology_profile(&build_last_step_complex(&plane(), &nus, &v).unwrap())
                .unwrap()
                .euler;
            let fiber = enumerate_fiber(&plane(), &nus, &v).unwrap().len() as i64;
            assert_eq!(chi, fiber, "at {v} for {nus:?}");
        }
    }

    #[test]
    fn embedded_complex_euler_on_and_off_the_diagonal() {
        let nus = vs(&[&[1, 1], &[0, 1]]);
        let h = x_plus_y();
        let on = build_embedded_complex(&plane(), &nus, &h, &mi(&[2, 2]), 8).unwrap();
        assert_eq!(homology_profile(&on).unwrap().euler, 1);
        let off = build_embedded_complex(&plane(), &nus, &h, &mi(&[2, 1]), 8).unwrap();
        assert_eq!(homology_profile(&off).unwrap().euler, 0);
    }

    #[test]
    fn embedded_complex_with_swallowed_tail_is_empty() {
        // v below every value and bound 0: the constant monomial already lies
        // in M(v+1), so the working quotient collapses entirely.
        let nus = vs(&[&[1, 0], &[0, 1]]);
        let h = MonomialPoly::monomial(lp(&[2, 0]));
        let c = build_embedded_complex(&plane(), &nus, &h, &mi(&[-1, -1]), 0).unwrap();
        assert_eq!(c.dims(), vec![0, 0, 0]);
        assert_eq!(homology_profile(&c).unwrap().euler, 0);
    }

    #[test]
    fn embedded_complex_cancellation_case() {
        // coordinate valuations and h = x + y: every coefficient cancels,
        // with nonzero h_0 = h_1 at the origin.
        let coord = vs(&[&[1, 0], &[0, 1]]);
        let c = build_embedded_complex(&plane(), &coord, &x_plus_y(), &mi(&[0, 0]), 4).unwrap();
        let profile = homology_profile(&c).unwrap();
        assert_eq!(profile.h, vec![1, 1, 0]);
        assert_eq!(profile.euler, 0);
    }

    #[test]
    fn profile_of_full_simplex_complex_vanishes() {
        let profile = homology_profile(&full_simplex_complex(4)).unwrap();
        assert_eq!(profile.h, vec![0; 5]);
        assert_eq!(profile.euler, 0);
    }

    #[test]
    fn stabilization_examples() {
        let coord = vs(&[&[1, 0], &[0, 1]]);
        let chi = stabilized_euler(
            |b| build_ambient_complex(&plane(), &coord, &mi(&[1, 1]), Some(b)),
            &[4, 6, 8],
        )
        .unwrap();
        assert_eq!(chi, 1);

        let nus = vs(&[&[1, 1], &[0, 1]]);
        let chi = stabilized_euler(
            |b| build_embedded_complex(&plane(), &nus, &x_plus_y(), &mi(&[3, 3]), b),
            &[6, 8, 10],
        )
        .unwrap();
        assert_eq!(chi, 1);

        let chi = stabilized_euler(
            |b| build_ambient_complex(&plane(), &coord, &mi(&[-1, 2]), Some(b)),
            &[2, 4],
        )
        .unwrap();
        assert_eq!(chi, 0);
    }

    #[test]
    fn stabilization_failure_carries_the_trace() {
        let coord = vs(&[&[1, 0], &[0, 1]]);
        let err = stabilized_euler(
            |b| build_ambient_complex(&plane(), &coord, &mi(&[1, 1]), Some(b)),
            &[4],
        )
        .unwrap_err();
        match err {
            Error::NonStabilized { schedule, trace } => {
                assert_eq!(schedule, vec![4]);
                assert_eq!(trace.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_schedules_are_rejected() {
        let coord = vs(&[&[1, 0], &[0, 1]]);
        let build = |b| build_ambient_complex(&plane(), &coord, &mi(&[0, 0]), Some(b));
        assert!(matches!(stabilized_euler(build, &[]), Err(Error::Validation(_))));
        let build = |b| build_ambient_complex(&plane(), &coord, &mi(&[0, 0]), Some(b));
        assert!(matches!(stabilized_euler(build, &[4, 4]), Err(Error::Validation(_))));
    }

    #[test]
    fn truncated_profile_is_constant_past_the_fiber_degree() {
        let nus = vs(&[&[1, 1], &[1, 2]]);
        let v = mi(&[2, 3]);
        let fiber = enumerate_fiber(&plane(), &nus, &v).unwrap();
        let max_deg = fiber.iter().map(|m| m.total_degree()).max().unwrap_or(0);
        let base =
            homology_profile(&build_ambient_complex(&plane(), &nus, &v, Some(max_deg)).unwrap())
                .unwrap();
        for extra in [1, 2, 4] {
            let p = homology_profile(
                &build_ambient_complex(&plane(), &nus, &v, Some(max_deg + extra)).unwrap(),
            )
            .unwrap();
            assert_eq!(p, base);
        }
    }

    #[test]
    fn per_monomial_decomposition_forces_exactness() {
        // rank-computed homology agrees with the fiber count in degree 0 and
        // vanishes above, for a sample of instances and indices
        let cases: Vec<(ValuationSet, Vec<i64>)> = vec![
            (vs(&[&[1, 0], &[0, 1]]), vec![2, 1]),
            (vs(&[&[1, 1], &[1, 2]]), vec![2, 3]),
            (vs(&[&[1, 0], &[1, 1]]), vec![3, 3]),
            (vs(&[&[2, 1], &[1, 3]]), vec![4, 5]),
        ];
        for (nus, v) in cases {
            let v = mi(&v);
            let fiber = enumerate_fiber(&plane(), &nus, &v).unwrap();
            let bound = fiber.iter().map(|m| m.total_degree()).max().unwrap_or(0);
            let c = build_ambient_complex(&plane(), &nus, &v, Some(bound)).unwrap();
            let profile = homology_profile(&c).unwrap();
            assert_eq!(profile.h[0], fiber.len() as i64);
            assert!(profile.h[1..].iter().all(|&x| x == 0));
        }
    }
}
