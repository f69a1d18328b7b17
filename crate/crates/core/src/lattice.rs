//! Lattice points, ambient spaces, monomial valuations and polynomials with
//! exact rational coefficients.
//!
//! A monomial valuation is an integer weight vector paired against monomial
//! exponents; on a polynomial it takes the minimum over the support. All
//! arithmetic is exact: lattice data is `i64`, coefficients are
//! arbitrary-precision rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::Result;

/// Exponent vector of a monomial in `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Sum of coordinates.
    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// i-th unit vector in dimension d.
    pub fn unit(d: usize, i: usize) -> Self {
        let mut c = vec![0; d];
        c[i] = 1;
        LatticePoint(c)
    }

    pub fn origin(d: usize) -> Self {
        LatticePoint(vec![0; d])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Value vector in `Z^r`, one entry per valuation. Entries may be negative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn new(v: Vec<i64>) -> Self {
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zeros(r: usize) -> Self {
        MultiIndex(vec![0; r])
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Adds 1 in every coordinate listed in `subset` (0-based, strictly increasing).
    pub fn plus_subset(&self, subset: &[usize]) -> MultiIndex {
        let mut v = self.0.clone();
        for &j in subset {
            v[j] += 1;
        }
        MultiIndex(v)
    }

    /// Adds 1 in every coordinate.
    pub fn plus_ones(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|a| a + 1).collect())
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise max with 0. Monomials have nonnegative values, so lower
    /// bounds below zero are vacuous.
    pub fn clamp_nonnegative(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&a| a.max(0)).collect())
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&a| a < 0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Affine space `C^d` or the affine semigroup ring spanned by explicit
/// generators. Affine space is the semigroup generated by the unit vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbientSpace {
    AffineSpace(usize),
    Semigroup(Vec<LatticePoint>),
}

impl AmbientSpace {
    pub fn affine(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Validation("ambient dimension must be >= 1".into()));
        }
        Ok(AmbientSpace::AffineSpace(d))
    }

    pub fn semigroup(generators: Vec<LatticePoint>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Validation("semigroup needs at least one generator".into()));
        }
        let d = generators[0].dim();
        if d == 0 {
            return Err(Error::Validation("semigroup generators must have dimension >= 1".into()));
        }
        for g in &generators {
            if g.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: g.dim() });
            }
            if g.is_zero() {
                return Err(Error::Validation("semigroup generators must be nonzero".into()));
            }
        }
        Ok(AmbientSpace::Semigroup(generators))
    }

    /// Lattice dimension of the ambient coordinates.
    pub fn dim(&self) -> usize {
        match self {
            AmbientSpace::AffineSpace(d) => *d,
            AmbientSpace::Semigroup(gens) => gens[0].dim(),
        }
    }

    /// Semigroup generators; the unit vectors for affine space.
    pub fn generators(&self) -> Vec<LatticePoint> {
        match self {
            AmbientSpace::AffineSpace(d) => (0..*d).map(|i| LatticePoint::unit(*d, i)).collect(),
            AmbientSpace::Semigroup(gens) => gens.clone(),
        }
    }
}

/// A monomial valuation, given by its nonnegative integer weight vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(pub Vec<i64>);

impl Valuation {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Validation("valuation weight vector must be nonempty".into()));
        }
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::Validation(format!("valuation weights must be nonnegative, got {weights:?}")));
        }
        Ok(Valuation(weights))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// `<nu, m>` without the dimension check; callers validate once up front.
    pub(crate) fn dot(&self, m: &LatticePoint) -> i64 {
        debug_assert_eq!(self.dim(), m.dim());
        self.0.iter().zip(&m.0).map(|(w, c)| w * c).sum()
    }

    /// The valuation lies in the cone dual to the semigroup: it must pair
    /// nonnegatively with every generator.
    pub fn validate_for(&self, ambient: &AmbientSpace) -> Result<()> {
        if self.dim() != ambient.dim() {
            return Err(Error::DimensionMismatch { expected: ambient.dim(), got: self.dim() });
        }
        for g in ambient.generators() {
            if self.dot(&g) < 0 {
                return Err(Error::Validation(format!(
                    "valuation {:?} takes negative value on generator {:?}",
                    self.0, g.0
                )));
            }
        }
        Ok(())
    }
}

/// Integer pairing `<nu, m>` of a valuation against a monomial exponent.
pub fn pair(nu: &Valuation, m: &LatticePoint) -> Result<i64> {
    if nu.dim() != m.dim() {
        return Err(Error::DimensionMismatch { expected: nu.dim(), got: m.dim() });
    }
    Ok(nu.dot(m))
}

/// Value of a nonzero polynomial: the minimum of the pairing over the support.
pub fn value_of_poly(nu: &Valuation, h: &MonomialPoly) -> Result<i64> {
    let mut best: Option<i64> = None;
    for e in h.support() {
        let v = pair(nu, e)?;
        best = Some(best.map_or(v, |b| b.min(v)));
    }
    best.ok_or(Error::ZeroPolynomial)
}

/// True iff the center `{f : nu(f) > 0}` is the maximal ideal, i.e. the
/// valuation is strictly positive on every semigroup generator.
pub fn is_centered_at_maximal_ideal(nu: &Valuation, ambient: &AmbientSpace) -> Result<bool> {
    nu.validate_for(ambient)?;
    Ok(ambient.generators().iter().all(|g| nu.dot(g) > 0))
}

/// Ordered list of r monomial valuations. The index order is significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationSet(pub Vec<Valuation>);

impl ValuationSet {
    pub fn new(valuations: Vec<Valuation>) -> Result<Self> {
        if valuations.is_empty() {
            return Err(Error::Validation("need at least one valuation".into()));
        }
        let d = valuations[0].dim();
        for nu in &valuations {
            if nu.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: nu.dim() });
            }
        }
        Ok(ValuationSet(valuations))
    }

    pub fn from_weights(weights: Vec<Vec<i64>>) -> Result<Self> {
        ValuationSet::new(weights.into_iter().map(Valuation::new).collect::<Result<_>>()?)
    }

    /// Number of valuations r.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Valuation> {
        self.0.iter()
    }

    pub fn get(&self, j: usize) -> &Valuation {
        &self.0[j]
    }

    pub fn validate_for(&self, ambient: &AmbientSpace) -> Result<()> {
        for nu in &self.0 {
            nu.validate_for(ambient)?;
        }
        Ok(())
    }

    /// Full value vector `(nu_1(m), ..., nu_r(m))`.
    pub fn values(&self, m: &LatticePoint) -> MultiIndex {
        MultiIndex(self.0.iter().map(|nu| nu.dot(m)).collect())
    }

    /// Value vector of a nonzero polynomial, entrywise minimum over the support.
    pub fn values_of_poly(&self, h: &MonomialPoly) -> Result<MultiIndex> {
        let vs = self
            .0
            .iter()
            .map(|nu| value_of_poly(nu, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiIndex(vs))
    }
}

/// Polynomial with exact rational coefficients, stored sparsely by exponent.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPoly {
    terms: BTreeMap<LatticePoint, BigRational>,
    dim: usize,
}

impl MonomialPoly {
    /// Builds a polynomial from a term list, combining duplicate exponents and
    /// dropping terms that cancel to zero.
    pub fn new(dim: usize, terms: Vec<(BigRational, LatticePoint)>) -> Result<Self> {
        let mut map: BTreeMap<LatticePoint, BigRational> = BTreeMap::new();
        for (c, e) in terms {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: e.dim() });
            }
            let entry = map.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MonomialPoly { terms: map, dim })
    }

    /// One monomial with coefficient 1.
    pub fn monomial(e: LatticePoint) -> Self {
        let dim = e.dim();
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::from_integer(1.into()));
        MonomialPoly { terms, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree over the support; None for the zero polynomial.
    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    pub fn mul(&self, other: &MonomialPoly) -> Result<MonomialPoly> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut map: BTreeMap<LatticePoint, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.add(e2);
                let entry = map.entry(e).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MonomialPoly { terms: map, dim: self.dim })
    }

    /// Multiplies by a single monomial (exponent shift).
    pub fn shift(&self, e: &LatticePoint) -> MonomialPoly {
        debug_assert_eq!(self.dim, e.dim());
        let terms = self
            .terms
            .iter()
            .map(|(f, c)| (f.add(e), c.clone()))
            .collect();
        MonomialPoly { terms, dim: self.dim }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn lp(coords: &[i64]) -> LatticePoint {
        LatticePoint::new(coords.to_vec())
    }

    /// x + y over C^2.
    fn x_plus_y() -> MonomialPoly {
        MonomialPoly::new(2, vec![(rat(1), lp(&[1, 0])), (rat(1), lp(&[0, 1]))]).unwrap()
    }

    #[test]
    fn pair_examples() {
        let nu = Valuation::new(vec![1, 0]).unwrap();
        assert_eq!(pair(&nu, &lp(&[2, 3])).unwrap(), 2);

        let zero = Valuation::new(vec![0, 0]).unwrap();
        assert_eq!(pair(&zero, &lp(&[5, 7])).unwrap(), 0);

        let nu = Valuation::new(vec![3, 2]).unwrap();
        assert_eq!(pair(&nu, &lp(&[2, 0])).unwrap(), 6);
    }

    #[test]
    fn pair_rejects_dimension_mismatch() {
        let nu = Valuation::new(vec![1, 0]).unwrap();
        assert!(matches!(
            pair(&nu, &lp(&[1, 2, 3])),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn value_of_poly_examples() {
        let h = x_plus_y();
        assert_eq!(value_of_poly(&Valuation::new(vec![1, 0]).unwrap(), &h).unwrap(), 0);
        assert_eq!(value_of_poly(&Valuation::new(vec![1, 1]).unwrap(), &h).unwrap(), 1);

        // x^2 + y^3
        let g = MonomialPoly::new(2, vec![(rat(1), lp(&[2, 0])), (rat(1), lp(&[0, 3]))]).unwrap();
        assert_eq!(value_of_poly(&Valuation::new(vec![3, 2]).unwrap(), &g).unwrap(), 6);
    }

    #[test]
    fn value_of_zero_poly_is_an_error() {
        let zero = MonomialPoly::new(2, vec![]).unwrap();
        assert!(zero.is_zero());
        let nu = Valuation::new(vec![1, 1]).unwrap();
        assert_eq!(value_of_poly(&nu, &zero), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn cancelling_terms_leave_the_zero_polynomial() {
        let p = MonomialPoly::new(2, vec![(rat(2), lp(&[1, 1])), (rat(-2), lp(&[1, 1]))]).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn centered_examples() {
        let plane = AmbientSpace::affine(2).unwrap();
        assert!(!is_centered_at_maximal_ideal(&Valuation::new(vec![1, 0]).unwrap(), &plane).unwrap());
        assert!(is_centered_at_maximal_ideal(&Valuation::new(vec![1, 1]).unwrap(), &plane).unwrap());

        // On the semigroup <(1,0),(1,1),(1,2)> the weight (1,0) pairs to 1
        // with every generator, so it is centered there.
        let sg = AmbientSpace::semigroup(vec![lp(&[1, 0]), lp(&[1, 1]), lp(&[1, 2])]).unwrap();
        assert!(is_centered_at_maximal_ideal(&Valuation::new(vec![1, 0]).unwrap(), &sg).unwrap());
    }

    #[test]
    fn valuation_rejects_negative_weights() {
        assert!(Valuation::new(vec![1, -1]).is_err());
    }

    #[test]
    fn semigroup_rejects_zero_generator() {
        assert!(AmbientSpace::semigroup(vec![lp(&[0, 0])]).is_err());
    }

    #[test]
    fn multi_index_ops() {
        let v = MultiIndex::new(vec![1, -2, 3]);
        assert_eq!(v.plus_subset(&[0, 2]).0, vec![2, -2, 4]);
        assert_eq!(v.plus_ones().0, vec![2, -1, 4]);
        assert_eq!(v.clamp_nonnegative().0, vec![1, 0, 3]);
        assert!(v.le(&MultiIndex::new(vec![1, 0, 3])));
        assert!(!MultiIndex::new(vec![2, 0, 0]).le(&v));
    }

    proptest! {
        #[test]
        fn pairing_is_bilinear(w in proptest::collection::vec(0i64..50, 1..5),
                               a in proptest::collection::vec(-20i64..20, 1..5),
                               b in proptest::collection::vec(-20i64..20, 1..5)) {
            let d = w.len().min(a.len()).min(b.len());
            let nu = Valuation::new(w[..d].to_vec()).unwrap();
            let m1 = lp(&a[..d]);
            let m2 = lp(&b[..d]);
            let lhs = pair(&nu, &m1.add(&m2)).unwrap();
            let rhs = pair(&nu, &m1).unwrap() + pair(&nu, &m2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn poly_value_is_multiplicative(seed in 0u64..500) {
            // Random small polynomials with generic rational coefficients:
            // values of products add because the minimum is attained.
            let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut next = move |m: u64| { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s % m };
            let d = 2;
            let mut mk = |nterms: u64| {
                let mut terms = vec![];
                for _ in 0..nterms {
                    let e = lp(&[(next(4)) as i64, (next(4)) as i64]);
                    // coefficients of the form k + 1/p keep them generic
                    let c = rat(next(5) as i64 + 1) + BigRational::new(BigInt::from(1), BigInt::from(next(7) as i64 + 2));
                    terms.push((c, e));
                }
                MonomialPoly::new(d, terms).unwrap()
            };
            let h1 = mk(next(3) + 1);
            let h2 = mk(next(3) + 1);
            prop_assume!(!h1.is_zero() && !h2.is_zero());
            let nu = Valuation::new(vec![next(4) as i64, next(4) as i64]).unwrap();
            let product = h1.mul(&h2).unwrap();
            prop_assume!(!product.is_zero());
            let lhs = value_of_poly(&nu, &product).unwrap();
            let rhs = value_of_poly(&nu, &h1).unwrap() + value_of_poly(&nu, &h2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
