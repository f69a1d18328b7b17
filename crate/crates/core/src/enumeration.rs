//! Enumeration of monomial bases of filtration quotients and value fibers.
//!
//! Monomials of the semigroup ring are lattice points generated by sums of
//! the ambient generators. Every valuation pairs nonnegatively with every
//! generator, so value vectors only grow along a breadth-first search; all
//! region enumeration below relies on that monotonicity for pruning.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::Error;
use crate::lattice::{AmbientSpace, LatticePoint, MultiIndex, ValuationSet};
use crate::Result;

/// Hard cap on BFS states, a safety net against uncertified non-termination.
const STATE_BUDGET: usize = 5_000_000;

/// Describes the monomial set `{m : values(m) >= lower, not(values(m) >= upper)}`,
/// a monomial basis of the quotient `M(lower)/M(upper)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterPredicate {
    pub lower: MultiIndex,
    pub upper: MultiIndex,
}

impl FilterPredicate {
    pub fn new(lower: MultiIndex, upper: MultiIndex) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), got: upper.len() });
        }
        if !lower.le(&upper) {
            return Err(Error::Validation(format!(
                "predicate bounds must satisfy lower <= upper, got {lower} and {upper}"
            )));
        }
        if lower == upper {
            return Err(Error::Validation("predicate bounds must differ".into()));
        }
        Ok(FilterPredicate { lower, upper })
    }
}

/// Validated instance data with generator value vectors precomputed.
pub(crate) struct Enumerator {
    pub gens: Vec<LatticePoint>,
    pub gen_values: Vec<Vec<i64>>,
    pub r: usize,
}

impl Enumerator {
    pub fn new(ambient: &AmbientSpace, valuations: &ValuationSet) -> Result<Self> {
        valuations.validate_for(ambient)?;
        let gens = ambient.generators();
        let gen_values = gens
            .iter()
            .map(|g| valuations.iter().map(|nu| nu.dot(g)).collect())
            .collect();
        Ok(Enumerator { gens, gen_values, r: valuations.len() })
    }

    /// A generator whose value vector is zero, if one exists. Adding such a
    /// generator never changes any value, so fibers through it are infinite.
    pub fn value_blind_generator(&self) -> Option<usize> {
        self.gen_values.iter().position(|vals| vals.iter().all(|&v| v == 0))
    }

    /// Breadth-first search over sums of the listed generators. `keep` must be
    /// monotone: once a state is rejected, all of its extensions would be
    /// rejected too. The caller certifies termination.
    fn search(
        &self,
        gen_indices: &[usize],
        keep: impl Fn(&[i64], &[i64]) -> bool,
    ) -> Result<Vec<(LatticePoint, Vec<i64>)>> {
        let d = self.gens.first().map_or(0, |g| g.dim());
        let origin = vec![0i64; d];
        let zero_values = vec![0i64; self.r];
        if !keep(&origin, &zero_values) {
            return Ok(vec![]);
        }
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(origin.clone());
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
        queue.push_back((origin, zero_values));
        let mut out = Vec::new();
        while let Some((coords, values)) = queue.pop_front() {
            out.push((LatticePoint::new(coords.clone()), values.clone()));
            if out.len() > STATE_BUDGET {
                return Err(Error::Validation(
                    "enumeration exceeded the internal state budget; the region is too large".into(),
                ));
            }
            for &gi in gen_indices {
                let g = &self.gens[gi];
                let next: Vec<i64> = coords.iter().zip(g.coords()).map(|(a, b)| a + b).collect();
                if seen.contains(&next) {
                    continue;
                }
                let next_values: Vec<i64> =
                    values.iter().zip(&self.gen_values[gi]).map(|(a, b)| a + b).collect();
                if keep(&next, &next_values) {
                    seen.insert(next.clone());
                    queue.push_back((next, next_values));
                }
            }
        }
        Ok(out)
    }

    fn all_gens(&self) -> Vec<usize> {
        (0..self.gens.len()).collect()
    }

    /// All semigroup elements with every value bounded by `cap`. Terminates
    /// when no generator is value-blind.
    pub fn elements_with_values_at_most(&self, cap: &[i64]) -> Result<Vec<(LatticePoint, Vec<i64>)>> {
        self.search(&self.all_gens(), |_, vals| {
            vals.iter().zip(cap).all(|(v, c)| v <= c)
        })
    }

    /// Decides whether `{m : values(m) >= lower, values_j(m) <= cap}` is
    /// nonempty, in the presence of generators pairing to zero with
    /// valuation `j`. Every element splits as a sum of j-positive generators
    /// (finitely enumerable under the cap) plus j-zero generators, which can
    /// only raise the other values; so it suffices to find a j-positive part
    /// whose deficient coordinates are all coverable by some j-zero generator.
    fn region_nonempty_with_zero_directions(&self, j: usize, cap: i64, lower: &[i64]) -> Result<bool> {
        if cap < 0 {
            return Ok(false);
        }
        let (pos, zero): (Vec<usize>, Vec<usize>) =
            (0..self.gens.len()).partition(|&g| self.gen_values[g][j] > 0);
        let coverable: Vec<bool> = (0..self.r)
            .map(|k| zero.iter().any(|&g| self.gen_values[g][k] > 0))
            .collect();
        let states = self.search(&pos, |_, vals| vals[j] <= cap)?;
        Ok(states.iter().any(|(_, vals)| {
            vals.iter()
                .enumerate()
                .all(|(k, &v)| v >= lower[k] || coverable[k])
        }))
    }
}

fn in_region(values: &[i64], lower: &[i64], upper: &[i64]) -> bool {
    values.iter().zip(lower).all(|(v, l)| v >= l)
        && values.iter().zip(upper).any(|(v, u)| v < u)
}

/// Monomial basis of `M(lower)/M(upper)`, allowing `lower == upper` (empty).
/// With a degree bound the result is truncated to total degree <= bound;
/// without one, finiteness is certified per separating coordinate and an
/// infinite region is reported with a witness generator.
pub(crate) fn region_basis(
    ambient: &AmbientSpace,
    valuations: &ValuationSet,
    lower: &MultiIndex,
    upper: &MultiIndex,
    degree_bound: Option<i64>,
) -> Result<Vec<LatticePoint>> {
    let ctx = Enumerator::new(ambient, valuations)?;
    let low = lower.clamp_nonnegative();
    let up = upper.clamp_nonnegative();
    let separating: Vec<usize> = (0..ctx.r).filter(|&j| up.0[j] > low.0[j]).collect();
    if separating.is_empty() {
        return Ok(vec![]);
    }

    if let Some(bound) = degree_bound {
        for (gi, g) in ctx.gens.iter().enumerate() {
            if g.total_degree() <= 0 {
                return Err(Error::DegreeNotCertified { witness: ctx.gens[gi].coords().to_vec() });
            }
        }
        let states = ctx.search(&ctx.all_gens(), |coords, _| {
            coords.iter().sum::<i64>() <= bound
        })?;
        let mut out: BTreeSet<LatticePoint> = BTreeSet::new();
        for (m, vals) in states {
            if in_region(&vals, &low.0, &up.0) {
                out.insert(m);
            }
        }
        return Ok(out.into_iter().collect());
    }

    let mut out: BTreeSet<LatticePoint> = BTreeSet::new();
    for &j in &separating {
        let cap = up.0[j] - 1;
        let zeros: Vec<usize> =
            (0..ctx.gens.len()).filter(|&g| ctx.gen_values[g][j] == 0).collect();
        if zeros.is_empty() {
            // every generator raises value j, so this slab is finite
            let states = ctx.search(&ctx.all_gens(), |_, vals| vals[j] <= cap)?;
            for (m, vals) in states {
                if in_region(&vals, &low.0, &up.0) {
                    out.insert(m);
                }
            }
        } else if ctx.region_nonempty_with_zero_directions(j, cap, &low.0)? {
            return Err(Error::InfiniteBasis {
                coordinate: j,
                witness: ctx.gens[zeros[0]].coords().to_vec(),
            });
        }
    }
    Ok(out.into_iter().collect())
}

/// True iff every generator has strictly positive value under some valuation.
/// Then every value fiber is finite.
pub fn finiteness_check(ambient: &AmbientSpace, valuations: &ValuationSet) -> Result<bool> {
    let ctx = Enumerator::new(ambient, valuations)?;
    Ok(ctx.value_blind_generator().is_none())
}

/// The exact set `{m in S : values(m) = v}`, in lexicographic order.
/// Empty whenever some component of `v` is negative.
pub fn enumerate_fiber(
    ambient: &AmbientSpace,
    valuations: &ValuationSet,
    v: &MultiIndex,
) -> Result<Vec<LatticePoint>> {
    if v.len() != valuations.len() {
        return Err(Error::DimensionMismatch { expected: valuations.len(), got: v.len() });
    }
    let ctx = Enumerator::new(ambient, valuations)?;
    if let Some(gi) = ctx.value_blind_generator() {
        return Err(Error::InfiniteFiber { witness: ctx.gens[gi].coords().to_vec() });
    }
    if v.has_negative() {
        return Ok(vec![]);
    }
    let states = ctx.search(&ctx.all_gens(), |_, vals| {
        vals.iter().zip(&v.0).all(|(a, b)| a <= b)
    })?;
    let out: BTreeSet<LatticePoint> = states
        .into_iter()
        .filter(|(_, vals)| vals == &v.0)
        .map(|(m, _)| m)
        .collect();
    Ok(out.into_iter().collect())
}

/// Monomial basis of the quotient described by `predicate`, optionally
/// truncated to total degree <= `degree_bound`.
pub fn enumerate_quotient_basis(
    ambient: &AmbientSpace,
    valuations: &ValuationSet,
    predicate: &FilterPredicate,
    degree_bound: Option<i64>,
) -> Result<Vec<LatticePoint>> {
    if predicate.lower.len() != valuations.len() {
        return Err(Error::DimensionMismatch {
            expected: valuations.len(),
            got: predicate.lower.len(),
        });
    }
    region_basis(ambient, valuations, &predicate.lower, &predicate.upper, degree_bound)
}

/// dim `M(a)/M(b)` over the base field, certified finite or an error.
pub fn dim_filtration_quotient(
    ambient: &AmbientSpace,
    valuations: &ValuationSet,
    a: &MultiIndex,
    b: &MultiIndex,
) -> Result<i64> {
    let predicate = FilterPredicate::new(a.clone(), b.clone())?;
    match enumerate_quotient_basis(ambient, valuations, &predicate, None) {
        Ok(basis) => Ok(basis.len() as i64),
        Err(Error::InfiniteBasis { coordinate, witness }) => {
            Err(Error::InfiniteDimension { coordinate, witness, subset: None })
        }
        Err(e) => Err(e),
    }
}
