//! Exact computation of multi-index Poincaré series for filtrations defined
//! by monomial valuations on affine space and affine semigroup rings.
//!
//! The library provides several routes to the series coefficients —
//! alternating sums of filtration-quotient dimensions, value-fiber counts,
//! and chain-complex homology — together with cross-checking between them,
//! the embedded-subspace series of a principal ideal with its
//! `(1 - t^q)`-product rule, and a Newton-polyhedron pipeline producing the
//! induced facet valuations. No floating point is used anywhere: lattice data
//! is machine-integer, linear algebra runs over arbitrary-precision integers
//! and rationals.

pub mod complex;
pub mod enumeration;
mod error;
pub mod lattice;
pub mod linalg;
pub mod newton;
pub mod poincare;
pub mod series;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

pub use complex::{
    build_ambient_complex, build_embedded_complex, build_last_step_complex, full_simplex_complex,
    homology_profile, stabilized_euler, stabilized_profile, ChainComplex, HomologyProfile,
};
pub use enumeration::{
    dim_filtration_quotient, enumerate_fiber, enumerate_quotient_basis, finiteness_check,
    FilterPredicate,
};
pub use lattice::{
    is_centered_at_maximal_ideal, pair, value_of_poly, AmbientSpace, LatticePoint, MonomialPoly,
    MultiIndex, Valuation, ValuationSet,
};
pub use linalg::{homology_dims, IntMatrix};
pub use series::{IndexBox, TruncatedSeries};
