use thiserror::Error;

/// Errors raised by the library. Infinite-dimensionality conditions are
/// reported as typed errors carrying a witness, never as sentinel values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the zero polynomial has no valuation value")]
    ZeroPolynomial,

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("infinite fiber: generator {witness:?} has value zero under every valuation")]
    InfiniteFiber { witness: Vec<i64> },

    #[error(
        "infinite monomial basis: generator {witness:?} pairs to zero with valuation {coordinate} \
         while the region is nonempty in that direction"
    )]
    InfiniteBasis { coordinate: usize, witness: Vec<i64> },

    #[error("infinite quotient dimension (valuation {coordinate}, generator {witness:?}{})",
            subset.as_ref().map(|s| format!(", subset {s:?}")).unwrap_or_default())]
    InfiniteDimension {
        coordinate: usize,
        witness: Vec<i64>,
        /// Index subset whose quotient blew up, when the caller sums over subsets.
        subset: Option<Vec<usize>>,
    },

    #[error("valuation {index} is not centered at the maximal ideal (generator {witness:?} has value 0)")]
    NotCentered { index: usize, witness: Vec<i64> },

    #[error("degree truncation cannot be certified: generator {witness:?} has nonpositive total degree")]
    DegreeNotCertified { witness: Vec<i64> },

    #[error("malformed chain complex: {0}")]
    MalformedComplex(String),

    #[error("homology profile did not stabilize over schedule {schedule:?} (trace: {trace:?})")]
    NonStabilized {
        schedule: Vec<i64>,
        /// (bound, h-vector) pairs observed along the schedule.
        trace: Vec<(i64, Vec<i64>)>,
    },

    #[error("series boxes are disjoint")]
    DisjointBoxes,

    #[error("unsupported dimension {dim} (supported up to {limit})")]
    UnsupportedDimension { dim: usize, limit: usize },

    #[error("coefficient at {v:?}: {source}")]
    CoefficientAt {
        v: Vec<i64>,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with the multi-index at which it occurred.
    pub fn at(self, v: &[i64]) -> Error {
        Error::CoefficientAt {
            v: v.to_vec(),
            source: Box::new(self),
        }
    }
}
