//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Two series (or a subspace and a vector) disagree on `(d, N, p)`.
    #[error("mismatched parameters: {left} vs {right}")]
    ParamMismatch { left: String, right: String },

    /// Request exceeds the desk-scale budget of the truncated algebra.
    #[error(
        "capacity exceeded: d={gens}, max degree {max_deg} needs ambient dimension {needed}, \
         limit is {limit}"
    )]
    Capacity {
        gens: usize,
        max_deg: usize,
        needed: u128,
        limit: u64,
    },

    /// Inversion of a series whose constant term vanishes.
    #[error("series is not a unit: constant term is zero")]
    NonUnit,

    /// Vector length does not match the ambient dimension of a subspace.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Word grammar violation, with a byte position into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A name in a word does not occur in the generator list.
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },

    /// A word references a generator index outside `[0, d)`.
    #[error("generator index {index} out of range for {gens} generators")]
    GeneratorIndex { index: usize, gens: usize },

    /// A relator of depth 1 makes the presentation non-minimal.
    #[error("relator {index} has depth 1; the presentation is not minimal")]
    NonMinimal { index: usize },

    /// A relator depth could not be resolved below the truncation degree.
    #[error(
        "relator {index} has depth above the truncation degree {max_deg}; \
         raise the maximum degree to resolve it"
    )]
    UnresolvedDepth { index: usize, max_deg: usize },

    /// A cutting depth below 2 is inadmissible.
    #[error("inadmissible cutting depth {0}: cutting data must have depth >= 2")]
    InadmissibleCut(usize),

    /// Negativity analysis hit its resolution floor without a certificate.
    #[error("sign analysis inconclusive: resolution floor 2^-40 reached without a certificate")]
    Inconclusive,

    /// Polynomial outside the sparse shapes this crate analyzes.
    #[error("unsupported polynomial shape: {0}")]
    UnsupportedShape(String),

    /// A tower/decomposition/class-group model violates its invariants.
    #[error("model violation: {0}")]
    Model(String),

    /// The growth-theorem hypotheses fail; details list the comparisons.
    #[error("hypotheses fail: {0}")]
    Hypotheses(String),

    /// Catch-all precondition failure (odd primes, ranges, group axioms...).
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param_mismatch(left: impl ToString, right: impl ToString) -> Self {
        Error::ParamMismatch {
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}
