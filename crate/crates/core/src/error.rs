use thiserror::Error;

/// Errors across the toolkit.
#[derive(Debug, Error)]
pub enum BhError {
    #[error("coefficient list has length {got}, expected {expected} for degree {degree}")]
    CoeffLength {
        degree: usize,
        expected: usize,
        got: usize,
    },

    #[error("cannot parse scalar from {0:?}")]
    ParseScalar(String),

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("p-norm exponent must be positive, got {0}")]
    InvalidExponent(f64),

    #[error("degree must be at least 1 for this operation")]
    DegreeZero,

    #[error("argument {name} = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid bracket: lo {lo} must be < hi {hi} and tol {tol} > 0")]
    Bracket { lo: f64, hi: f64, tol: f64 },

    #[error("objective returned a non-finite value at {at}")]
    NonFiniteObjective { at: f64 },

    #[error("no sign change over [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("expected exactly {expected} roots in scan window, found {found}")]
    RootCount { expected: usize, found: usize },

    #[error("grid resolution {0} below minimum 64")]
    GridTooCoarse(usize),

    #[error("unknown catalog id {0:?}")]
    UnknownCatalogId(String),
}
