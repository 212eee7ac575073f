use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation (zero where a
    /// nonzero integer is needed, |m| <= 1, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("lattice is not closed under multiplication: e_{i} * e_{j} has non-integral coordinates")]
    NotClosed { i: usize, j: usize },

    #[error("sub-lattice is not contained in the super-lattice (basis row {row})")]
    NotContained { row: usize },

    #[error("saturation candidate space {p}^{n} exceeds the enumeration limit {limit}")]
    Resource { p: u64, n: usize, limit: u64 },

    /// The split fraction sits too close to two divisor reciprocals to snap.
    #[error(
        "ambiguous snap of split fraction {phi_hat:.6} between 1/{first} and 1/{second}; increase prime_budget"
    )]
    AmbiguousSnap { phi_hat: f64, first: u64, second: u64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("fit error: {0}")]
    Fit(String),

    /// Two computations that must agree did not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
