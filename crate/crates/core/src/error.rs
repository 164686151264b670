use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial is not squarefree; repeated-root witness gcd = {witness}")]
    NotSquarefree { witness: String },

    #[error("factors are not coprime modulo {prime}; Hensel lifting is obstructed")]
    LiftingObstruction { prime: u64 },

    #[error("irregular splitting at p = {prime} after {depth} refinement rounds")]
    IrregularSplitting { prime: u64, depth: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Eisenstein generator search exhausted after {bound} refinement steps")]
    SearchExhausted { bound: usize },

    #[error("p-adic precision {precision} too low to separate roots")]
    PrecisionTooLow { precision: usize },

    #[error("prime {0} is not supported for étale enumeration")]
    UnsupportedPrime(u64),

    #[error("factorization-timeout: unfactored cofactor {cofactor}")]
    FactorizationTimeout { cofactor: BigInt },

    #[error("request unsatisfiable: {0}")]
    Unsatisfiable(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Short stable tag used in persisted records.
    pub fn marker(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::NotSquarefree { .. } => "not-squarefree",
            Error::LiftingObstruction { .. } => "lifting-obstruction",
            Error::IrregularSplitting { .. } => "irregular-splitting",
            Error::Precondition(_) => "precondition",
            Error::SearchExhausted { .. } => "search-exhausted",
            Error::PrecisionTooLow { .. } => "precision-too-low",
            Error::UnsupportedPrime(_) => "unsupported-prime",
            Error::FactorizationTimeout { .. } => "factorization-timeout",
            Error::Unsatisfiable(_) => "unsatisfiable",
            Error::Consistency(_) => "consistency",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }

    /// True for errors that abort a computation rather than reject input.
    pub fn is_abort(&self) -> bool {
        matches!(
            self,
            Error::FactorizationTimeout { .. }
                | Error::IrregularSplitting { .. }
                | Error::SearchExhausted { .. }
                | Error::PrecisionTooLow { .. }
                | Error::Unsatisfiable(_)
                | Error::Consistency(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
