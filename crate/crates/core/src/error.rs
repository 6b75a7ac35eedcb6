use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("term order is not a well-order on monomials: {0}")]
    NotWellOrder(String),

    #[error(
        "pair limit of {limit} exhausted after {processed} S-pairs \
         ({remaining} queued, basis size {basis_len})"
    )]
    ResourceExhausted {
        limit: usize,
        processed: usize,
        remaining: usize,
        basis_len: usize,
    },

    #[error("improper ideal: 1 belongs to the ideal")]
    ImproperIdeal,

    #[error("generator {generator} is not homogeneous: components in degrees {degrees}")]
    NotHomogeneous { generator: String, degrees: String },

    #[error("grading is not positive: monomial with exponents {alpha:?} has degree zero")]
    NotPositive { alpha: Vec<u64> },

    #[error("invalid positivity witness: {0}")]
    InvalidWitness(String),

    #[error("kept variables do not span the linear forms together with L(a): {form} is uncovered")]
    SpanningFailure { form: String },

    #[error("columns {columns:?} are linearly dependent")]
    DependentColumns { columns: Vec<usize> },

    #[error("no rational point found on support {support:?}: {system}")]
    NoRationalPoint { support: Vec<usize>, system: String },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Syntax, name-resolution and dimension errors raised while reading input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}
