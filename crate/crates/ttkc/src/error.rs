//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Core dimensions are inconsistent (boundary ranks, chaining, entry count).
    #[error("malformed tensor train: {0}")]
    MalformedTensorTrain(String),

    /// A core entry left {-1, 0, 1}.
    #[error("core entry {value} at core {core} is outside {{-1, 0, 1}}")]
    TernaryViolation { core: usize, value: i64 },

    /// Evaluation produced a value other than 0 or 1 on a train that is
    /// supposed to be Boolean-valued.
    #[error("evaluation produced non-binary value {0}")]
    NonBinaryValue(String),

    /// An identity-core insertion would break the strictly increasing mapping.
    #[error("inserting variable {var} at position {position} violates the mode order")]
    PositionViolatesOrder { position: usize, var: usize },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    /// Binary kernel called on trains whose mappings differ.
    #[error("tensor trains are not aligned")]
    NotAligned,

    #[error("weight specification covers {given} variables, function has {arity}")]
    WeightArityMismatch { given: usize, arity: usize },

    #[error("negative weight for variable {0}")]
    NegativeWeight(usize),

    /// Out-of-range (0 or > arity) or duplicated variable in a term/clause.
    #[error("bad literal: {0}")]
    BadLiteral(String),

    /// A term contains complementary literals.
    #[error("inconsistent term: variable {0} appears with both polarities")]
    InconsistentTerm(usize),

    #[error("term has no literals")]
    EmptyTerm,

    #[error("clause has no literals")]
    EmptyClause,

    #[error("empty operand list")]
    EmptyList,

    /// A fold would exceed the configured rank ceiling. `index` is the
    /// zero-based operand that triggered it.
    #[error("rank guard exceeded at operand {index}: rank {rank} > limit {limit}")]
    RankGuardExceeded {
        index: usize,
        rank: usize,
        limit: usize,
    },

    #[error("unknown variable x{0}")]
    UnknownVariable(usize),

    #[error("operands use different variable orders")]
    OrderMismatch,

    /// The layer-wise encoder needs at least one non-terminal node; encode
    /// constants as single-mode trains instead.
    #[error("cannot layer-encode a constant function")]
    ConstantFunction,

    /// The layer-wise encoder requires the natural variable order
    /// x1 < x2 < ... (relabel variables first for other orders).
    #[error("operation requires the natural variable order")]
    NonNaturalOrder,

    #[error("arity {0} exceeds the brute-force guard of {1}")]
    ArityTooLarge(usize, usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
