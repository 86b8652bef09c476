use thiserror::Error;

/// Errors raised by network construction, kinetics validation and analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate species `{0}`")]
    DuplicateSpecies(String),
    #[error("duplicate complex at index {0}")]
    DuplicateComplex(usize),
    #[error("duplicate reaction `{0}`")]
    DuplicateReaction(String),
    #[error("reaction `{0}` has identical reactant and product")]
    SelfLoopReaction(String),
    #[error("complex {0} does not take part in any reaction")]
    OrphanComplex(usize),
    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("rate constant {index} is not positive")]
    NonPositiveRate { index: usize },
    #[error("species value {index} is not positive where a negative exponent requires it")]
    NonPositiveInput { index: usize },
    #[error("reaction {0} has an empty term list")]
    EmptyTermList(usize),
    #[error("reaction {reaction}: dissociation and kinetic order supports differ at species {species}; declare the kinetics as pqk instead")]
    SuppViolation { reaction: usize, species: usize },
    #[error("invalid value in {what}: {detail}")]
    InvalidValue { what: String, detail: String },
    #[error("reaction {0} has an empty denominator")]
    EmptyDenominator(usize),
    #[error("kinetics is not in canonical form (term lists of unequal length)")]
    NonCanonicalKinetics,
    #[error("unknown species `{0}`")]
    UnknownSpecies(String),
    #[error("unknown reaction `{0}`")]
    UnknownReaction(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("network is not weakly reversible")]
    NotWeaklyReversible,
    #[error("kinetics is not complex factorizable")]
    NotComplexFactorizable,
    #[error("point is not complex balanced (residual {0:e})")]
    NotComplexBalanced(f64),
    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("cannot read `{path}`: {msg}")]
    Io { path: String, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
