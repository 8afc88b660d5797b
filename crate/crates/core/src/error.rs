use alloc::string::String;
use thiserror::Error;

/// Problems found while assembling a cube complex.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("complex has no vertices")]
    Empty,
    #[error("no cubes of dimension {dim} below the top dimension")]
    EmptyLevel { dim: usize },
    #[error("cube dimension {dim} is not supported")]
    DimensionTooLarge { dim: usize },
    #[error("duplicate cube identifier `{id}`")]
    DuplicateCube { id: String },
    #[error("cube `{cube}` needs {expected} faces, found {found}")]
    WrongFaceCount { cube: String, expected: usize, found: usize },
    #[error("cube `{cube}` references `{face}`, which is not a cube of dimension {expected_dim}")]
    DanglingFaceReference { cube: String, face: String, expected_dim: usize },
    #[error(
        "cubical identity violated in `{cube}`: ∂_{{{i},{eps}}}∂_{{{j},{delta}}} ≠ ∂_{{{jm1},{delta}}}∂_{{{i},{eps}}}",
        jm1 = j - 1
    )]
    CubicalIdentityViolation { cube: String, i: usize, j: usize, eps: u8, delta: u8 },
    #[error("1-skeleton is disconnected: vertex `{unreachable}` is unreachable")]
    Disconnected { unreachable: String },
    #[error("`{0}` is not a vertex")]
    NotAVertex(String),
}

/// Automaton construction and queries.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("complex failed nonpositive curvature validation")]
    InvalidComplex,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter `{0}` is a trivial diagonal")]
    TrivialLetter(String),
    #[error("letter `{0}` has an empty weight")]
    NonPositiveWeight(String),
}

/// Series engine failures. All of them are reported conditions.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("symbol `{0}` is not covered by the substitution")]
    UncoveredSymbol(String),
    #[error("I - Q(t) is singular over the fraction field")]
    SingularSystem,
    #[error("reciprocal series undefined: I - Q̄(t) is singular")]
    ReciprocalUndefined,
    #[error("rational function has no power series expansion at 0")]
    NotExpandable,
    #[error("{states} states with {vars} variables exceeds the exact multivariate limit of {limit} states")]
    TooLarge { states: usize, vars: usize, limit: usize },
    #[error("expected a single-variable rational function, found {0} variables")]
    NotUnivariate(usize),
    #[error("substitution is not invariant under the star involution")]
    NotStarInvariant,
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}
