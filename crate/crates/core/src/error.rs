use std::fmt;

/// Errors shared by all workbench operations.
///
/// `Input`-class errors (bad arities, unknown symbols, malformed data)
/// are distinguished from `Limit`-class errors (hard size caps) so the
/// CLI can map them to exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    CarrierMismatch {
        left: String,
        right: String,
    },
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    UnknownSymbol(String),
    EnvTooShort {
        needed: usize,
        got: usize,
    },
    OutOfRange {
        value: usize,
        carrier: usize,
    },
    /// A hard size cap was exceeded (carrier size, lattice size, depth, ...).
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    NotACongruence(String),
    NotAnEquivalence(String),
    EmptyBase,
    FilterBaseLaw(String),
    /// An integer-line computation would produce a relation with infinite
    /// support (a diagonal flag interacting with an off-diagonal pair under
    /// an operation produces pairs at unboundedly many translates).
    InfiniteSupport(String),
    /// An integer-line composition would produce isolated diagonal points,
    /// which the pairs-plus-diagonal-flag representation cannot hold.
    PartialDiagonal(String),
    /// Fixpoint closure exceeded its configured step cap.
    DivergenceGuard {
        steps: usize,
    },
    MalformedLattice(String),
    Parse(String),
    HypothesisViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CarrierMismatch { left, right } => {
                write!(f, "carrier mismatch: {left} vs {right}")
            }
            Error::ArityMismatch {
                symbol,
                expected,
                got,
            } => write!(f, "arity mismatch for {symbol}: expected {expected}, got {got}"),
            Error::UnknownSymbol(s) => write!(f, "unknown operation symbol: {s}"),
            Error::EnvTooShort { needed, got } => {
                write!(f, "environment too short: need {needed} values, got {got}")
            }
            Error::OutOfRange { value, carrier } => {
                write!(f, "element {value} out of range for carrier of size {carrier}")
            }
            Error::SizeLimit { what, limit, got } => {
                write!(f, "{what} limit exceeded: cap {limit}, got {got}")
            }
            Error::NotACongruence(s) => write!(f, "relation is not a congruence: {s}"),
            Error::NotAnEquivalence(s) => write!(f, "relation is not an equivalence: {s}"),
            Error::EmptyBase => write!(f, "filter base must be nonempty"),
            Error::FilterBaseLaw(s) => write!(f, "filter base law violated: {s}"),
            Error::InfiniteSupport(s) => write!(f, "result would have infinite support: {s}"),
            Error::PartialDiagonal(s) => write!(
                f,
                "result has isolated diagonal points not representable on the integer line: {s}"
            ),
            Error::DivergenceGuard { steps } => {
                write!(f, "closure did not stabilize within {steps} steps")
            }
            Error::MalformedLattice(s) => write!(f, "malformed lattice: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::HypothesisViolation(s) => write!(f, "hypothesis violated: {s}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// True for errors caused by malformed or out-of-contract input, as
    /// opposed to a mathematical verification failing.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::HypothesisViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
