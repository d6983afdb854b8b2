use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The same `(edge, index)` arrow occurs twice.
    DuplicateArrow { edge: String, index: usize },
    /// The indices of a hyperedge are not exactly `1..=d`.
    IndexGap { edge: String, missing: usize },
    ZeroIndex { edge: String },
    OddFlagCount(usize),
    LengthMismatch,
    NotInvolution { flag: usize },
    FixedPoint { flag: usize },
    InconsistentLabels(String),
    MissingLabels,
    UnknownEdge(String),
    UnknownEdgeIndex(usize),
    TooManyEdges { edges: usize, limit: usize },
    NotBouquet,
    Disconnected,
    NotPrime,
    UnknownVertex(usize),
    BadGap(String),
    EmptyOperands,
    OddFlagBound(usize),
    CensusGuard { max_flags: usize, limit: usize },
    UnknownSuite(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateArrow { edge, index } => {
                write!(f, "arrow {edge}.{index} occurs more than once")
            }
            Error::IndexGap { edge, missing } => {
                write!(f, "index gap: hyperedge {edge} is missing arrow {edge}.{missing}")
            }
            Error::ZeroIndex { edge } => write!(f, "arrow indices of {edge} must start at 1"),
            Error::OddFlagCount(n) => write!(f, "flag count {n} is odd"),
            Error::LengthMismatch => write!(f, "alpha, beta and gamma have different lengths"),
            Error::NotInvolution { flag } => write!(f, "matching is not an involution at flag {flag}"),
            Error::FixedPoint { flag } => write!(f, "matching fixes flag {flag}"),
            Error::InconsistentLabels(msg) => write!(f, "inconsistent flag labels: {msg}"),
            Error::MissingLabels => write!(f, "flag structure carries no arrow labels"),
            Error::UnknownEdge(name) => write!(f, "unknown hyperedge `{name}`"),
            Error::UnknownEdgeIndex(i) => write!(f, "unknown hyperedge index {i}"),
            Error::TooManyEdges { edges, limit } => {
                write!(f, "{edges} hyperedges exceed the subset enumeration limit of {limit}")
            }
            Error::NotBouquet => write!(f, "hypermap is not a hyper-bouquet"),
            Error::Disconnected => write!(f, "hypermap is not connected"),
            Error::NotPrime => write!(f, "hypermap is not prime"),
            Error::UnknownVertex(v) => write!(f, "unknown hypervertex {v}"),
            Error::BadGap(msg) => write!(f, "invalid join gap: {msg}"),
            Error::EmptyOperands => write!(f, "both join operands are empty"),
            Error::OddFlagBound(n) => write!(f, "flag bound {n} must be even"),
            Error::CensusGuard { max_flags, limit } => {
                write!(f, "census with {max_flags} flags exceeds the guard of {limit} (force to override)")
            }
            Error::UnknownSuite(name) => write!(f, "unknown property suite `{name}`"),
        }
    }
}

impl core::error::Error for Error {}
