use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("ring declares no base variables")]
    NoBaseSplit,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid order weights: {0}")]
    InvalidOrder(String),
    #[error("coordinate change matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NonSquare { rows: usize, row: usize, len: usize },
    #[error("diagram is empty")]
    EmptyDiagram,
    #[error("reducer list contains the zero polynomial")]
    ZeroReducer,
    #[error("standard basis pool exceeded the ceiling of {limit} elements")]
    PoolCeiling { limit: usize },
    #[error("normal form exceeded the ceiling of {limit} reduction steps")]
    StepCeiling { limit: usize },
    #[error("unit denominator must have a nonzero constant term")]
    NotAUnit,
    #[error("invalid map germ: {0}")]
    InvalidMap(String),
    #[error("source not a certified complete intersection")]
    SourceNotCompleteIntersection,
    #[error("no certified bound available")]
    NoCertifiedBound,
    #[error("map is not finite at the origin: Milnor number undefined")]
    NoMilnorNumber,
    #[error("jets differ below order {order} (component {component})")]
    JetMismatch { order: u32, component: usize },
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
