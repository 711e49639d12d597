use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("order relation has a cycle: {}", .cycle.join(" < "))]
    AntisymmetryViolation { cycle: Vec<String> },

    #[error("carrier of {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("multiplication table is malformed: {0}")]
    MalformedTable(String),

    #[error("multiplication is not associative: ({x}{y}){z} != {x}({y}{z})")]
    AssociativityViolation { x: String, y: String, z: String },

    #[error("multiplication is not order-compatible: {a1} <= {b1} and {a2} <= {b2} but {a1}{a2} !<= {b1}{b2}")]
    CompatibilityViolation {
        a1: String,
        b1: String,
        a2: String,
        b2: String,
    },

    #[error("marking is invalid: {0}")]
    InvalidMarking(String),

    #[error("admissible subset {0} has no join")]
    MissingJoin(String),

    #[error("not a marked quantale: {0}")]
    NotMarkedQuantale(String),

    #[error("not a quantic nucleus: {0}")]
    NucleusInvalid(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("map is not total: {0}")]
    InvalidMap(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
