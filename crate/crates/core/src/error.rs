use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),

    #[error("composite of differentials is not zero")]
    CompositeNotZero,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("base change in degree {0} is not invertible")]
    Singular(i64),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("module fails the DG axioms in degree {degree}: {reason}")]
    InvalidModule { degree: i64, reason: String },

    #[error("induced T-action on homology is not nilpotent in degree {degree}; object is not in the thick closure of k")]
    NotInCategory { degree: i64 },

    #[error("{op} is not available for w = {w}")]
    WrongSign { op: &'static str, w: i64 },

    #[error("regions F+/F- are undefined on homogeneous tubes (w = 1)")]
    UndefinedForTube,

    #[error("window spans {span} shifts but at least {needed} are required")]
    WindowTooSmall { span: i64, needed: i64 },

    #[error("unknown {kind} `{name}`")]
    UnknownStrategy { kind: &'static str, name: String },

    #[error("malformed input: {0}")]
    Parse(String),
}
