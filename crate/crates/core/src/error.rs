use crate::algebra::Parity;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal `{0}`")]
    BadRational(String),

    #[error("element of algebra `{found}` used with algebra `{expected}`")]
    AlgebraMismatch { expected: String, found: String },

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("singular system: {0}")]
    Singular(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("operator variables must share one parity")]
    MixedParity,

    #[error("variable `{var}` is {expected} but was assigned an {found} element")]
    ParityMismatch {
        var: String,
        expected: Parity,
        found: Parity,
    },

    #[error("monomial is not multilinear in the variable context")]
    NotMultilinear,

    #[error("empty variable list")]
    EmptyVariableList,

    #[error("resource ceiling exceeded: {0}")]
    Ceiling(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("corrupt cache at line {line}: {msg}")]
    Cache { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
