use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate strip: normal width {width:e} does not exceed 2*epsilon = {twice_eps:e}")]
    DegenerateStrip { width: f64, twice_eps: f64 },
    #[error("singular system: |det| = {0:e} is below tolerance")]
    SingularSystem(f64),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parameter at a branch point: {0}")]
    BranchPoint(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("matrix determinant is not 1 (|det - 1| = {0:e})")]
    NonUnitDeterminant(f64),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}
