use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {re}+{im}i lies outside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("logarithm needs constant term 1, found {re}+{im}i")]
    LogConstantTerm { re: f64, im: f64 },

    #[error("series division by a series with zero constant term")]
    DivisionByZeroConstant,

    #[error("analytic part is not normalized (h(0) = 0, h'(0) = 1 required)")]
    NotNormalized,

    #[error("invalid class parameters: {0}")]
    InvalidParams(String),

    #[error("invalid Schwarz function: {0}")]
    InvalidSchwarz(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("h'(z) vanishes at {re}+{im}i")]
    DegenerateDerivative { re: f64, im: f64 },

    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("no sign change found on ({lo}, {hi}) with step {step}")]
    NoSignChange { lo: f64, hi: f64, step: f64 },

    #[error("adaptive quadrature exceeded depth {0}")]
    QuadratureDepth(usize),

    #[error("mapping document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
