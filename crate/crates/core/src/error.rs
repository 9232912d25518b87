use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at point {0}")]
    PoleAtPoint(String),

    /// The parameter denominator vanishes identically at the expansion point.
    #[error("pole at zero parameter: expansion undefined")]
    PoleAtZeroParam,

    #[error("limit at infinity diverges")]
    Divergent,

    /// An operator hits a genuine pole when acting on `z^n`.
    #[error("operator undefined on z^{n} (component of degree {degree})")]
    ModuleUndefined { degree: i64, n: i64 },

    #[error("q_R = 1/(2h-1) is undefined at h = 1/2")]
    QrUndefined,

    #[error("basis norm g_{n} = {value} is not positive")]
    NonPositiveNorm { n: usize, value: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cocycle is not of the form a*j^3 + b*j on the diagonal: {0}")]
    NotCubicCocycle(String),

    #[error("cocycle represents the trivial class")]
    TrivialClass,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
