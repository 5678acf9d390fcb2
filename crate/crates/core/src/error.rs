use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function} diverges for argument {at}")]
    Divergent { function: &'static str, at: String },

    #[error("precision must be at least 10 digits, got {0}")]
    Precision(u32),

    #[error("unknown id `{0}`")]
    UnknownId(String),

    #[error("s = {s} is outside the validity strip ({lo}, {hi}) of {id}")]
    OutsideStrip { id: String, s: String, lo: String, hi: String },

    #[error("s = {s} is an excluded point of {id}")]
    ExcludedPoint { id: String, s: String },

    #[error("cannot mix exact and numeric coefficients without explicit promotion")]
    MixedCoefficients,

    #[error("series has zero leading coefficient")]
    ZeroLeading,

    #[error("|x| = {x} is outside the radius of validity {radius}")]
    OutsideRadius { x: String, radius: String },

    #[error("quadrature did not reach the requested tolerance: {0}")]
    Quadrature(String),

    #[error("parameter {n} is outside the valid range of {id}")]
    ParameterRange { id: String, n: i64 },

    #[error("empty range")]
    EmptyRange,

    #[error("cannot derive a corrected form for {id}: {reason}")]
    NoDerivation { id: String, reason: String },

    #[error("identity {0} needs a precision context for numeric evaluation")]
    NeedsPrecision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
