use thiserror::Error;

/// Errors raised by the reductions, the exact formulas and the numeric evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed tree encoding at position {position}: {reason}")]
    TreeSyntax { position: usize, reason: &'static str },

    #[error("malformed path at position {position}: unexpected character {found:?}")]
    PathSyntax { position: usize, found: char },

    #[error("the compactification is only defined for trees with at least one internal node")]
    LeafNotReducible,

    #[error("path of length {length} is too short, at least {required} steps are required")]
    PathTooShort { length: usize, required: usize },

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded { what: &'static str, value: usize, bound: usize },

    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: String },

    #[error("constant term of the series is not invertible in the coefficient ring")]
    NonUnitSeries,

    #[error("inner series of a composition must have zero constant term")]
    CompositionValuation,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
