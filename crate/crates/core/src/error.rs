use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("invalid group: {0}")]
    Group(String),

    #[error("invalid algebra data: {0}")]
    AlgebraLoad(String),

    #[error("grading error: {0}")]
    Grading(String),

    #[error("integral error: {0}")]
    Integral(String),

    #[error("ribbon certification failed: {0}")]
    Ribbon(String),

    #[error("invalid diagram: {0}")]
    Diagram(String),

    #[error("coloring error: {0}")]
    Coloring(String),

    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
