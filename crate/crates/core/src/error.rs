use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("`{name}` is out of scope: {reason}")]
    OutOfScope { name: String, reason: String },

    #[error("unknown real form `{0}`")]
    UnknownForm(String),

    #[error("odd orbit out of scope: root {root:?} has degree {degree}")]
    OddGrading { root: Vec<i64>, degree: i64 },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("oracle diagnostic: {0}")]
    Oracle(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
