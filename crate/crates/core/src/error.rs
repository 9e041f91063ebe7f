use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("graph would have {vertices} vertices, above the cap of {cap}")]
    Size { vertices: u128, cap: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
