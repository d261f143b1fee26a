use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A register would exceed the dense size limit.
    #[error("register of {modes} modes exceeds the maximum of {max}")]
    Size { modes: usize, max: usize },

    #[error("label error: {0}")]
    Label(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    /// Matrix is not X-shaped; carries the largest off-pattern entry.
    #[error("not an X-state: entry ({row}, {col}) has magnitude {magnitude:e}")]
    Structure {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("no closed form for {measure} of {scenario}")]
    Coverage { scenario: String, measure: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Process exit status for the command-line tool: 3 for I/O, 2 for bad
    /// input, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            Error::Config(_) | Error::Parameter(_) | Error::Label(_) | Error::Coverage { .. } => 2,
            Error::Size { .. } | Error::Structure { .. } => 1,
        }
    }
}
