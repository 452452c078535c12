use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    /// A numerical failure while solving, tagged with the stage it hit.
    #[error("{stage}: {source}")]
    Solve {
        stage: String,
        #[source]
        source: bundle_newton::Error,
    },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// Invalid parameters detected by the solver crate count as config errors.
    pub fn solve(stage: impl Into<String>, source: bundle_newton::Error) -> Self {
        match source {
            bundle_newton::Error::InvalidConfig(msg) => CliError::Config(msg),
            source => CliError::Solve {
                stage: stage.into(),
                source,
            },
        }
    }
}
