//! Command-line front end for the `bundle-newton` solvers.
//!
//! A run is described by a [`RunConfig`], built from defaults, an optional
//! `key=value` config file and command-line flags, in increasing priority.
//! [`run`] solves the problem and writes
//!
//! * `iterates.csv`: one row per outer Newton iteration,
//! * `curve.csv`: the final curve or rod, one row per grid node,
//! * `stages.csv`: one row per penalty stage (obstacle only),
//! * `meta.txt`: every resolved parameter plus `result.*` keys.
//!
//! `meta.txt` is itself a valid config file: the `result.*` keys are ignored
//! on reading, so passing it back with `--config` repeats the run exactly.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{ProblemConfig, ProblemKind, RunConfig, Settings};
pub use error::CliError;
pub use run::{error_exit_code, exit_code, run, RunReport, EXIT_CONFIG, EXIT_OTHER};
