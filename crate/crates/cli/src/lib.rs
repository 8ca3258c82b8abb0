//! File formats, reports and DOT export for the `dynlog` command.
//!
//! The algebra lives in [`dynlog_core`]; this crate reads the line-based
//! input files, runs one operation per subcommand and renders the results.

pub mod commands;
pub mod dot;
mod error;
pub mod format;
pub mod workspace;

pub use error::{CliError, CliResult, Location};
pub use workspace::{parse_workspace, Base, Paths, Workspace};
