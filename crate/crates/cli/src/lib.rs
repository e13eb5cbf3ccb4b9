//! Configuration, sweep execution and table output behind the `casimir-lens`
//! binary.

pub mod config;
mod error;
pub mod run;
pub mod table;

pub use config::{Format, Overrides, RunConfig};
pub use error::CliError;
pub use run::{render, run, RunOutput};
pub use table::{Cell, Table};
