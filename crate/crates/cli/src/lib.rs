//! Table generation behind the `spectra` command.

pub mod output;
pub mod runner;
pub mod spec;
pub mod tables;

pub use runner::{run, RunSummary};
pub use spec::{IndexRange, OutputFormat, TableId, TableSpec};
