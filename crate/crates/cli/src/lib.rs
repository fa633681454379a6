//! File formats, experiment reports and the `edcs` command-line harness.

pub mod app;
pub mod corpus;
pub mod format;
pub mod par;
pub mod report;

pub use app::{run, Outcome};
