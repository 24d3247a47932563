//! Command-line front end and report formats for `betalab-core`.

pub mod cli;
pub mod number;
pub mod report;
