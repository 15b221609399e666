//! Graph files, classification reports and the `lpakit` command line.

pub mod cli;
pub mod report;
