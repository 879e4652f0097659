//! Front end for `qk-core`: problem parsing, command dispatch, reports, and the
//! acceptance driver.

pub mod acceptance;
pub mod commands;
pub mod error;
pub mod input;
mod oracle;
mod properties;

pub use commands::{Faults, Report};
pub use error::CliError;
