//! Reports, scan cache and parallel scanning on top of `modpk-core`.

pub mod cache;
pub mod error;
pub mod report;
pub mod scan;

pub use error::{CliError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
