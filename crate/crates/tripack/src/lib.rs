//! Standard-library companion to `tripack-core`: versioned JSON files, a
//! threaded and timed oracle driver, and the `tripack` command line.

pub mod cli;
pub mod driver;
pub mod formats;

pub use tripack_core as core;
