//! Standard-library front end for `sopq-core`: JSON and CSV formats, grid
//! evaluation, the acceptance runner and the command-line interface.

pub mod acceptance;
pub mod cli;
pub mod formats;
pub mod grid;

pub use sopq_core as core;
