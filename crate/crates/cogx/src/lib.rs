//! Command-line driver, file formats and randomized verification for
//! [`cogx_core`].

pub mod cli;
pub mod config;
pub mod format;
pub mod report;
pub mod verify;
