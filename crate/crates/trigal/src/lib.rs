//! File formats, experiment drivers and the command-line interface built on
//! `trigal-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod parallel;
pub mod records;
