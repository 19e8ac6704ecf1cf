//! File formats, parallel oracle sweeps, and the `kfactor` command line.

pub mod cli;
pub mod formats;
pub mod sweep;

pub use kfactor_core as core;
