//! Degree sequences, edge exchanges, and packings of k-factors into graphic
//! sequences.
//!
//! Everything here works on small dense graphs and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod construct;
pub mod error;
pub mod exchange;
pub mod graphs;
pub mod matching;
pub mod oracle;
pub mod packer;
pub mod sequences;

pub use error::Error;
pub use graphs::{Color, EdgeColoring, Matching, SimpleGraph};
pub use sequences::DegreeSequence;
