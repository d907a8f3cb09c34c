//! Std companion to `orlb-core`: the digraph text format, the ORLB label
//! container, and the benchmark sweep behind the `orlb` binary.

pub mod bench;
pub mod format;

pub use format::{Container, FormatError};
