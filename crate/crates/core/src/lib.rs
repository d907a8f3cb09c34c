//! Adjacency labelling for comparability graphs of strict partial orders,
//! plus reachability labels for digraphs and a small-`n` universality check.

#![no_std]

extern crate alloc;

pub mod bipartite;
pub mod bitio;
pub mod bitset;
pub mod dict;
pub mod error;
pub mod graph;
pub mod reach;
pub mod scheme;
pub mod universal;

pub use bitio::{BitCursor, BitString, BitWriter};
pub use error::{Error, Result};
pub use graph::{Digraph, StrictOrder};
pub use scheme::{encode, Comparison, Labeling, Profile, SchemeConfig, SchemeParams};
