//! The comparability labelling scheme: encoder, shared global section and
//! the two-label decoder.

mod decode;
mod encode;
mod global;
mod params;
mod report;
mod structure;

use alloc::vec::Vec;

use crate::bitio::BitString;
use crate::error::{Error, Result};

pub use decode::{adjacent, comparable, section_sizes, Comparison, SectionSizes, Verdict};
pub use encode::{encode, encode_detailed};
pub use global::{Decoder, GlobalSection};
pub use report::{fast_label_bound, label_bound, size_report, tradeoff_label_bound, SizeReport};
pub use params::{default_s, derive_params, Profile, SchemeConfig, SchemeParams};
pub use structure::{
    build_structure, greedy_cover, greedy_pair_cover, heavy_pairs, hubs, PairCover, Structure, VertexClass,
};

/// Labels of every vertex together with the global section they share.
#[derive(Clone, Debug)]
pub struct Labeling {
    decoder: Decoder,
    labels: Vec<BitString>,
}

impl Labeling {
    pub fn new(global: GlobalSection, labels: Vec<BitString>) -> Self {
        Labeling { decoder: global.decoder(), labels }
    }

    /// Rebuilds a labeling from its serialized global section and labels.
    pub fn from_parts(global_bits: &BitString, labels: Vec<BitString>) -> Result<Self> {
        let global = GlobalSection::from_bits(global_bits)?;
        if labels.len() != global.n {
            return Err(Error::Format("label count differs from n"));
        }
        Ok(Labeling::new(global, labels))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn global(&self) -> &GlobalSection {
        &self.decoder.global
    }

    pub fn global_bits(&self) -> BitString {
        self.decoder.global.to_bits()
    }

    pub fn decoder(&self) -> &Decoder {
        &self.decoder
    }

    pub fn labels(&self) -> &[BitString] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Result<&BitString> {
        self.labels.get(v).ok_or(Error::VertexOutOfRange { vertex: v, n: self.n() })
    }

    pub fn adjacent(&self, u: usize, v: usize) -> Result<Verdict> {
        adjacent(&self.decoder, self.label(u)?, self.label(v)?)
    }

    pub fn comparable(&self, u: usize, v: usize) -> Result<(Comparison, usize)> {
        comparable(&self.decoder, self.label(u)?, self.label(v)?)
    }

    pub fn max_label_bits(&self) -> usize {
        self.labels.iter().map(BitString::len).max().unwrap_or(0)
    }

    pub fn mean_label_bits(&self) -> f64 {
        if self.labels.is_empty() {
            return 0.0;
        }
        self.labels.iter().map(BitString::len).sum::<usize>() as f64 / self.labels.len() as f64
    }

    pub fn section_sizes(&self, v: usize) -> Result<SectionSizes> {
        section_sizes(&self.decoder, self.label(v)?)
    }
}
