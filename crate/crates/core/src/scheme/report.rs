use alloc::vec::Vec;

use libm::{log2, pow};

use crate::dict::entropy;
use crate::error::Result;

use super::decode::SectionSizes;
use super::params::{Profile, SchemeParams};
use super::Labeling;

/// `n/4 + 1000·s^{-1/3}·n·log²n + 2s`, the label bound of the tradeoff profile.
pub fn tradeoff_label_bound(n: usize, s: usize) -> f64 {
    let (nf, sf) = (n as f64, s.max(1) as f64);
    let lg = log2(nf.max(2.0));
    nf / 4.0 + 1000.0 * pow(sf, -1.0 / 3.0) * nf * lg * lg + 2.0 * sf
}

fn h(p: f64) -> f64 {
    // the entropy terms grow with p only up to 1/2
    entropy(p.clamp(0.0, 0.5)).unwrap_or(1.0)
}

/// `n/4 + 4(H(2γ) + t·H(γ))n + 6H(δ)n + 2s`, the explicit-term bound of the fast profile.
pub fn fast_label_bound(p: &SchemeParams) -> f64 {
    let nf = p.n as f64;
    nf / 4.0
        + 4.0 * (h(2.0 * p.gamma) + p.t as f64 * h(p.gamma)) * nf
        + 6.0 * h(p.delta) * nf
        + 2.0 * p.s as f64
}

pub fn label_bound(p: &SchemeParams) -> f64 {
    match p.profile {
        Profile::Tradeoff => tradeoff_label_bound(p.n, p.s),
        Profile::Fast => fast_label_bound(p),
    }
}

/// Per-label section sizes and the bound check, with the global section
/// counted once in every label.
#[derive(Clone, Debug)]
pub struct SizeReport {
    pub global_bits: usize,
    pub sections: Vec<SectionSizes>,
    pub totals: SectionSizes,
    pub max_label_bits: usize,
    pub mean_label_bits: f64,
    pub bound: f64,
    /// `global_bits + label bits <= bound`, per label.
    pub within_bound: Vec<bool>,
}

impl SizeReport {
    pub fn all_within_bound(&self) -> bool {
        self.within_bound.iter().all(|&b| b)
    }
}

pub fn size_report(l: &Labeling, params: &SchemeParams) -> Result<SizeReport> {
    let global_bits = l.global_bits().len();
    let bound = label_bound(params);
    let mut sections = Vec::with_capacity(l.n());
    let mut totals = SectionSizes::default();
    for v in 0..l.n() {
        let s = l.section_sizes(v)?;
        totals.add(&s);
        sections.push(s);
    }
    let within_bound = l.labels().iter().map(|lab| (global_bits + lab.len()) as f64 <= bound).collect();
    Ok(SizeReport {
        global_bits,
        sections,
        totals,
        max_label_bits: l.max_label_bits(),
        mean_label_bits: l.mean_label_bits(),
        bound,
        within_bound,
    })
}
