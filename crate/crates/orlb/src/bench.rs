//! Size and inspection sweeps over random posets, one CSV row per instance.

use std::fmt::Write as _;
use std::time::Instant;

use orlb_core::graph::{random_poset, PosetModel};
use orlb_core::scheme::{encode_detailed, size_report, Profile, SchemeConfig, SectionSizes};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Default cap on sampled queries per instance.
pub const DEFAULT_QUERY_SAMPLE: usize = 100_000;

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub model: PosetModel,
    pub seed: u64,
    pub profile: Profile,
    pub s: usize,
    pub max_label_bits: usize,
    pub mean_label_bits: f64,
    pub global_bits: usize,
    pub sections: SectionSizes,
    pub overflow_edges: usize,
    pub max_inspected_bits: usize,
    pub encode_ms: f64,
}

#[derive(Clone, Debug)]
pub struct BenchSpec {
    pub sizes: Vec<usize>,
    pub models: Vec<PosetModel>,
    pub seeds: Vec<u64>,
    pub profiles: Vec<Profile>,
    pub p: f64,
    pub s: Option<usize>,
    /// Cap on sampled ordered pairs; the sample size is `min(n², cap)`.
    pub query_cap: usize,
}

pub fn model_name(m: PosetModel) -> &'static str {
    match m {
        PosetModel::DagClosure => "dag-closure",
        PosetModel::Layered => "layered",
    }
}

pub fn profile_name(p: Profile) -> &'static str {
    match p {
        Profile::Tradeoff => "tradeoff",
        Profile::Fast => "fast",
    }
}

pub fn run_instance(
    n: usize,
    model: PosetModel,
    seed: u64,
    profile: Profile,
    p: f64,
    s: Option<usize>,
    query_cap: usize,
) -> orlb_core::Result<BenchRow> {
    let o = random_poset(n, model, p, seed)?;
    let mut config = SchemeConfig::new(profile);
    config.s = s;
    let params = config.resolve(n);
    let start = Instant::now();
    let (l, st) = encode_detailed(&o, &params)?;
    let encode_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = size_report(&l, &params)?;

    let samples = n.saturating_mul(n).min(query_cap);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let pairs: Vec<(usize, usize)> = (0..samples).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect();
    let max_inspected_bits = pairs
        .par_iter()
        .map(|&(u, v)| l.adjacent(u, v).map(|r| r.inspected))
        .try_reduce(|| 0, |a, b| Ok(a.max(b)))?;

    Ok(BenchRow {
        n,
        model,
        seed,
        profile,
        s: params.s,
        max_label_bits: report.max_label_bits,
        mean_label_bits: report.mean_label_bits,
        global_bits: report.global_bits,
        sections: report.totals,
        overflow_edges: st.overflow.edge_count(),
        max_inspected_bits,
        encode_ms,
    })
}

/// Runs every (n, model, seed, profile) combination; rows come back in that
/// nesting order regardless of scheduling.
pub fn run(spec: &BenchSpec) -> orlb_core::Result<Vec<BenchRow>> {
    let mut jobs = Vec::new();
    for &n in &spec.sizes {
        for &model in &spec.models {
            for &seed in &spec.seeds {
                for &profile in &spec.profiles {
                    jobs.push((n, model, seed, profile));
                }
            }
        }
    }
    jobs.par_iter()
        .map(|&(n, model, seed, profile)| run_instance(n, model, seed, profile, spec.p, spec.s, spec.query_cap))
        .collect()
}

pub fn csv_header() -> String {
    let mut h = String::from("n,model,seed,profile,s,max_label_bits,mean_label_bits,global_bits");
    for name in SectionSizes::NAMES {
        write!(h, ",{name}_bits").unwrap();
    }
    h.push_str(",overflow_edges,max_inspected_bits,encode_ms");
    h
}

pub fn csv_line(r: &BenchRow) -> String {
    let mut line = format!(
        "{},{},{},{},{},{},{:.3},{}",
        r.n,
        model_name(r.model),
        r.seed,
        profile_name(r.profile),
        r.s,
        r.max_label_bits,
        r.mean_label_bits,
        r.global_bits
    );
    for v in r.sections.values() {
        write!(line, ",{v}").unwrap();
    }
    write!(line, ",{},{},{:.3}", r.overflow_edges, r.max_inspected_bits, r.encode_ms).unwrap();
    line
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = csv_header();
    out.push('\n');
    for r in rows {
        out.push_str(&csv_line(r));
        out.push('\n');
    }
    out
}
