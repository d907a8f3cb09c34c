//! Exhaustive check, for tiny `n`, that every labelled poset embeds into the
//! structure formed by the emitted labels and the decoder.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::bitio::{BitString, BitWriter};
use crate::error::{Error, Result};
use crate::graph::StrictOrder;
use crate::scheme::{adjacent, encode, Comparison, Decoder, Labeling, SchemeConfig};

/// Largest `n` accepted by [`enumerate_posets`] (130023 orders at n = 6).
pub const MAX_ENUMERATION_N: usize = 6;

/// Every strict order on `[0, n)`, built by inserting the vertices one at a
/// time with a down-closed set below and an up-closed set above.
pub fn enumerate_posets(n: usize) -> Result<Vec<StrictOrder>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::Guard { n, max: MAX_ENUMERATION_N });
    }
    let mut layer: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new()];
    for m in 0..n {
        let mut next = Vec::new();
        for rel in &layer {
            let below = |x: usize, y: usize| rel.contains(&(x, y));
            let subsets = 1usize << m;
            let down_closed = |mask: usize| {
                (0..m).all(|y| mask >> y & 1 == 0 || (0..m).all(|x| !below(x, y) || mask >> x & 1 == 1))
            };
            let up_closed = |mask: usize| {
                (0..m).all(|x| mask >> x & 1 == 0 || (0..m).all(|y| !below(x, y) || mask >> y & 1 == 1))
            };
            let downs: Vec<usize> = (0..subsets).filter(|&d| down_closed(d)).collect();
            let ups: Vec<usize> = (0..subsets).filter(|&u| up_closed(u)).collect();
            for &d in &downs {
                for &u in &ups {
                    if d & u != 0 {
                        continue;
                    }
                    let consistent = (0..m)
                        .filter(|x| d >> x & 1 == 1)
                        .all(|x| (0..m).filter(|y| u >> y & 1 == 1).all(|y| below(x, y)));
                    if !consistent {
                        continue;
                    }
                    let mut r = rel.clone();
                    r.extend((0..m).filter(|x| d >> x & 1 == 1).map(|x| (x, m)));
                    r.extend((0..m).filter(|y| u >> y & 1 == 1).map(|y| (m, y)));
                    next.push(r);
                }
            }
        }
        layer = next;
    }
    layer.into_iter().map(|rel| StrictOrder::from_relation(n, rel)).collect()
}

/// The emitted labels as vertices, named by global section followed by label.
/// Arcs point from the lower to the higher element of every pair the decoder
/// reports comparable; names with different global sections are never joined.
/// Pairs with equal ranks decode as incomparable.
#[derive(Clone, Debug, Default)]
pub struct UniversalGraph {
    pub names: Vec<BitString>,
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct UniversalReport {
    pub n: usize,
    pub posets: usize,
    pub distinct_labels: usize,
    /// Every poset's labels are pairwise distinct.
    pub injective: bool,
    /// Every poset decodes to exactly its own relation.
    pub embeds: bool,
    /// Posets that failed either check.
    pub failures: usize,
    pub graph: Option<UniversalGraph>,
}

fn decodes_exactly(o: &StrictOrder, l: &Labeling) -> Result<bool> {
    for u in 0..o.n() {
        for v in 0..o.n() {
            let (cmp, _) = l.comparable(u, v)?;
            let expected = if o.less(u, v) {
                Comparison::Less
            } else if o.less(v, u) {
                Comparison::Greater
            } else {
                Comparison::Incomparable
            };
            if cmp != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Encodes every labelled poset on `n` elements and checks injectivity and
/// exact decoding. The universal graph is built when at most
/// `materialize_cap` distinct names were emitted.
pub fn universal_check(n: usize, config: &SchemeConfig, materialize_cap: usize) -> Result<UniversalReport> {
    let posets = enumerate_posets(n)?;
    let params = config.resolve(n);
    // emitted labels grouped by the global section they were decoded under
    let mut groups: BTreeMap<BitString, (Decoder, BTreeSet<BitString>)> = BTreeMap::new();
    let mut clashes = 0;
    let mut mismatches = 0;
    for o in &posets {
        let l = encode(o, &params)?;
        let distinct: BTreeSet<&BitString> = l.labels().iter().collect();
        if distinct.len() != l.n() {
            clashes += 1;
        }
        if !decodes_exactly(o, &l)? {
            mismatches += 1;
        }
        groups
            .entry(l.global_bits())
            .or_insert_with(|| (l.decoder().clone(), BTreeSet::new()))
            .1
            .extend(l.labels().iter().cloned());
    }
    let distinct_labels = groups.values().map(|(_, g)| g.len()).sum();
    let graph = if distinct_labels <= materialize_cap { Some(materialize(&groups)?) } else { None };
    Ok(UniversalReport {
        n,
        posets: posets.len(),
        distinct_labels,
        injective: clashes == 0,
        embeds: mismatches == 0,
        failures: clashes + mismatches,
        graph,
    })
}

fn materialize(groups: &BTreeMap<BitString, (Decoder, BTreeSet<BitString>)>) -> Result<UniversalGraph> {
    let mut graph = UniversalGraph::default();
    for (global, (d, labels)) in groups {
        let base = graph.names.len();
        let labels: Vec<&BitString> = labels.iter().collect();
        for lab in &labels {
            let mut w = BitWriter::new();
            w.append_bits(global);
            w.append_bits(lab);
            graph.names.push(w.finish());
        }
        for (i, li) in labels.iter().enumerate() {
            for (j, lj) in labels.iter().enumerate().skip(i + 1) {
                if adjacent(d, li, lj)?.adjacent {
                    let ri = li.cursor().read_uint(d.index_width)?;
                    let rj = lj.cursor().read_uint(d.index_width)?;
                    let (a, b) = if ri < rj { (i, j) } else { (j, i) };
                    graph.arcs.push((base + a, base + b));
                }
            }
        }
    }
    Ok(graph)
}
