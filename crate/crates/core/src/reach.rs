//! Reachability labels for arbitrary digraphs: condense, close, and label
//! the component order; each vertex also carries its component id and rank.

use alloc::vec::Vec;

use crate::bitio::{index_width, BitString, BitWriter};
use crate::error::{Error, Result};
use crate::graph::{condense, transitive_closure, Digraph};
use crate::scheme::{encode_detailed, Decoder, Labeling, SchemeConfig, Verdict};

/// Labels answering "does `u` reach `v`" for one digraph.
#[derive(Clone, Debug)]
pub struct ReachLabeling {
    n: usize,
    inner: Labeling,
    component_of: Vec<usize>,
    labels: Vec<BitString>,
}

/// Condenses `d`, labels the closure of its component DAG and prefixes every
/// inner label with the component id and rank.
pub fn label_digraph(d: &Digraph, config: &SchemeConfig) -> Result<ReachLabeling> {
    let c = condense(d);
    let order = transitive_closure(&c.dag)?;
    let (inner, st) = encode_detailed(&order, &config.resolve(order.n()))?;
    let w = index_width(d.n());
    let mut labels = Vec::with_capacity(d.n());
    for v in 0..d.n() {
        let comp = c.component_of[v];
        let mut wr = BitWriter::new();
        wr.append_uint(comp as u64, w)?;
        wr.append_uint(st.extension.rank[comp] as u64, w)?;
        wr.append_bits(inner.label(comp)?);
        labels.push(wr.finish());
    }
    Ok(ReachLabeling { n: d.n(), inner, component_of: c.component_of, labels })
}

impl ReachLabeling {
    /// Rebuilds from the inner global section and the per-vertex labels.
    pub fn from_parts(n: usize, inner_global: &BitString, labels: Vec<BitString>) -> Result<Self> {
        if labels.len() != n {
            return Err(Error::Format("label count differs from n"));
        }
        let w = index_width(n) as usize;
        let mut component_of = Vec::with_capacity(n);
        let mut inner_labels: Vec<Option<BitString>> = Vec::new();
        for l in &labels {
            let comp = l.cursor().read_uint(w as u32)? as usize;
            if comp >= n {
                return Err(Error::Format("component id out of range"));
            }
            if inner_labels.len() <= comp {
                inner_labels.resize(comp + 1, None);
            }
            let inner = l.suffix(2 * w);
            match &inner_labels[comp] {
                Some(existing) if *existing != inner => {
                    return Err(Error::Format("one component with two inner labels"))
                }
                _ => inner_labels[comp] = Some(inner),
            }
            component_of.push(comp);
        }
        let inner_labels = inner_labels
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Format("component ids are not contiguous"))?;
        let inner = Labeling::from_parts(inner_global, inner_labels)?;
        Ok(ReachLabeling { n, inner, component_of, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inner(&self) -> &Labeling {
        &self.inner
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn labels(&self) -> &[BitString] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Result<&BitString> {
        self.labels.get(v).ok_or(Error::VertexOutOfRange { vertex: v, n: self.n })
    }

    pub fn max_label_bits(&self) -> usize {
        self.labels.iter().map(BitString::len).max().unwrap_or(0)
    }

    pub fn reaches(&self, u: usize, v: usize) -> Result<Verdict> {
        reaches(self.inner.decoder(), self.n, self.label(u)?, self.label(v)?)
    }
}

/// Reachability from two labels of a digraph with `n` vertices.
pub fn reaches(inner: &Decoder, n: usize, label_u: &BitString, label_v: &BitString) -> Result<Verdict> {
    let w = index_width(n);
    let mut cu = label_u.cursor();
    let mut cv = label_v.cursor();
    let (id_u, id_v) = (cu.read_uint(w)?, cv.read_uint(w)?);
    if id_u == id_v {
        return Ok(Verdict { adjacent: true, inspected: 2 * w as usize });
    }
    let (rank_u, rank_v) = (cu.read_uint(w)?, cv.read_uint(w)?);
    let header = 4 * w as usize;
    if rank_u > rank_v {
        // a later component never reaches an earlier one
        return Ok(Verdict { adjacent: false, inspected: header });
    }
    let offset = 2 * w as usize;
    let verdict = crate::scheme::adjacent(inner, &label_u.suffix(offset), &label_v.suffix(offset))?;
    Ok(Verdict { adjacent: verdict.adjacent, inspected: header + verdict.inspected })
}
