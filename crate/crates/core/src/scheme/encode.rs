use alloc::vec::Vec;

use crate::bipartite::build_payloads;
use crate::bitio::{BitString, BitWriter};
use crate::error::{Error, Result};
use crate::graph::StrictOrder;

use super::global::{Decoder, GlobalSection};
use super::params::SchemeParams;
use super::structure::{build_structure, Structure, VertexClass};
use super::Labeling;

/// Encodes an order; labels are indexed by the caller's vertex ids.
pub fn encode(o: &StrictOrder, params: &SchemeParams) -> Result<Labeling> {
    encode_detailed(o, params).map(|(l, _)| l)
}

/// Like [`encode`], also returning the intermediate structure (in rank ids).
pub fn encode_detailed(o: &StrictOrder, params: &SchemeParams) -> Result<(Labeling, Structure)> {
    if params.n != o.n() {
        return Err(Error::Format("parameters were derived for a different n"));
    }
    if params.s > u32::MAX as usize || o.n() > u32::MAX as usize {
        return Err(Error::Format("n and s must fit in 32 bits"));
    }
    let st = build_structure(o, params);
    let n = o.n();

    let mut light_cap = 0;
    for slot in 0..st.t_vertices.len() {
        for v in st.minus_members[slot].iter() {
            light_cap = light_cap.max(st.minus_out_set(slot, v).len());
        }
        for v in st.plus_members[slot].iter() {
            light_cap = light_cap.max(st.plus_in_set(slot, v).len());
        }
    }
    let nonhub_cap = st
        .v_plus
        .iter()
        .chain(&st.v_minus)
        .map(|&v| st.nonhub_set(v).len())
        .max()
        .unwrap_or(0);

    let global = GlobalSection {
        n,
        profile: params.profile,
        dict: params.dict,
        s: params.s,
        cover: st.cover.clone(),
        t_pairs: st.pair_cover.pairs.clone(),
        residual_hubs: st.pair_cover.residual.len(),
        p: st.v_plus.len(),
        q: st.v_minus.len(),
        light_cap,
        nonhub_cap,
        residual_cap: st.residual_graph.bound,
        overflow_cap: st.overflow.bound,
    };
    let decoder = global.decoder();

    let (row_payloads, col_payloads) = build_payloads(st.v_plus.len(), st.v_minus.len(), |i, j| {
        st.order.comparable(st.v_plus[i], st.v_minus[j])
    });

    let mut by_rank = Vec::with_capacity(n);
    for v in 0..n {
        let bip = match st.class[v] {
            VertexClass::Plus => Some(&row_payloads[st.class_index[v]]),
            VertexClass::Minus => Some(&col_payloads[st.class_index[v]]),
            _ => None,
        };
        by_rank.push(write_label(&st, &decoder, v, bip)?);
    }
    let labels = (0..n).map(|orig| by_rank[st.extension.rank[orig]].clone()).collect();
    Ok((Labeling::new(global, labels), st))
}

fn write_label(st: &Structure, d: &Decoder, v: usize, bip: Option<&BitString>) -> Result<BitString> {
    let mut w = BitWriter::new();
    let class = st.class[v];
    w.append_uint(v as u64, d.index_width)?;
    w.append_uint(class.code(), 2)?;
    let index_width = match class {
        VertexClass::Plus | VertexClass::Minus => d.index_width,
        VertexClass::CoveredHub => d.pair_index_width,
        VertexClass::ResidualHub => d.residual_index_width,
    };
    w.append_uint(st.class_index[v] as u64, index_width)?;

    for &u in &st.cover {
        w.push_bit(st.order.less(v, u));
    }
    for &u in &st.cover {
        w.push_bit(st.order.less(u, v));
    }
    for &r in &st.pair_cover.residual {
        w.push_bit(st.order.comparable(v, r));
    }
    for slot in 0..st.t_vertices.len() {
        w.push_bit(st.minus_members[slot].contains(v));
        w.push_bit(st.plus_members[slot].contains(v));
    }
    if let Some(payload) = bip {
        w.append_bits(payload);
    }
    d.residual.write(&mut w, &st.residual_graph.out[v])?;
    if !class.is_hub() {
        d.nonhub.write(&mut w, &st.nonhub_set(v))?;
    }
    for slot in 0..st.t_vertices.len() {
        if st.minus_members[slot].contains(v) {
            d.light.write(&mut w, &st.minus_out_set(slot, v))?;
        }
        if st.plus_members[slot].contains(v) {
            d.light.write(&mut w, &st.plus_in_set(slot, v))?;
        }
    }
    d.overflow.write(&mut w, &st.overflow.out[v])?;
    Ok(w.finish())
}
