//! The combinatorial skeleton of an encoding: heavy pairs, the cover set,
//! hubs, the hub-covering pairs and the non-hub split.
//!
//! Every function here works on whatever vertex ids the order uses; the
//! encoder calls them on the order relabelled by linear-extension rank, so
//! "smallest id" tie-breaks become "smallest rank".

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::graph::{degeneracy_orientation, linear_extension, LinearExtension, Orientation, StrictOrder};

use super::params::SchemeParams;

/// All pairs `x < y` covering at least `threshold` vertices, sorted.
/// A threshold of zero is raised to one.
pub fn heavy_pairs(o: &StrictOrder, threshold: usize) -> Vec<(usize, usize)> {
    let threshold = threshold.max(1);
    if threshold + 2 > o.n() {
        return Vec::new();
    }
    o.pairs()
        .filter(|&(x, y)| o.up_set(x).intersection_len(o.down_set(y)) >= threshold)
        .collect()
}

/// Greedy hitting set: up to `budget` times, pick the vertex covered by the
/// most remaining pairs (smallest id on ties) and drop the pairs covering it.
/// Returns the picks and the pairs left uncovered.
pub fn greedy_cover(
    o: &StrictOrder,
    pairs: &[(usize, usize)],
    budget: usize,
) -> (Vec<usize>, Vec<(usize, usize)>) {
    let n = o.n();
    let covered = |&(x, y): &(usize, usize)| {
        let mut c = o.up_set(x).clone();
        c.intersect_with(o.down_set(y));
        c
    };
    let mut count = vec![0usize; n];
    for p in pairs {
        for z in covered(p).iter() {
            count[z] += 1;
        }
    }
    let mut remaining: Vec<(usize, usize)> = pairs.to_vec();
    let mut picks = Vec::new();
    while !remaining.is_empty() && picks.len() < budget {
        let z = (0..n).max_by_key(|&z| (count[z], core::cmp::Reverse(z))).expect("n > 0");
        if count[z] == 0 {
            break;
        }
        picks.push(z);
        remaining.retain(|p| {
            if o.less(p.0, z) && o.less(z, p.1) {
                for w in covered(p).iter() {
                    count[w] -= 1;
                }
                false
            } else {
                true
            }
        });
    }
    (picks, remaining)
}

/// Vertices with at least `threshold` elements below and above.
pub fn hubs(o: &StrictOrder, threshold: usize) -> Vec<usize> {
    (0..o.n())
        .filter(|&z| o.down_set(z).len() >= threshold && o.up_set(z).len() >= threshold)
        .collect()
}

/// Result of greedily covering hubs with comparable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCover {
    pub pairs: Vec<(usize, usize)>,
    /// Hubs no chosen pair covers.
    pub residual: Vec<usize>,
}

/// Up to `budget` times, pick the pair `x < y` covering the most uncovered
/// hubs (lexicographically smallest on ties).
pub fn greedy_pair_cover(o: &StrictOrder, hub_list: &[usize], budget: usize) -> PairCover {
    let n = o.n();
    let mut uncovered = BitSet::from_iter_with_capacity(n, hub_list.iter().copied());
    let mut pairs = Vec::new();
    while !uncovered.is_empty() && pairs.len() < budget {
        let mut best: Option<(usize, (usize, usize))> = None;
        for x in 0..n {
            let mut above = o.up_set(x).clone();
            above.intersect_with(&uncovered);
            let avail = above.len();
            if avail == 0 || best.is_some_and(|(c, _)| c >= avail) {
                continue;
            }
            let hubs_above: Vec<usize> = above.to_vec();
            for y in o.up_set(x).iter() {
                let c = if hubs_above.len() < 48 {
                    hubs_above.iter().filter(|&&h| o.less(h, y)).count()
                } else {
                    above.intersection_len(o.down_set(y))
                };
                if c > 0 && best.is_none_or(|(bc, _)| c > bc) {
                    best = Some((c, (x, y)));
                }
            }
        }
        let Some((_, (x, y))) = best else { break };
        for h in hub_list {
            if o.less(x, *h) && o.less(*h, y) {
                uncovered.remove(*h);
            }
        }
        pairs.push((x, y));
    }
    PairCover { pairs, residual: uncovered.to_vec() }
}

/// Role of a vertex in the label layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// Non-hub with small out-degree among the non-hubs.
    Plus,
    /// Remaining non-hubs.
    Minus,
    /// Hub covered by some pair of `T`.
    CoveredHub,
    /// Hub no pair of `T` covers.
    ResidualHub,
}

impl VertexClass {
    pub fn code(self) -> u64 {
        match self {
            VertexClass::Plus => 0,
            VertexClass::Minus => 1,
            VertexClass::CoveredHub => 2,
            VertexClass::ResidualHub => 3,
        }
    }

    pub fn from_code(c: u64) -> Self {
        match c & 3 {
            0 => VertexClass::Plus,
            1 => VertexClass::Minus,
            2 => VertexClass::CoveredHub,
            _ => VertexClass::ResidualHub,
        }
    }

    pub fn is_hub(self) -> bool {
        matches!(self, VertexClass::CoveredHub | VertexClass::ResidualHub)
    }
}

/// Everything the encoder derives from an order before writing bits. All
/// vertex ids are linear-extension ranks.
#[derive(Clone, Debug)]
pub struct Structure {
    pub extension: LinearExtension,
    /// The order relabelled by rank.
    pub order: StrictOrder,
    pub heavy_threshold: usize,
    pub hub_threshold: usize,
    /// `heavy_up[x]` holds every `y` with `(x, y)` heavy.
    pub heavy_up: Vec<BitSet>,
    pub heavy: Vec<(usize, usize)>,
    pub cover: Vec<usize>,
    pub residual_heavy: Vec<(usize, usize)>,
    pub hubs: Vec<usize>,
    pub pair_cover: PairCover,
    /// Distinct vertices of the pairs in `pair_cover`, by first appearance.
    pub t_vertices: Vec<usize>,
    /// Slot of each pair's endpoints in `t_vertices`.
    pub t_pair_slots: Vec<(usize, usize)>,
    /// Per slot: `{v : v < x, (v, x) light}`.
    pub minus_members: Vec<BitSet>,
    /// Per slot: `{v : x < v, (x, v) light}`.
    pub plus_members: Vec<BitSet>,
    pub class: Vec<VertexClass>,
    /// Pair index for covered hubs, residual index for residual hubs,
    /// side index for non-hubs.
    pub class_index: Vec<usize>,
    pub v_plus: Vec<usize>,
    pub v_minus: Vec<usize>,
    /// Degeneracy orientation of the residual heavy pairs.
    pub residual_graph: Orientation,
    /// Degeneracy orientation of the pairs no other section resolves.
    pub overflow: Orientation,
}

impl Structure {
    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn is_light(&self, x: usize, y: usize) -> bool {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        self.order.less(a, b) && !self.heavy_up[a].contains(b)
    }

    /// Out-set of `v` inside the light graph induced on `minus_members[slot]`.
    pub fn minus_out_set(&self, slot: usize, v: usize) -> Vec<usize> {
        let members = &self.minus_members[slot];
        self.order
            .up_set(v)
            .iter()
            .filter(|&w| members.contains(w) && !self.heavy_up[v].contains(w))
            .collect()
    }

    /// In-set of `v` inside the light graph induced on `plus_members[slot]`.
    pub fn plus_in_set(&self, slot: usize, v: usize) -> Vec<usize> {
        let members = &self.plus_members[slot];
        self.order
            .down_set(v)
            .iter()
            .filter(|&w| members.contains(w) && !self.heavy_up[w].contains(v))
            .collect()
    }

    /// Dictionary contents for a non-hub: out-set within `V⁺` or in-set within `V⁻`.
    pub fn nonhub_set(&self, v: usize) -> Vec<usize> {
        match self.class[v] {
            VertexClass::Plus => self
                .order
                .up_set(v)
                .iter()
                .filter(|&w| self.class[w] == VertexClass::Plus)
                .collect(),
            VertexClass::Minus => self
                .order
                .down_set(v)
                .iter()
                .filter(|&w| self.class[w] == VertexClass::Minus)
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn cover_bits(&self) -> BitSet {
        BitSet::from_iter_with_capacity(self.n(), self.cover.iter().copied())
    }

    /// Slots whose light neighbourhood graphs a query involving `v` consults.
    pub fn candidate_slots(&self, v: usize) -> Option<(usize, usize)> {
        (self.class[v] == VertexClass::CoveredHub).then(|| self.t_pair_slots[self.class_index[v]])
    }
}

pub fn build_structure(o: &StrictOrder, params: &SchemeParams) -> Structure {
    let n = o.n();
    let extension = linear_extension(o);
    let order = o.relabel(&extension.rank);

    let heavy_threshold = params.heavy_threshold();
    let heavy = heavy_pairs(&order, heavy_threshold);
    let mut heavy_up = vec![BitSet::new(n); n];
    for &(x, y) in &heavy {
        heavy_up[x].insert(y);
    }
    let (cover, residual_heavy) = greedy_cover(&order, &heavy, params.s);

    let hub_threshold = params.hub_threshold();
    let hub_list = hubs(&order, hub_threshold);
    let pair_cover = greedy_pair_cover(&order, &hub_list, params.t);

    let mut t_vertices: Vec<usize> = Vec::new();
    let slot_of = |v: usize, tv: &mut Vec<usize>| match tv.iter().position(|&w| w == v) {
        Some(s) => s,
        None => {
            tv.push(v);
            tv.len() - 1
        }
    };
    let t_pair_slots: Vec<(usize, usize)> = pair_cover
        .pairs
        .iter()
        .map(|&(x, y)| {
            let a = slot_of(x, &mut t_vertices);
            let b = slot_of(y, &mut t_vertices);
            (a, b)
        })
        .collect();

    let light_down = |x: usize| {
        let mut s = order.down_set(x).clone();
        s.difference_with(&BitSet::from_iter_with_capacity(
            n,
            order.down_set(x).iter().filter(|&v| heavy_up[v].contains(x)),
        ));
        s
    };
    let light_up = |x: usize| {
        let mut s = order.up_set(x).clone();
        s.difference_with(&heavy_up[x]);
        s
    };
    let minus_members: Vec<BitSet> = t_vertices.iter().map(|&x| light_down(x)).collect();
    let plus_members: Vec<BitSet> = t_vertices.iter().map(|&x| light_up(x)).collect();

    let mut class = vec![VertexClass::Plus; n];
    let mut class_index = vec![0usize; n];
    let is_hub = BitSet::from_iter_with_capacity(n, hub_list.iter().copied());
    for (i, &z) in pair_cover.residual.iter().enumerate() {
        class[z] = VertexClass::ResidualHub;
        class_index[z] = i;
    }
    // Among the pairs covering a hub, keep the one whose light neighbourhood
    // graphs contain the most light neighbours of the hub.
    for &z in &hub_list {
        if class[z] == VertexClass::ResidualHub {
            continue;
        }
        let up_z = light_up(z);
        let down_z = light_down(z);
        let mut best: Option<(usize, usize)> = None;
        for (idx, &(x, y)) in pair_cover.pairs.iter().enumerate() {
            if !(order.less(x, z) && order.less(z, y)) {
                continue;
            }
            let (sx, sy) = t_pair_slots[idx];
            let mut score = 0;
            if plus_members[sx].contains(z) {
                score += up_z.intersection_len(&plus_members[sx]);
            }
            if minus_members[sy].contains(z) {
                score += down_z.intersection_len(&minus_members[sy]);
            }
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((idx, score));
            }
        }
        let (idx, _) = best.expect("a covered hub has a covering pair");
        class[z] = VertexClass::CoveredHub;
        class_index[z] = idx;
    }

    let non_hubs = {
        let mut s = BitSet::full(n);
        s.difference_with(&is_hub);
        s
    };
    let mut v_plus = Vec::new();
    let mut v_minus = Vec::new();
    for v in non_hubs.iter() {
        if order.up_set(v).intersection_len(&non_hubs) <= params.ell {
            class[v] = VertexClass::Plus;
            class_index[v] = v_plus.len();
            v_plus.push(v);
        } else {
            class[v] = VertexClass::Minus;
            class_index[v] = v_minus.len();
            v_minus.push(v);
        }
    }

    let residual_graph = degeneracy_orientation(n, &residual_heavy);

    let mut structure = Structure {
        extension,
        order,
        heavy_threshold,
        hub_threshold,
        heavy_up,
        heavy,
        cover,
        residual_heavy,
        hubs: hub_list,
        pair_cover,
        t_vertices,
        t_pair_slots,
        minus_members,
        plus_members,
        class,
        class_index,
        v_plus,
        v_minus,
        residual_graph,
        overflow: Orientation { out: vec![Vec::new(); n], bound: 0 },
    };
    let overflow_edges = unresolved_pairs(&structure);
    structure.overflow = degeneracy_orientation(n, &overflow_edges);
    structure
}

/// Comparable pairs the decoder cannot settle from the cover strings, the
/// residual sections, the non-hub sections or a shared light neighbourhood
/// graph. This mirrors the decoder's case ladder.
fn unresolved_pairs(st: &Structure) -> Vec<(usize, usize)> {
    let n = st.n();
    let cover = st.cover_bits();
    let mut out = Vec::new();
    for a in 0..n {
        for b in st.order.up_set(a).iter() {
            if st.heavy_up[a].contains(b) {
                // covered by S, or in the residual heavy graph
                continue;
            }
            if st.order.up_set(a).intersection3_len(st.order.down_set(b), &cover) > 0 {
                continue;
            }
            let (ca, cb) = (st.class[a], st.class[b]);
            if ca == VertexClass::ResidualHub || cb == VertexClass::ResidualHub {
                continue;
            }
            if !ca.is_hub() && !cb.is_hub() {
                continue;
            }
            let shared = [st.candidate_slots(a), st.candidate_slots(b)]
                .into_iter()
                .flatten()
                .flat_map(|(x, y)| [x, y])
                .any(|slot| {
                    let m = &st.minus_members[slot];
                    let p = &st.plus_members[slot];
                    (m.contains(a) && m.contains(b)) || (p.contains(a) && p.contains(b))
                });
            if !shared {
                out.push((a, b));
            }
        }
    }
    out
}
