//! Digraphs, strict orders and the reductions between them, together with
//! the generators and brute-force oracles the tests compare against.
//!
//! All constructions break ties by the smallest vertex id, so every output
//! is a deterministic function of its input.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A directed graph on `[0, n)` without self-loops or parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Format("self-loop in digraph"));
            }
            out[u].push(v);
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Digraph { n, out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }
}

/// An irreflexive, transitively closed relation `x < y` on `[0, n)`.
///
/// Both the up-set and the down-set of every vertex are kept as bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictOrder {
    n: usize,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl StrictOrder {
    pub fn antichain(n: usize) -> Self {
        StrictOrder { n, up: vec![BitSet::new(n); n], down: vec![BitSet::new(n); n] }
    }

    pub fn chain(n: usize) -> Self {
        let up = (0..n).map(|x| BitSet::from_iter_with_capacity(n, x + 1..n)).collect();
        Self::from_up_sets_unchecked(n, up)
    }

    fn from_up_sets_unchecked(n: usize, up: Vec<BitSet>) -> Self {
        let mut down = vec![BitSet::new(n); n];
        for (x, ups) in up.iter().enumerate() {
            for y in ups.iter() {
                down[y].insert(x);
            }
        }
        StrictOrder { n, up, down }
    }

    /// Builds an order from its full list of pairs `(x, y)` meaning `x < y`,
    /// rejecting anything that is not irreflexive, antisymmetric and transitive.
    pub fn from_relation(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut up = vec![BitSet::new(n); n];
        for (x, y) in pairs {
            for v in [x, y] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if x == y {
                return Err(Error::Format("reflexive pair in strict order"));
            }
            up[x].insert(y);
        }
        let order = Self::from_up_sets_unchecked(n, up);
        order.validate()?;
        Ok(order)
    }

    pub fn validate(&self) -> Result<()> {
        for x in 0..self.n {
            if self.up[x].contains(x) {
                return Err(Error::Format("reflexive pair in strict order"));
            }
            for y in self.up[x].iter() {
                if self.up[y].contains(x) {
                    return Err(Error::Format("strict order is not antisymmetric"));
                }
                let mut missing = self.up[y].clone();
                missing.difference_with(&self.up[x]);
                if !missing.is_empty() {
                    return Err(Error::Format("strict order is not transitively closed"));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.less(x, y) || self.less(y, x)
    }

    /// `{y : x < y}`
    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    /// `{y : y < x}`
    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    pub fn relation_len(&self) -> usize {
        self.up.iter().map(BitSet::len).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |y| (x, y)))
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> StrictOrder {
        assert_eq!(perm.len(), self.n);
        let mut up = vec![BitSet::new(self.n); self.n];
        for (x, y) in self.pairs() {
            up[perm[x]].insert(perm[y]);
        }
        Self::from_up_sets_unchecked(self.n, up)
    }

    /// Pairs `x < y` with nothing strictly between them.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .filter(|&(x, y)| self.up[x].intersection_len(&self.down[y]) == 0)
            .collect()
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph::new(self.n, self.pairs()).expect("a strict order is a valid digraph")
    }
}

/// Ranks of a linear extension: `x < y` implies `rank[x] < rank[y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearExtension {
    pub rank: Vec<usize>,
    /// Inverse of `rank`: `vertex_at[rank[v]] == v`.
    pub vertex_at: Vec<usize>,
}

/// Strongly connected components and the acyclic quotient digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    pub component_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub dag: Digraph,
}

/// An orientation of an undirected edge set with maximum out-degree `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub out: Vec<Vec<usize>>,
    pub bound: usize,
}

impl Orientation {
    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }
}

/// Strongly connected components, numbered in topological order of the
/// quotient (a component only reaches components with larger ids).
pub fn condense(d: &Digraph) -> Condensation {
    let n = d.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut emitted: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    // Iterative Tarjan: frames of (vertex, next successor position).
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        frames.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if let Some(&w) = d.successors(v).get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                emitted.push(comp);
            }
        }
    }
    // Tarjan emits components in reverse topological order.
    emitted.reverse();
    let mut component_of = vec![0; n];
    for (c, comp) in emitted.iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }
    let dag_edges = d
        .edges()
        .map(|(u, v)| (component_of[u], component_of[v]))
        .filter(|(a, b)| a != b);
    let dag = Digraph::new(emitted.len(), dag_edges).expect("component ids are in range");
    Condensation { component_of, members: emitted, dag }
}

/// Kahn's algorithm with a min-heap; `None` if `d` has a cycle.
fn topological_order(d: &Digraph) -> Option<Vec<usize>> {
    let n = d.n();
    let mut indeg = vec![0usize; n];
    for (_, v) in d.edges() {
        indeg[v] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = heap.pop() {
        order.push(u);
        for &v in d.successors(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                heap.push(Reverse(v));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Reachability order of an acyclic digraph.
pub fn transitive_closure(d: &Digraph) -> Result<StrictOrder> {
    let n = d.n();
    let order = topological_order(d).ok_or(Error::Cyclic)?;
    let mut up = vec![BitSet::new(n); n];
    for &u in order.iter().rev() {
        let mut reach = BitSet::new(n);
        for &v in d.successors(u) {
            reach.insert(v);
            reach.union_with(&up[v]);
        }
        up[u] = reach;
    }
    Ok(StrictOrder::from_up_sets_unchecked(n, up))
}

/// Topological sort of the order, always taking the smallest available id.
pub fn linear_extension(o: &StrictOrder) -> LinearExtension {
    let n = o.n();
    let mut indeg: Vec<usize> = (0..n).map(|v| o.down_set(v).len()).collect();
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut vertex_at = Vec::with_capacity(n);
    while let Some(Reverse(u)) = heap.pop() {
        vertex_at.push(u);
        for v in o.up_set(u).iter() {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                heap.push(Reverse(v));
            }
        }
    }
    debug_assert_eq!(vertex_at.len(), n);
    let mut rank = vec![0; n];
    for (r, &v) in vertex_at.iter().enumerate() {
        rank[v] = r;
    }
    LinearExtension { rank, vertex_at }
}

/// `{z : x < z < y}`
pub fn covered_set(o: &StrictOrder, x: usize, y: usize) -> BitSet {
    let mut s = o.up_set(x).clone();
    s.intersect_with(o.down_set(y));
    s
}

/// Orientation from repeated minimum-degree removal (smallest id among
/// ties): each vertex points at the neighbours still present when it is
/// removed. The achieved bound equals the degeneracy.
pub fn degeneracy_orientation(n: usize, edges: &[(usize, usize)]) -> Orientation {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        assert!(u < n && v < n && u != v, "bad undirected edge ({u}, {v})");
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut out = vec![Vec::new(); n];
    let mut bound = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("a vertex remains");
        bound = bound.max(degree[v]);
        removed[v] = true;
        for &w in &adj[v] {
            if !removed[w] {
                out[v].push(w);
                degree[w] -= 1;
            }
        }
    }
    Orientation { out, bound }
}

/// Generator families for random posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetModel {
    /// Each forward pair `(i, j)`, `i < j`, is an edge with probability `p`; then closed.
    DagClosure,
    /// Three consecutive id blocks, edges only between neighbouring blocks; then closed.
    Layered,
}

pub fn random_poset(n: usize, model: PosetModel, p: f64, seed: u64) -> Result<StrictOrder> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    match model {
        PosetModel::DagClosure => {
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(p) {
                        edges.push((i, j));
                    }
                }
            }
        }
        PosetModel::Layered => {
            let layer = |v: usize| 3 * v / n;
            for i in 0..n {
                for j in i + 1..n {
                    if layer(j) == layer(i) + 1 && rng.random_bool(p) {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    transitive_closure(&Digraph::new(n, edges)?)
}

/// Each ordered pair `(u, v)`, `u ≠ v`, is an edge with probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, edges)
}

/// Uniform random permutation of `[0, n)` (Fisher–Yates).
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Breadth-first search from `u`; a vertex always reaches itself.
pub fn reach_oracle(d: &Digraph, u: usize, v: usize) -> bool {
    bfs_reach(d, u).contains(v)
}

/// Every vertex reachable from `u`, including `u`.
pub fn bfs_reach(d: &Digraph, u: usize) -> BitSet {
    let mut seen = BitSet::new(d.n());
    seen.insert(u);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &y in d.successors(x) {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}
