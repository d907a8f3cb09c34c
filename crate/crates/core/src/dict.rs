//! Static set dictionaries over a universe `[0, n)`.
//!
//! * Sorted: a size field of `⌈log(n+1)⌉` bits, then the elements in
//!   increasing order, `⌈log n⌉` bits each; membership by binary search.
//! * Compressed: a size field of `⌈log(k+1)⌉` bits, then the colex rank of
//!   the set padded to exactly `k` elements, in `⌈log C(n+k, k)⌉` bits.
//!
//! A dictionary with capacity zero has an empty payload for both backends.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bitio::{ceil_log2, index_width, BitCursor, BitString, BitWriter};
use crate::error::{Error, Result};
use crate::graph::Orientation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DictBackend {
    Sorted,
    Compressed,
}

/// `C(n, k)` as an arbitrary-precision integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `⌈log2 C(n, k)⌉`
pub fn log2_binomial_ceil(n: u64, k: u64) -> u32 {
    ceil_log2_big(&binomial(n, k))
}

fn ceil_log2_big(x: &BigUint) -> u32 {
    if x.is_zero() {
        0
    } else {
        (x - 1u32).bits() as u32
    }
}

/// Field widths for a family of dictionaries sharing universe and capacity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictLayout {
    pub backend: DictBackend,
    pub universe: usize,
    pub capacity: usize,
    size_width: u32,
    elem_width: u32,
    rank_width: u32,
    /// `C(universe + capacity, capacity)`, the number of padded combinations.
    combinations: BigUint,
}

impl DictLayout {
    pub fn new(backend: DictBackend, universe: usize, capacity: usize) -> Self {
        let combinations = match backend {
            DictBackend::Compressed => binomial((universe + capacity) as u64, capacity as u64),
            DictBackend::Sorted => BigUint::one(),
        };
        let (size_width, rank_width) = match (capacity, backend) {
            (0, _) => (0, 0),
            (_, DictBackend::Sorted) => (ceil_log2(universe as u64 + 1), 0),
            (k, DictBackend::Compressed) => (ceil_log2(k as u64 + 1), ceil_log2_big(&combinations)),
        };
        DictLayout {
            backend,
            universe,
            capacity,
            size_width,
            elem_width: index_width(universe),
            rank_width,
            combinations,
        }
    }

    pub fn size_width(&self) -> u32 {
        self.size_width
    }

    pub fn rank_width(&self) -> u32 {
        self.rank_width
    }

    /// Payload length for a set of `k` elements.
    pub fn payload_len(&self, k: usize) -> usize {
        match (self.capacity, self.backend) {
            (0, _) => 0,
            (_, DictBackend::Sorted) => self.size_width as usize + k * self.elem_width as usize,
            (_, DictBackend::Compressed) => (self.size_width + self.rank_width) as usize,
        }
    }

    /// Largest payload any set within capacity can produce.
    pub fn max_payload_len(&self) -> usize {
        self.payload_len(self.capacity)
    }

    fn normalize(&self, set: &[usize]) -> Result<Vec<usize>> {
        let mut elems = set.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if let Some(&x) = elems.iter().find(|&&x| x >= self.universe) {
            return Err(Error::OutOfUniverse { element: x, universe: self.universe });
        }
        if elems.len() > self.capacity {
            return Err(Error::Capacity { size: elems.len(), capacity: self.capacity });
        }
        Ok(elems)
    }

    pub fn write(&self, w: &mut BitWriter, set: &[usize]) -> Result<()> {
        let elems = self.normalize(set)?;
        if self.capacity == 0 {
            return Ok(());
        }
        w.append_uint(elems.len() as u64, self.size_width)?;
        match self.backend {
            DictBackend::Sorted => {
                for &x in &elems {
                    w.append_uint(x as u64, self.elem_width)?;
                }
            }
            DictBackend::Compressed => {
                let rank = colex_rank(&self.padded_positions(&elems));
                w.append_biguint(&rank, self.rank_width)?;
            }
        }
        Ok(())
    }

    pub fn encode(&self, set: &[usize]) -> Result<BitString> {
        let mut w = BitWriter::new();
        self.write(&mut w, set)?;
        Ok(w.finish())
    }

    /// Sentinels take positions `[0, k - |S|)`, element `x` takes `k + x`.
    fn padded_positions(&self, elems: &[usize]) -> Vec<u64> {
        let k = self.capacity;
        let sentinels = k - elems.len();
        (0..sentinels as u64).chain(elems.iter().map(|&x| (k + x) as u64)).collect()
    }

    /// Membership query for a dictionary starting at the cursor position.
    /// The cursor ends at an unspecified position inside the payload.
    pub fn contains(&self, c: &mut BitCursor<'_>, x: usize) -> Result<bool> {
        if self.capacity == 0 {
            return Ok(false);
        }
        let start = c.position();
        let k = c.read_uint(self.size_width)? as usize;
        if k > self.capacity {
            return Err(Error::Format("dictionary size exceeds capacity"));
        }
        if x >= self.universe {
            return Ok(false);
        }
        match self.backend {
            DictBackend::Sorted => {
                let base = start + self.size_width as usize;
                let (mut lo, mut hi) = (0usize, k);
                while lo < hi {
                    let mid = (lo + hi) / 2;
                    c.seek(base + mid * self.elem_width as usize)?;
                    let y = c.read_uint(self.elem_width)? as usize;
                    match y.cmp(&x) {
                        core::cmp::Ordering::Equal => return Ok(true),
                        core::cmp::Ordering::Less => lo = mid + 1,
                        core::cmp::Ordering::Greater => hi = mid,
                    }
                }
                Ok(false)
            }
            DictBackend::Compressed => {
                let rank = c.read_biguint(self.rank_width)?;
                let target = (self.capacity + x) as u64;
                let n_positions = (self.universe + self.capacity) as u64;
                colex_contains(rank, self.capacity as u64, n_positions, &self.combinations, target)
            }
        }
    }

    /// Moves the cursor past a dictionary; sorted payloads need their size field.
    pub fn skip(&self, c: &mut BitCursor<'_>) -> Result<()> {
        match (self.capacity, self.backend) {
            (0, _) => Ok(()),
            (_, DictBackend::Sorted) => {
                let k = c.read_uint(self.size_width)? as usize;
                c.skip(k * self.elem_width as usize)
            }
            (_, DictBackend::Compressed) => c.skip((self.size_width + self.rank_width) as usize),
        }
    }

    /// Decodes the whole set (test and reporting helper).
    pub fn decode(&self, c: &mut BitCursor<'_>) -> Result<Vec<usize>> {
        if self.capacity == 0 {
            return Ok(Vec::new());
        }
        let k = c.read_uint(self.size_width)? as usize;
        match self.backend {
            DictBackend::Sorted => (0..k)
                .map(|_| c.read_uint(self.elem_width).map(|v| v as usize))
                .collect(),
            DictBackend::Compressed => {
                let rank = c.read_biguint(self.rank_width)?;
                let positions = colex_unrank(rank, self.capacity as u64);
                Ok(positions
                    .into_iter()
                    .filter(|&p| p >= self.capacity as u64)
                    .map(|p| (p - self.capacity as u64) as usize)
                    .collect())
            }
        }
    }
}

/// Colex rank `Σ C(c_i, i+1)` of strictly increasing positions `c_0 < c_1 < …`.
pub fn colex_rank(positions: &[u64]) -> BigUint {
    // `b` tracks C(c, j) while c and j only move upward
    let (mut c, mut j) = (0u64, 0u64);
    let mut b = BigUint::one();
    let mut rank = BigUint::zero();
    for (i, &target) in positions.iter().enumerate() {
        let want_j = i as u64 + 1;
        while j < want_j {
            b = if c < j + 1 { BigUint::zero() } else { b * (c - j) / (j + 1) };
            j += 1;
        }
        while c < target {
            c += 1;
            b = match c.cmp(&j) {
                core::cmp::Ordering::Less => BigUint::zero(),
                core::cmp::Ordering::Equal => BigUint::one(),
                core::cmp::Ordering::Greater => b * c / (c - j),
            };
        }
        rank += &b;
    }
    rank
}

/// Inverse of [`colex_rank`] for `k`-element combinations, ascending.
pub fn colex_unrank(mut rank: BigUint, k: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    let mut c = k;
    // grow c until C(c, k) > rank
    let mut binom = binomial(c, k);
    while binom <= rank {
        binom = binom * (c + 1) / (c + 1 - k);
        c += 1;
    }
    for i in (1..=k).rev() {
        // binom == C(c, i) > rank here; walk down to the largest c with C(c, i) ≤ rank
        while binom > rank {
            binom = binom * (c - i) / c;
            c -= 1;
        }
        out.push(c);
        rank -= &binom;
        if i > 1 {
            binom = if c == 0 { BigUint::zero() } else { binom * i / c };
            c -= 1;
            // now binom == C(c, i - 1) with c = previous position - 1
        }
    }
    out.reverse();
    out
}

/// Whether position `target` occurs in the `k`-combination of
/// `[0, n_positions)` with the given colex rank. Walks positions downward and
/// stops as soon as it passes `target`.
/// `combinations` must equal `C(n_positions, k)`.
fn colex_contains(
    mut rank: BigUint,
    k: u64,
    n_positions: u64,
    combinations: &BigUint,
    target: u64,
) -> Result<bool> {
    if k == 0 {
        return Ok(false);
    }
    if &rank >= combinations {
        return Err(Error::Format("colex rank exceeds the number of combinations"));
    }
    let mut c = n_positions - 1;
    let mut binom = combinations * (n_positions - k) / n_positions;
    for i in (1..=k).rev() {
        while binom > rank {
            if c < target {
                return Ok(false);
            }
            binom = binom * (c - i) / c;
            c -= 1;
        }
        if c == target {
            return Ok(true);
        }
        if c < target {
            return Ok(false);
        }
        rank -= &binom;
        if i > 1 {
            if c == 0 {
                return Ok(false);
            }
            binom = binom * i / c;
            c -= 1;
        }
    }
    Ok(false)
}

/// A sorted dictionary as a standalone payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedSetDict {
    pub layout: DictLayout,
    pub payload: BitString,
}

/// A compressed dictionary as a standalone payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedSetDict {
    pub layout: DictLayout,
    pub payload: BitString,
}

pub fn encode_sorted(n: usize, set: &[usize], k_max: usize) -> Result<SortedSetDict> {
    let layout = DictLayout::new(DictBackend::Sorted, n, k_max);
    let payload = layout.encode(set)?;
    Ok(SortedSetDict { layout, payload })
}

pub fn encode_compressed(n: usize, set: &[usize], k_max: usize) -> Result<CompressedSetDict> {
    let layout = DictLayout::new(DictBackend::Compressed, n, k_max);
    let payload = layout.encode(set)?;
    Ok(CompressedSetDict { layout, payload })
}

macro_rules! standalone_queries {
    ($t:ty) => {
        impl $t {
            /// Membership and the number of payload bits inspected.
            pub fn contains_inspected(&self, x: usize) -> Result<(bool, usize)> {
                let mut c = self.payload.cursor();
                let hit = self.layout.contains(&mut c, x)?;
                Ok((hit, c.inspected()))
            }

            pub fn contains(&self, x: usize) -> bool {
                self.contains_inspected(x).map(|r| r.0).unwrap_or(false)
            }

            pub fn elements(&self) -> Result<Vec<usize>> {
                self.layout.decode(&mut self.payload.cursor())
            }
        }
    };
}

standalone_queries!(SortedSetDict);
standalone_queries!(CompressedSetDict);

pub fn contains_sorted(d: &SortedSetDict, x: usize) -> bool {
    d.contains(x)
}

pub fn contains_compressed(d: &CompressedSetDict, x: usize) -> bool {
    d.contains(x)
}

/// Binary entropy `H(p) = -p log p - (1-p) log(1-p)` with `0 log 0 = 0`.
pub fn entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain);
    }
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * libm::log2(x) };
    Ok(term(p) + term(1.0 - p))
}

/// Per-vertex dictionaries of an orientation's out-sets.
pub fn neighbourhood_labels(orient: &Orientation, backend: DictBackend) -> Result<(DictLayout, Vec<BitString>)> {
    let layout = DictLayout::new(backend, orient.n(), orient.bound);
    let labels = orient
        .out
        .iter()
        .map(|out| layout.encode(out))
        .collect::<Result<Vec<_>>>()?;
    Ok((layout, labels))
}

/// `u` and `v` are adjacent iff one lies in the other's out-set.
pub fn adjacent_via_dicts(
    layout: &DictLayout,
    label_u: &BitString,
    u: usize,
    label_v: &BitString,
    v: usize,
) -> Result<bool> {
    Ok(layout.contains(&mut label_u.cursor(), v)? || layout.contains(&mut label_v.cursor(), u)?)
}
