//! Two-label queries.
//!
//! A label is read section by section; fixed-width sections are located by
//! arithmetic, and a variable-length dictionary is skipped by reading its
//! size field (which counts as inspected).

use alloc::vec::Vec;

use crate::bipartite::{self, column_payload_len, row_payload_len};
use crate::bitio::{BitCursor, BitString};
use crate::error::{Error, Result};

use super::global::Decoder;
use super::structure::VertexClass;

/// Outcome of an adjacency query and the label bits it read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub adjacent: bool,
    pub inspected: usize,
}

/// Direction of a comparability query between `u` and `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Greater,
    Incomparable,
}

/// Bit lengths of every section of one label.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SectionSizes {
    /// Rank, class and class index.
    pub header: usize,
    pub cover_strings: usize,
    pub residual_bitmap: usize,
    pub t_flags: usize,
    pub bipartite: usize,
    pub residual_dict: usize,
    pub nonhub_dict: usize,
    pub t_dicts: usize,
    pub overflow_dict: usize,
}

impl SectionSizes {
    pub const NAMES: [&'static str; 9] = [
        "header",
        "cover_strings",
        "residual_bitmap",
        "t_flags",
        "bipartite",
        "residual_dict",
        "nonhub_dict",
        "t_dicts",
        "overflow_dict",
    ];

    pub fn values(&self) -> [usize; 9] {
        [
            self.header,
            self.cover_strings,
            self.residual_bitmap,
            self.t_flags,
            self.bipartite,
            self.residual_dict,
            self.nonhub_dict,
            self.t_dicts,
            self.overflow_dict,
        ]
    }

    pub fn add(&mut self, other: &SectionSizes) {
        self.header += other.header;
        self.cover_strings += other.cover_strings;
        self.residual_bitmap += other.residual_bitmap;
        self.t_flags += other.t_flags;
        self.bipartite += other.bipartite;
        self.residual_dict += other.residual_dict;
        self.nonhub_dict += other.nonhub_dict;
        self.t_dicts += other.t_dicts;
        self.overflow_dict += other.overflow_dict;
    }

    pub fn total(&self) -> usize {
        self.values().iter().sum()
    }
}

struct Reader<'a> {
    d: &'a Decoder,
    c: BitCursor<'a>,
    rank: usize,
    class: VertexClass,
    index: usize,
    header_end: usize,
    flags: Option<Vec<(bool, bool)>>,
    residual_dict_start: Option<usize>,
    nonhub_start: Option<usize>,
    t_dict_starts: Option<Vec<(Option<usize>, Option<usize>)>>,
    overflow_start: Option<usize>,
}

impl<'a> Reader<'a> {
    fn new(d: &'a Decoder, label: &'a BitString) -> Result<Self> {
        let mut c = label.cursor();
        let rank = c.read_uint(d.index_width)? as usize;
        if rank >= d.global.n {
            return Err(Error::Format("rank out of range"));
        }
        let class = VertexClass::from_code(c.read_uint(2)?);
        let width = match class {
            VertexClass::Plus | VertexClass::Minus => d.index_width,
            VertexClass::CoveredHub => d.pair_index_width,
            VertexClass::ResidualHub => d.residual_index_width,
        };
        let index = c.read_uint(width)? as usize;
        let bound = match class {
            VertexClass::Plus => d.global.p,
            VertexClass::Minus => d.global.q,
            VertexClass::CoveredHub => d.global.t_pairs.len(),
            VertexClass::ResidualHub => d.global.residual_hubs,
        };
        if index >= bound {
            return Err(Error::Format("class index out of range"));
        }
        let header_end = c.position();
        Ok(Reader {
            d,
            c,
            rank,
            class,
            index,
            header_end,
            flags: None,
            residual_dict_start: None,
            nonhub_start: None,
            t_dict_starts: None,
            overflow_start: None,
        })
    }

    fn cover_len(&self) -> usize {
        self.d.global.cover.len()
    }

    fn cover_strings_start(&self) -> usize {
        self.header_end
    }

    fn residual_bitmap_start(&self) -> usize {
        self.cover_strings_start() + 2 * self.cover_len()
    }

    fn t_flags_start(&self) -> usize {
        self.residual_bitmap_start() + self.d.global.residual_hubs
    }

    fn bipartite_start(&self) -> usize {
        self.t_flags_start() + 2 * self.d.t_vertices.len()
    }

    fn bipartite_len(&self) -> usize {
        let (p, q) = (self.d.global.p, self.d.global.q);
        match self.class {
            VertexClass::Plus => row_payload_len(p, q),
            VertexClass::Minus => column_payload_len(self.index, p, q),
            _ => 0,
        }
    }

    /// Reads `len` bits at `start` into 64-bit words (last word left-aligned).
    fn read_words(&mut self, start: usize, len: usize) -> Result<Vec<u64>> {
        self.c.seek(start)?;
        let mut out = Vec::with_capacity(len.div_ceil(64));
        let mut left = len;
        while left > 0 {
            let w = left.min(64) as u32;
            out.push(self.c.read_uint(w)? << (64 - w));
            left -= w as usize;
        }
        Ok(out)
    }

    fn cover_up(&mut self) -> Result<Vec<u64>> {
        self.read_words(self.cover_strings_start(), self.cover_len())
    }

    fn cover_down(&mut self) -> Result<Vec<u64>> {
        self.read_words(self.cover_strings_start() + self.cover_len(), self.cover_len())
    }

    fn residual_bit(&mut self, i: usize) -> Result<bool> {
        self.c.seek(self.residual_bitmap_start() + i)?;
        self.c.read_bit()
    }

    fn flag(&mut self, slot: usize) -> Result<(bool, bool)> {
        if let Some(f) = &self.flags {
            return Ok(f[slot]);
        }
        self.c.seek(self.t_flags_start() + 2 * slot)?;
        Ok((self.c.read_bit()?, self.c.read_bit()?))
    }

    fn all_flags(&mut self) -> Result<Vec<(bool, bool)>> {
        if let Some(f) = &self.flags {
            return Ok(f.clone());
        }
        let words = self.read_words(self.t_flags_start(), 2 * self.d.t_vertices.len())?;
        let bit = |i: usize| words[i / 64] >> (63 - i % 64) & 1 == 1;
        let flags: Vec<(bool, bool)> =
            (0..self.d.t_vertices.len()).map(|s| (bit(2 * s), bit(2 * s + 1))).collect();
        self.flags = Some(flags.clone());
        Ok(flags)
    }

    fn residual_dict_start(&mut self) -> usize {
        *self
            .residual_dict_start
            .get_or_insert(self.bipartite_start() + self.bipartite_len())
    }

    fn nonhub_start(&mut self) -> Result<usize> {
        if let Some(s) = self.nonhub_start {
            return Ok(s);
        }
        let start = self.residual_dict_start();
        self.c.seek(start)?;
        self.d.residual.skip(&mut self.c)?;
        self.nonhub_start = Some(self.c.position());
        Ok(self.c.position())
    }

    fn t_dict_starts(&mut self) -> Result<Vec<(Option<usize>, Option<usize>)>> {
        if let Some(s) = &self.t_dict_starts {
            return Ok(s.clone());
        }
        let flags = self.all_flags()?;
        let start = self.nonhub_start()?;
        self.c.seek(start)?;
        if !self.class.is_hub() {
            self.d.nonhub.skip(&mut self.c)?;
        }
        let mut starts = Vec::with_capacity(flags.len());
        for (minus, plus) in flags {
            let m = if minus {
                let p = self.c.position();
                self.d.light.skip(&mut self.c)?;
                Some(p)
            } else {
                None
            };
            let pl = if plus {
                let p = self.c.position();
                self.d.light.skip(&mut self.c)?;
                Some(p)
            } else {
                None
            };
            starts.push((m, pl));
        }
        self.overflow_start = Some(self.c.position());
        self.t_dict_starts = Some(starts.clone());
        Ok(starts)
    }

    fn overflow_start(&mut self) -> Result<usize> {
        if self.overflow_start.is_none() {
            self.t_dict_starts()?;
        }
        Ok(self.overflow_start.expect("set by t_dict_starts"))
    }

    fn residual_contains(&mut self, x: usize) -> Result<bool> {
        let start = self.residual_dict_start();
        self.c.seek(start)?;
        self.d.residual.contains(&mut self.c, x)
    }

    fn nonhub_contains(&mut self, x: usize) -> Result<bool> {
        let start = self.nonhub_start()?;
        self.c.seek(start)?;
        self.d.nonhub.contains(&mut self.c, x)
    }

    fn light_contains(&mut self, slot: usize, plus: bool, x: usize) -> Result<bool> {
        let starts = self.t_dict_starts()?;
        let start = if plus { starts[slot].1 } else { starts[slot].0 };
        let start = start.ok_or(Error::Format("missing light dictionary"))?;
        self.c.seek(start)?;
        self.d.light.contains(&mut self.c, x)
    }

    fn overflow_contains(&mut self, x: usize) -> Result<bool> {
        let start = self.overflow_start()?;
        self.c.seek(start)?;
        self.d.overflow.contains(&mut self.c, x)
    }

    fn end_check(&mut self) -> Result<usize> {
        let end = self.overflow_start()?;
        self.c.seek(end)?;
        self.d.overflow.skip(&mut self.c)?;
        if self.c.remaining() != 0 {
            return Err(Error::Format("trailing bits in label"));
        }
        Ok(self.c.position())
    }
}

/// Adjacency in the comparability graph, from two labels.
pub fn adjacent(d: &Decoder, label_u: &BitString, label_v: &BitString) -> Result<Verdict> {
    let mut u = Reader::new(d, label_u)?;
    let mut v = Reader::new(d, label_v)?;
    let adjacent = if u.rank == v.rank {
        false
    } else if u.rank < v.rank {
        ladder(d, &mut u, &mut v)?
    } else {
        ladder(d, &mut v, &mut u)?
    };
    Ok(Verdict { adjacent, inspected: u.c.inspected() + v.c.inspected() })
}

/// Comparability with direction: `Less` means `u < v`.
pub fn comparable(d: &Decoder, label_u: &BitString, label_v: &BitString) -> Result<(Comparison, usize)> {
    let verdict = adjacent(d, label_u, label_v)?;
    if !verdict.adjacent {
        return Ok((Comparison::Incomparable, verdict.inspected));
    }
    // ranks were already read by `adjacent`; re-reading them is bookkeeping
    let w = d.index_width;
    let ru = label_u.cursor().read_uint(w)?;
    let rv = label_v.cursor().read_uint(w)?;
    let dir = if ru < rv { Comparison::Less } else { Comparison::Greater };
    Ok((dir, verdict.inspected))
}

/// The case ladder, with `lo` the endpoint of smaller rank.
fn ladder<'a>(d: &Decoder, lo: &mut Reader<'a>, hi: &mut Reader<'a>) -> Result<bool> {
    // an element of S strictly between the two
    if !d.global.cover.is_empty() {
        let up = lo.cover_up()?;
        let down = hi.cover_down()?;
        if up.iter().zip(&down).any(|(a, b)| a & b != 0) {
            return Ok(true);
        }
    }
    // residual heavy pairs
    if d.global.residual_cap > 0 && (lo.residual_contains(hi.rank)? || hi.residual_contains(lo.rank)?) {
        return Ok(true);
    }
    // residual hubs answer from the other endpoint's bitmap
    if lo.class == VertexClass::ResidualHub {
        return hi.residual_bit(lo.index);
    }
    if hi.class == VertexClass::ResidualHub {
        return lo.residual_bit(hi.index);
    }
    match (lo.class, hi.class) {
        (VertexClass::Plus, VertexClass::Plus) => return lo.nonhub_contains(hi.rank),
        (VertexClass::Minus, VertexClass::Minus) => return hi.nonhub_contains(lo.rank),
        (VertexClass::Plus, VertexClass::Minus) | (VertexClass::Minus, VertexClass::Plus) => {
            let (row, col) = if lo.class == VertexClass::Plus { (lo, hi) } else { (hi, lo) };
            let (p, q) = (d.global.p, d.global.q);
            let (rs, cs) = (row.bipartite_start(), col.bipartite_start());
            row.c.seek(rs)?;
            col.c.seek(cs)?;
            return bipartite::lookup(row.index, col.index, p, q, &mut row.c, &mut col.c);
        }
        _ => {}
    }
    // at least one covered hub: look for a light neighbourhood graph holding both
    let mut slots: Vec<usize> = Vec::with_capacity(4);
    for r in [&*lo, &*hi] {
        if r.class == VertexClass::CoveredHub {
            let (x, y) = d.t_pair_slots[r.index];
            for s in [x, y] {
                if !slots.contains(&s) {
                    slots.push(s);
                }
            }
        }
    }
    for slot in slots {
        let (lo_minus, lo_plus) = lo.flag(slot)?;
        let (hi_minus, hi_plus) = hi.flag(slot)?;
        if lo_minus && hi_minus {
            return lo.light_contains(slot, false, hi.rank);
        }
        if lo_plus && hi_plus {
            return hi.light_contains(slot, true, lo.rank);
        }
    }
    if d.global.overflow_cap > 0 {
        return Ok(lo.overflow_contains(hi.rank)? || hi.overflow_contains(lo.rank)?);
    }
    Ok(false)
}

/// Walks a label and reports the bit length of every section.
pub fn section_sizes(d: &Decoder, label: &BitString) -> Result<SectionSizes> {
    let mut r = Reader::new(d, label)?;
    let header = r.header_end;
    let bip_start = r.bipartite_start();
    let bipartite = r.bipartite_len();
    let residual_start = r.residual_dict_start();
    let nonhub_start = r.nonhub_start()?;
    r.t_dict_starts()?;
    let t_start = {
        r.c.seek(nonhub_start)?;
        if !r.class.is_hub() {
            d.nonhub.skip(&mut r.c)?;
        }
        r.c.position()
    };
    let overflow_start = r.overflow_start()?;
    let end = r.end_check()?;
    Ok(SectionSizes {
        header,
        cover_strings: 2 * r.cover_len(),
        residual_bitmap: d.global.residual_hubs,
        t_flags: 2 * d.t_vertices.len(),
        bipartite,
        residual_dict: nonhub_start - residual_start,
        nonhub_dict: t_start - nonhub_start,
        t_dicts: overflow_start - t_start,
        overflow_dict: end - overflow_start,
    })
    .inspect(|s| debug_assert_eq!(s.header + s.cover_strings + s.residual_bitmap + s.t_flags, bip_start))
}
