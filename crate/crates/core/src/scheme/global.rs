use alloc::vec::Vec;

use crate::bitio::{ceil_log2, index_width, BitString, BitWriter};
use crate::dict::{DictBackend, DictLayout};
use crate::error::{Error, Result};

use super::params::Profile;

const COUNT_WIDTH: u32 = 32;

/// Data shared by all labels of one labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSection {
    pub n: usize,
    pub profile: Profile,
    pub dict: DictBackend,
    /// The cover budget the labeling was built with.
    pub s: usize,
    /// Cover set `S`, in rank ids.
    pub cover: Vec<usize>,
    /// Hub-covering pairs `T`, in rank ids.
    pub t_pairs: Vec<(usize, usize)>,
    pub residual_hubs: usize,
    /// Sizes of the two non-hub sides.
    pub p: usize,
    pub q: usize,
    pub light_cap: usize,
    pub nonhub_cap: usize,
    pub residual_cap: usize,
    pub overflow_cap: usize,
}

/// Widths and layouts derived from a [`GlobalSection`], computed once per
/// labeling and shared by all queries.
#[derive(Clone, Debug)]
pub struct Decoder {
    pub global: GlobalSection,
    pub index_width: u32,
    pub pair_index_width: u32,
    pub residual_index_width: u32,
    pub t_vertices: Vec<usize>,
    pub t_pair_slots: Vec<(usize, usize)>,
    pub light: DictLayout,
    pub nonhub: DictLayout,
    pub residual: DictLayout,
    pub overflow: DictLayout,
}

impl GlobalSection {
    pub fn to_bits(&self) -> BitString {
        let w = index_width(self.n);
        let mut b = BitWriter::new();
        let mut put = |v: usize, width: u32| b.append_uint(v as u64, width).expect("global field fits");
        put(self.n, COUNT_WIDTH);
        put(self.profile.code() as usize, 2);
        put(matches!(self.dict, DictBackend::Compressed) as usize, 1);
        put(self.s, COUNT_WIDTH);
        put(self.cover.len(), COUNT_WIDTH);
        for &u in &self.cover {
            put(u, w);
        }
        put(self.t_pairs.len(), COUNT_WIDTH);
        for &(x, y) in &self.t_pairs {
            put(x, w);
            put(y, w);
        }
        for v in [
            self.residual_hubs,
            self.p,
            self.q,
            self.light_cap,
            self.nonhub_cap,
            self.residual_cap,
            self.overflow_cap,
        ] {
            put(v, COUNT_WIDTH);
        }
        b.finish()
    }

    pub fn from_bits(bits: &BitString) -> Result<Self> {
        let mut c = bits.cursor();
        let count = |c: &mut crate::bitio::BitCursor<'_>| c.read_uint(COUNT_WIDTH).map(|v| v as usize);
        let n = count(&mut c)?;
        let profile = Profile::from_code(c.read_uint(2)? as u8).ok_or(Error::Format("unknown profile code"))?;
        let dict = if c.read_bit()? { DictBackend::Compressed } else { DictBackend::Sorted };
        let budget = count(&mut c)?;
        let w = index_width(n);
        let s_len = count(&mut c)?;
        if s_len > n {
            return Err(Error::Format("cover set larger than n"));
        }
        let cover = (0..s_len).map(|_| c.read_uint(w).map(|v| v as usize)).collect::<Result<Vec<_>>>()?;
        let t_len = count(&mut c)?;
        if t_len > n.saturating_mul(n) {
            return Err(Error::Format("pair list larger than n^2"));
        }
        let mut t_pairs = Vec::with_capacity(t_len);
        for _ in 0..t_len {
            let x = c.read_uint(w)? as usize;
            let y = c.read_uint(w)? as usize;
            t_pairs.push((x, y));
        }
        let residual_hubs = count(&mut c)?;
        let p = count(&mut c)?;
        let q = count(&mut c)?;
        let light_cap = count(&mut c)?;
        let nonhub_cap = count(&mut c)?;
        let residual_cap = count(&mut c)?;
        let overflow_cap = count(&mut c)?;
        if c.remaining() != 0 {
            return Err(Error::Format("trailing bits in global section"));
        }
        let g = GlobalSection {
            n,
            profile,
            dict,
            s: budget,
            cover,
            t_pairs,
            residual_hubs,
            p,
            q,
            light_cap,
            nonhub_cap,
            residual_cap,
            overflow_cap,
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        let caps = [self.light_cap, self.nonhub_cap, self.residual_cap, self.overflow_cap];
        if self.cover.iter().any(|&u| u >= n)
            || self.t_pairs.iter().any(|&(x, y)| x >= n || y >= n)
            || self.p + self.q > n
            || self.residual_hubs > n
            || caps.iter().any(|&c| c > n)
        {
            return Err(Error::Format("global section field out of range"));
        }
        Ok(())
    }

    pub fn decoder(&self) -> Decoder {
        let n = self.n;
        let mut t_vertices: Vec<usize> = Vec::new();
        let mut slot = |v: usize| match t_vertices.iter().position(|&w| w == v) {
            Some(s) => s,
            None => {
                t_vertices.push(v);
                t_vertices.len() - 1
            }
        };
        let t_pair_slots = self.t_pairs.iter().map(|&(x, y)| (slot(x), slot(y))).collect();
        Decoder {
            global: self.clone(),
            index_width: index_width(n),
            pair_index_width: ceil_log2(self.t_pairs.len() as u64),
            residual_index_width: ceil_log2(self.residual_hubs as u64),
            t_vertices,
            t_pair_slots,
            light: DictLayout::new(self.dict, n, self.light_cap),
            nonhub: DictLayout::new(self.dict, n, self.nonhub_cap),
            residual: DictLayout::new(self.dict, n, self.residual_cap),
            overflow: DictLayout::new(DictBackend::Sorted, n, self.overflow_cap),
        }
    }
}
