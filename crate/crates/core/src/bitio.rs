//! Bit strings with big-endian fields and a read cursor that counts the
//! payload bits it inspects.
//!
//! Labels are plain bit sequences without byte alignment; padding to whole
//! bytes only happens in [`BitString::to_bytes`].

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// `⌈log2 x⌉`, with `ceil_log2(0) == ceil_log2(1) == 0`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Width of a field holding any vertex index in `[0, n)`.
pub fn index_width(n: usize) -> u32 {
    ceil_log2(n as u64)
}

/// An immutable sequence of bits.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (63 - i % 64) & 1 == 1
    }

    pub fn cursor(&self) -> BitCursor<'_> {
        BitCursor::new(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// The bits from `start` to the end.
    pub fn suffix(&self, start: usize) -> BitString {
        let start = start.min(self.len);
        let len = self.len - start;
        let mut words = alloc::vec![0u64; len.div_ceil(64)];
        let (w0, shift) = (start / 64, start % 64);
        for (k, out) in words.iter_mut().enumerate() {
            let hi = self.words[w0 + k] << shift;
            let lo = match (shift, self.words.get(w0 + k + 1)) {
                (0, _) | (_, None) => 0,
                (_, Some(&next)) => next >> (64 - shift),
            };
            *out = hi | lo;
        }
        let mut s = BitString { words, len };
        s.clear_tail();
        s
    }

    /// Packs the bits MSB-first into bytes, zero-padding the last byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        let mut out = Vec::with_capacity(nbytes);
        for b in 0..nbytes {
            let word = self.words[b / 8];
            out.push((word >> (56 - 8 * (b % 8))) as u8);
        }
        out
    }

    /// Inverse of [`to_bytes`](Self::to_bytes); `bytes` must hold at least `len` bits.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() * 8 < len {
            return Err(Error::Format("payload shorter than its bit length"));
        }
        let mut words = alloc::vec![0u64; len.div_ceil(64)];
        for (b, &byte) in bytes.iter().take(len.div_ceil(8)).enumerate() {
            words[b / 8] |= (byte as u64) << (56 - 8 * (b % 8));
        }
        let mut s = BitString { words, len };
        s.clear_tail();
        Ok(s)
    }

    fn clear_tail(&mut self) {
        let used = self.len % 64;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 << (64 - used);
            }
        }
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({}: ", self.len)?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// Append-only builder; [`finish`](Self::finish) seals it into a [`BitString`].
#[derive(Clone, Debug, Default)]
pub struct BitWriter {
    inner: BitString,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.inner.len
    }

    pub fn is_empty(&self) -> bool {
        self.inner.len == 0
    }

    /// Appends `value` as a big-endian field of `width` bits.
    pub fn append_uint(&mut self, value: u64, width: u32) -> Result<()> {
        if width > 64 || (width < 64 && value >> width != 0) {
            return Err(Error::ValueOutOfRange { value, width });
        }
        if width == 0 {
            return Ok(());
        }
        let s = &mut self.inner;
        let offset = s.len % 64;
        if offset == 0 {
            s.words.push(0);
        }
        let free = 64 - offset as u32;
        let last = s.words.len() - 1;
        if width <= free {
            s.words[last] |= value << (free - width);
        } else {
            let spill = width - free;
            s.words[last] |= value >> spill;
            s.words.push(value << (64 - spill));
        }
        s.len += width as usize;
        Ok(())
    }

    pub fn push_bit(&mut self, bit: bool) {
        self.append_uint(bit as u64, 1).expect("one bit always fits");
    }

    /// Appends an arbitrary-precision value as a big-endian field of `width` bits.
    pub fn append_biguint(&mut self, value: &BigUint, width: u32) -> Result<()> {
        if value.bits() > width as u64 {
            return Err(Error::ValueOutOfRange { value: u64::MAX, width });
        }
        let digits = value.to_u64_digits();
        let mut remaining = width;
        while remaining > 0 {
            let chunk = if remaining.is_multiple_of(64) { 64 } else { remaining % 64 };
            let word_index = ((remaining - 1) / 64) as usize;
            let word = digits.get(word_index).copied().unwrap_or(0);
            self.append_uint(word, chunk)?;
            remaining -= chunk;
        }
        Ok(())
    }

    pub fn append_bits(&mut self, other: &BitString) {
        let mut cursor = other.cursor();
        let mut left = other.len();
        while left > 0 {
            let w = left.min(64) as u32;
            let v = cursor.read_uint(w).expect("within bounds");
            self.append_uint(v, w).expect("fits by construction");
            left -= w as usize;
        }
    }

    pub fn finish(self) -> BitString {
        self.inner
    }
}

/// Read position over a [`BitString`] with an inspected-bit counter.
///
/// Seeking and skipping are free; only `read_*` calls add to `inspected`.
#[derive(Clone, Debug)]
pub struct BitCursor<'a> {
    bits: &'a BitString,
    position: usize,
    inspected: usize,
}

impl<'a> BitCursor<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        BitCursor { bits, position: 0, inspected: 0 }
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn inspected(&self) -> usize {
        self.inspected
    }

    pub fn remaining(&self) -> usize {
        self.bits.len - self.position
    }

    pub fn bits(&self) -> &'a BitString {
        self.bits
    }

    pub fn seek(&mut self, position: usize) -> Result<()> {
        if position > self.bits.len {
            return Err(Error::Overrun { position, width: 0, len: self.bits.len });
        }
        self.position = position;
        Ok(())
    }

    pub fn skip(&mut self, width: usize) -> Result<()> {
        self.seek(self.position + width)
    }

    fn check(&self, width: usize) -> Result<()> {
        if self.position + width > self.bits.len {
            return Err(Error::Overrun {
                position: self.position,
                width: width.min(u32::MAX as usize) as u32,
                len: self.bits.len,
            });
        }
        Ok(())
    }

    /// Reads a big-endian field of `width ≤ 64` bits.
    pub fn read_uint(&mut self, width: u32) -> Result<u64> {
        if width > 64 {
            return Err(Error::ValueOutOfRange { value: 0, width });
        }
        if width == 0 {
            return Ok(0);
        }
        self.check(width as usize)?;
        let words = &self.bits.words;
        let offset = self.position % 64;
        let idx = self.position / 64;
        let free = 64 - offset as u32;
        let value = if width <= free {
            (words[idx] << offset) >> (64 - width)
        } else {
            let spill = width - free;
            let hi = (words[idx] << offset) >> (64 - free);
            (hi << spill) | (words[idx + 1] >> (64 - spill))
        };
        self.position += width as usize;
        self.inspected += width as usize;
        Ok(value)
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        Ok(self.read_uint(1)? == 1)
    }

    pub fn read_biguint(&mut self, width: u32) -> Result<BigUint> {
        self.check(width as usize)?;
        let mut digits = alloc::vec![0u64; (width as usize).div_ceil(64)];
        let mut remaining = width;
        while remaining > 0 {
            let chunk = if remaining.is_multiple_of(64) { 64 } else { remaining % 64 };
            let word_index = ((remaining - 1) / 64) as usize;
            digits[word_index] = self.read_uint(chunk)?;
            remaining -= chunk;
        }
        Ok(biguint_from_u64_digits(&digits))
    }
}

pub(crate) fn biguint_from_u64_digits(digits: &[u64]) -> BigUint {
    let mut limbs = Vec::with_capacity(digits.len() * 2);
    for d in digits {
        limbs.push(*d as u32);
        limbs.push((*d >> 32) as u32);
    }
    BigUint::new(limbs)
}
