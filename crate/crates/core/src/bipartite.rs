//! Adjacency labels for bipartite graphs with per-vertex payloads of at most
//! `⌈pq/n⌉ + 1` bits.
//!
//! Row `i` owns the cyclic window of `k` columns starting at `i·k mod q`.
//! Consecutive windows tile the column cycle, so every column is owned by
//! either `⌊pk/q⌋` or `⌈pk/q⌉` rows. Each adjacency bit is stored once: in
//! the row's payload if the row owns the column, otherwise in the column's
//! payload, which lists the non-owning rows in increasing order.

use alloc::vec::Vec;

use crate::bitio::{ceil_log2, BitCursor, BitString, BitWriter};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Window width `k = min(q, ⌈pq/(p+q)⌉)`, or 0 when `q == 0`.
pub fn window(p: usize, q: usize) -> usize {
    if q == 0 {
        return 0;
    }
    let n = p + q;
    q.min((p * q).div_ceil(n))
}

pub fn owns(i: usize, j: usize, p: usize, q: usize) -> bool {
    let k = window(p, q);
    debug_assert!(i < p && j < q);
    let start = (i * k) % q;
    (j + q - start) % q < k
}

/// Number of rows `i' < i` owning column `j`, by counting the lifts
/// `j + m·q` that fall in the unrolled prefix `[0, i·k)`.
pub fn owners_before(i: usize, j: usize, p: usize, q: usize) -> usize {
    let covered = i * window(p, q);
    if covered > j {
        (covered - j).div_ceil(q)
    } else {
        0
    }
}

/// Offset of row `i`'s bit inside column `j`'s payload (when `i` does not own `j`).
pub fn column_rank(i: usize, j: usize, p: usize, q: usize) -> usize {
    i - owners_before(i, j, p, q)
}

pub fn row_payload_len(p: usize, q: usize) -> usize {
    window(p, q)
}

pub fn column_payload_len(j: usize, p: usize, q: usize) -> usize {
    p - owners_before(p, j, p, q)
}

/// Offset of column `j` inside row `i`'s window.
fn row_offset(i: usize, j: usize, p: usize, q: usize) -> usize {
    let k = window(p, q);
    (j + q - (i * k) % q) % q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Row,
    Column,
}

/// One vertex's label: side, index within its side, `p`, `q` and payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteLabel {
    pub side: Side,
    pub index: usize,
    pub p: usize,
    pub q: usize,
    pub payload: BitString,
}

impl BipartiteLabel {
    /// Side bit plus three `⌈log(n+1)⌉`-bit fields plus the payload.
    pub fn bit_len(&self) -> usize {
        let field = ceil_log2((self.p + self.q) as u64 + 1) as usize;
        1 + 3 * field + self.payload.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteLabeling {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub rows: Vec<BipartiteLabel>,
    pub columns: Vec<BipartiteLabel>,
}

/// Payloads for all rows and columns; `adjacent(i, j)` gives the matrix bit.
pub fn build_payloads(
    p: usize,
    q: usize,
    adjacent: impl Fn(usize, usize) -> bool,
) -> (Vec<BitString>, Vec<BitString>) {
    let k = window(p, q);
    let rows = (0..p)
        .map(|i| {
            let mut w = BitWriter::new();
            let start = if q == 0 { 0 } else { (i * k) % q };
            for off in 0..k {
                w.push_bit(adjacent(i, (start + off) % q));
            }
            w.finish()
        })
        .collect();
    let columns = (0..q)
        .map(|j| {
            let mut w = BitWriter::new();
            for i in 0..p {
                if !owns(i, j, p, q) {
                    w.push_bit(adjacent(i, j));
                }
            }
            w.finish()
        })
        .collect();
    (rows, columns)
}

pub fn encode_bipartite(p: usize, q: usize, edges: &[(usize, usize)]) -> Result<BipartiteLabeling> {
    let mut matrix = alloc::vec![BitSet::new(q); p];
    for &(i, j) in edges {
        if i >= p {
            return Err(Error::VertexOutOfRange { vertex: i, n: p });
        }
        if j >= q {
            return Err(Error::VertexOutOfRange { vertex: j, n: q });
        }
        matrix[i].insert(j);
    }
    let (row_payloads, col_payloads) = build_payloads(p, q, |i, j| matrix[i].contains(j));
    let label = |side, index, payload| BipartiteLabel { side, index, p, q, payload };
    Ok(BipartiteLabeling {
        p,
        q,
        k: window(p, q),
        rows: row_payloads.into_iter().enumerate().map(|(i, b)| label(Side::Row, i, b)).collect(),
        columns: col_payloads
            .into_iter()
            .enumerate()
            .map(|(j, b)| label(Side::Column, j, b))
            .collect(),
    })
}

/// Reads the adjacency bit of row `i` and column `j` from whichever payload
/// stores it. Both cursors must sit at the start of their payloads.
pub fn lookup(
    i: usize,
    j: usize,
    p: usize,
    q: usize,
    row: &mut BitCursor<'_>,
    column: &mut BitCursor<'_>,
) -> Result<bool> {
    if i >= p || j >= q {
        return Err(Error::Format("bipartite index out of range"));
    }
    if owns(i, j, p, q) {
        row.skip(row_offset(i, j, p, q))?;
        row.read_bit()
    } else {
        column.skip(column_rank(i, j, p, q))?;
        column.read_bit()
    }
}

pub fn adjacent_bipartite(a: &BipartiteLabel, b: &BipartiteLabel) -> Result<bool> {
    if (a.p, a.q) != (b.p, b.q) {
        return Err(Error::Format("bipartite labels disagree on (p, q)"));
    }
    let (row, column) = match (a.side, b.side) {
        (Side::Row, Side::Column) => (a, b),
        (Side::Column, Side::Row) => (b, a),
        _ => return Ok(false),
    };
    lookup(
        row.index,
        column.index,
        a.p,
        a.q,
        &mut row.payload.cursor(),
        &mut column.payload.cursor(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bits(b: &BitString) -> alloc::string::String {
        b.iter().map(|x| if x { '1' } else { '0' }).collect()
    }

    #[test]
    fn ownership_two_by_two() {
        assert_eq!(window(2, 2), 1);
        assert!(owns(0, 0, 2, 2));
        assert!(!owns(0, 1, 2, 2));
        assert!(owns(1, 1, 2, 2));
        assert!(!owns(1, 0, 2, 2));
    }

    #[test]
    fn ownership_three_by_three() {
        assert_eq!(window(3, 3), 2);
        let windows: Vec<Vec<usize>> =
            (0..3).map(|i| (0..3).filter(|&j| owns(i, j, 3, 3)).collect()).collect();
        assert_eq!(windows, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        for j in 0..3 {
            assert_eq!((0..3).filter(|&i| owns(i, j, 3, 3)).count(), 2);
            assert_eq!(owners_before(3, j, 3, 3), 2);
        }
    }

    #[test]
    fn empty_column_side() {
        assert_eq!(window(4, 0), 0);
        let l = encode_bipartite(4, 0, &[]).unwrap();
        assert!(l.rows.iter().all(|r| r.payload.is_empty()));
        assert!(l.columns.is_empty());
    }

    #[test]
    fn worked_example() {
        let l = encode_bipartite(2, 2, &[(0, 0), (1, 0)]).unwrap();
        assert_eq!(bits(&l.rows[0].payload), "1");
        assert_eq!(bits(&l.rows[1].payload), "0");
        assert_eq!(bits(&l.columns[0].payload), "1");
        assert_eq!(bits(&l.columns[1].payload), "0");
        assert!(adjacent_bipartite(&l.rows[0], &l.columns[0]).unwrap());
        assert!(adjacent_bipartite(&l.columns[0], &l.rows[1]).unwrap());
        assert!(!adjacent_bipartite(&l.rows[0], &l.columns[1]).unwrap());
        assert!(!adjacent_bipartite(&l.rows[0], &l.rows[1]).unwrap());
    }

    #[test]
    fn empty_and_complete() {
        let e = encode_bipartite(2, 2, &[]).unwrap();
        assert!(e.rows.iter().chain(&e.columns).all(|l| l.payload.iter().all(|b| !b)));
        let all = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let c = encode_bipartite(2, 2, &all).unwrap();
        assert!(c.rows.iter().chain(&c.columns).all(|l| l.payload.iter().all(|b| b)));
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let a = encode_bipartite(2, 2, &[]).unwrap();
        let b = encode_bipartite(2, 3, &[]).unwrap();
        assert!(adjacent_bipartite(&a.rows[0], &b.columns[0]).is_err());
    }
}
