//! Digraph text files and the binary ORLB label container.
//!
//! Container layout, little-endian: magic `ORLB`, version byte, profile byte
//! (0 tradeoff, 1 fast, 2 reachability), `u32` n, `u64` global bit length and
//! its bytes, then per vertex an optional `u32` component id (reachability
//! only), a `u64` bit length and the label bytes. Bit strings are packed
//! MSB-first and zero-padded to whole bytes.

use std::io::{self, Read, Write};

use orlb_core::bitio::BitString;
use orlb_core::graph::Digraph;
use orlb_core::reach::ReachLabeling;
use orlb_core::scheme::{Labeling, Profile};
use thiserror::Error;

pub const MAGIC: &[u8; 4] = b"ORLB";
pub const VERSION: u8 = 1;
const REACH_PROFILE: u8 = 2;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not an ORLB file")]
    BadMagic,
    #[error("unsupported ORLB version {0}")]
    Version(u8),
    #[error("unknown profile byte {0}")]
    Profile(u8),
    #[error("profile byte disagrees with the global section")]
    ProfileMismatch,
    #[error("component id of vertex {vertex} disagrees with its label")]
    ComponentMismatch { vertex: usize },
    #[error(transparent)]
    Core(#[from] orlb_core::Error),
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

/// Parses the `n m` header followed by `m` lines `u v`; `#` lines are comments.
pub fn parse_digraph(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_error(1, "missing \"n m\" header"))?;
    let nums = |line: usize, l: &str| -> Result<(usize, usize), FormatError> {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_error(line, format!("expected two integers, found {:?}", l)));
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|e| parse_error(line, format!("{s:?}: {e}")));
        Ok((parse(fields[0])?, parse(fields[1])?))
    };
    let (n, m) = nums(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = nums(line, l)?;
        if u >= n || v >= n {
            return Err(parse_error(line, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(parse_error(line, "self-loop"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_error(hline, format!("header promises {m} edges, found {}", edges.len())));
    }
    Ok(Digraph::new(n, edges)?)
}

pub fn write_digraph(d: &Digraph, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{} {}", d.n(), d.edge_count())?;
    for (u, v) in d.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// The labels stored in one ORLB file.
#[derive(Clone, Debug)]
pub enum Container {
    Scheme(Labeling),
    Reach(ReachLabeling),
}

impl Container {
    pub fn n(&self) -> usize {
        match self {
            Container::Scheme(l) => l.n(),
            Container::Reach(r) => r.n(),
        }
    }
}

fn put_bits(out: &mut impl Write, b: &BitString) -> io::Result<()> {
    out.write_all(&(b.len() as u64).to_le_bytes())?;
    out.write_all(&b.to_bytes())
}

fn get_u32(r: &mut impl Read) -> io::Result<u32> {
    let mut buf = [0; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn get_bits(r: &mut impl Read) -> Result<BitString, FormatError> {
    let mut buf = [0; 8];
    r.read_exact(&mut buf)?;
    let len = u64::from_le_bytes(buf);
    let len = usize::try_from(len).map_err(|_| parse_error(0, "bit length too large"))?;
    // read incrementally so a corrupt length cannot force a huge allocation
    let mut bytes = Vec::new();
    r.take(len.div_ceil(8) as u64).read_to_end(&mut bytes)?;
    if bytes.len() < len.div_ceil(8) {
        return Err(io::Error::from(io::ErrorKind::UnexpectedEof).into());
    }
    Ok(BitString::from_bytes(&bytes, len)?)
}

pub fn write_container(c: &Container, out: &mut impl Write) -> io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&[VERSION])?;
    match c {
        Container::Scheme(l) => {
            out.write_all(&[l.global().profile.code()])?;
            out.write_all(&(l.n() as u32).to_le_bytes())?;
            put_bits(out, &l.global_bits())?;
            for lab in l.labels() {
                put_bits(out, lab)?;
            }
        }
        Container::Reach(r) => {
            out.write_all(&[REACH_PROFILE])?;
            out.write_all(&(r.n() as u32).to_le_bytes())?;
            put_bits(out, &r.inner().global_bits())?;
            for (v, lab) in r.labels().iter().enumerate() {
                out.write_all(&(r.component_of(v) as u32).to_le_bytes())?;
                put_bits(out, lab)?;
            }
        }
    }
    Ok(())
}

pub fn read_container(r: &mut impl Read) -> Result<Container, FormatError> {
    let mut magic = [0; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(FormatError::BadMagic);
    }
    let mut byte = [0; 1];
    r.read_exact(&mut byte)?;
    if byte[0] != VERSION {
        return Err(FormatError::Version(byte[0]));
    }
    r.read_exact(&mut byte)?;
    let profile_byte = byte[0];
    let n = get_u32(r)? as usize;
    let global = get_bits(r)?;
    match profile_byte {
        REACH_PROFILE => {
            let mut ids = Vec::new();
            let mut labels = Vec::new();
            for _ in 0..n {
                ids.push(get_u32(r)? as usize);
                labels.push(get_bits(r)?);
            }
            let reach = ReachLabeling::from_parts(n, &global, labels)?;
            if let Some(vertex) = (0..n).find(|&v| reach.component_of(v) != ids[v]) {
                return Err(FormatError::ComponentMismatch { vertex });
            }
            Ok(Container::Reach(reach))
        }
        code => {
            let profile = Profile::from_code(code).ok_or(FormatError::Profile(code))?;
            let labels = (0..n).map(|_| get_bits(r)).collect::<Result<Vec<_>, _>>()?;
            let l = Labeling::from_parts(&global, labels)?;
            if l.global().profile != profile {
                return Err(FormatError::ProfileMismatch);
            }
            Ok(Container::Scheme(l))
        }
    }
}
