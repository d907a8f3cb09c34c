use core::fmt;

/// Errors produced by the encoders and decoders of this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value does not fit in the requested field width.
    ValueOutOfRange { value: u64, width: u32 },
    /// A read would run past the end of a bit string.
    Overrun { position: usize, width: u32, len: usize },
    /// A set has more elements than the dictionary capacity allows.
    Capacity { size: usize, capacity: usize },
    /// An element lies outside the dictionary universe.
    OutOfUniverse { element: usize, universe: usize },
    /// `transitive_closure` was handed a digraph with a directed cycle.
    Cyclic,
    /// A vertex id is not below the vertex count.
    VertexOutOfRange { vertex: usize, n: usize },
    /// A probability or entropy argument outside `[0, 1]`.
    Domain,
    /// Labels or global data that do not describe a valid labeling.
    Format(&'static str),
    /// Exhaustive enumeration refused above its size guard.
    Guard { n: usize, max: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ValueOutOfRange { value, width } => {
                write!(f, "value {value} does not fit in {width} bits")
            }
            Error::Overrun { position, width, len } => {
                write!(f, "read of {width} bits at {position} overruns length {len}")
            }
            Error::Capacity { size, capacity } => {
                write!(f, "set of size {size} exceeds dictionary capacity {capacity}")
            }
            Error::OutOfUniverse { element, universe } => {
                write!(f, "element {element} outside universe of size {universe}")
            }
            Error::Cyclic => f.write_str("digraph contains a directed cycle"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
            Error::Domain => f.write_str("argument outside [0, 1]"),
            Error::Format(what) => write!(f, "malformed labeling: {what}"),
            Error::Guard { n, max } => write!(f, "n = {n} exceeds the enumeration guard {max}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
