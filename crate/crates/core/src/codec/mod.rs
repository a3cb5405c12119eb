//! Wire formats: graph6 (adjacency bitstring) and planar_code (rotation
//! systems). Both parsers are strict; anything off-format is an error rather
//! than a guess.

mod graph6;
mod planar_code;

pub use graph6::{parse_graph6, write_graph6};
pub use planar_code::{parse_planar_code, write_planar_code};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),
    #[error("truncated stream")]
    TruncatedStream,
}
