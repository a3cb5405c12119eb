//! planar_code: a binary stream of embedded graphs. Each record is a vertex
//! count followed by one clockwise neighbor list per vertex, each list
//! 0-terminated, labels 1-based. The rotations are carried into the returned
//! embeddings verbatim (validated, not recomputed).

use super::CodecError;
use crate::embed::Embedding;
use crate::graph::Graph;

const HEADER: &[u8] = b">>planar_code<<";

fn bad(msg: impl Into<String>) -> CodecError {
    CodecError::MalformedEncoding(msg.into())
}

/// Parses a whole planar_code stream (optional header, zero or more records).
/// Only the 1-byte vertex-count form (n <= 255) is supported.
pub fn parse_planar_code(data: &[u8]) -> Result<Vec<(Graph, Embedding)>, CodecError> {
    let mut rest = data.strip_prefix(HEADER).unwrap_or(data);
    let mut out = Vec::new();
    while !rest.is_empty() {
        let (record, tail) = parse_record(rest)?;
        out.push(record);
        rest = tail;
    }
    Ok(out)
}

fn parse_record(data: &[u8]) -> Result<((Graph, Embedding), &[u8]), CodecError> {
    let (&count, mut rest) = data.split_first().ok_or(CodecError::TruncatedStream)?;
    if count == 0 {
        return Err(bad("records with 256 or more vertices not supported"));
    }
    let n = count as usize;
    let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut list = Vec::new();
        loop {
            let (&label, tail) = rest.split_first().ok_or(CodecError::TruncatedStream)?;
            rest = tail;
            if label == 0 {
                break;
            }
            let w = label as usize - 1;
            if w >= n {
                return Err(bad(format!(
                    "neighbor label {label} out of range in record with {n} vertices"
                )));
            }
            if w == v {
                return Err(bad(format!("self-loop at vertex {}", v + 1)));
            }
            list.push(w);
        }
        rotation.push(list);
    }
    let graph = Graph::from_adjacency(rotation.clone()).map_err(|e| bad(e.to_string()))?;
    let embedding =
        Embedding::from_rotation(&graph, rotation).map_err(|e| bad(e.to_string()))?;
    Ok(((graph, embedding), rest))
}

/// Encodes embedded graphs as a planar_code stream with header.
pub fn write_planar_code(records: &[(Graph, Embedding)]) -> Vec<u8> {
    let mut out = HEADER.to_vec();
    for (graph, embedding) in records {
        let n = graph.n();
        assert!(
            (1..=255).contains(&n),
            "planar_code records must have 1..=255 vertices"
        );
        out.push(n as u8);
        for v in 0..n {
            for &w in embedding.rotation(v) {
                out.push(w as u8 + 1);
            }
            out.push(0);
        }
    }
    out
}
