//! graph6: one line per graph. The vertex count is followed by the upper
//! triangle of the adjacency matrix, column by column, packed into 6-bit
//! bytes offset by 63.

use super::CodecError;
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_N: usize = 258047;

fn bad(msg: impl Into<String>) -> CodecError {
    CodecError::MalformedEncoding(msg.into())
}

/// Parses one graph6 line (optional `>>graph6<<` header, trailing newline
/// tolerated). Supports the 1-byte and 3-byte vertex-count forms, n <= 258047.
pub fn parse_graph6(line: &str) -> Result<Graph, CodecError> {
    let s = line.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(CodecError::TruncatedStream);
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(bad(format!("byte {b} outside graph6 range 63..=126")));
        }
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(bad(format!("vertex counts above {MAX_N} not supported")));
        }
        if bytes.len() < 4 {
            return Err(CodecError::TruncatedStream);
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, 4)
    } else {
        (bytes[0] as usize - 63, 1)
    };
    if n > MAX_N {
        return Err(bad(format!("vertex count {n} exceeds {MAX_N}")));
    }
    let pair_bits = n * (n.saturating_sub(1)) / 2;
    let payload_len = pair_bits.div_ceil(6);
    if bytes.len() - pos < payload_len {
        return Err(CodecError::TruncatedStream);
    }
    if bytes.len() - pos > payload_len {
        return Err(bad("trailing bytes after adjacency payload"));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    let mut next_pair = {
        // Upper-triangle order: (0,1), (0,2), (1,2), (0,3), ...
        let mut v = 1usize;
        let mut u = 0usize;
        move || {
            let pair = (u, v);
            u += 1;
            if u == v {
                u = 0;
                v += 1;
            }
            pair
        }
    };
    for _ in 0..pair_bits {
        let byte = bytes[pos + bit / 6] - 63;
        let set = (byte >> (5 - bit % 6)) & 1 == 1;
        let (u, v) = next_pair();
        if set {
            edges.push((u, v));
        }
        bit += 1;
    }
    // Canonical encodings pad with zero bits.
    while !bit.is_multiple_of(6) {
        let byte = bytes[pos + bit / 6] - 63;
        if (byte >> (5 - bit % 6)) & 1 == 1 {
            return Err(bad("nonzero padding bits"));
        }
        bit += 1;
    }
    pos += payload_len;
    debug_assert_eq!(pos, bytes.len());
    Graph::from_edges(n, &edges).map_err(|e| bad(e.to_string()))
}

/// Canonical graph6 encoding (no header, no newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_N, "vertex count {n} exceeds graph6 limit {MAX_N}");
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + ((n >> 12) & 0x3f) as u8);
        out.push(63 + ((n >> 6) & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("all bytes in 63..=126")
}
