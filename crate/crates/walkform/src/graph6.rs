//! graph6 text codec (McKay's format).
//!
//! A graph6 string is a vertex-count header followed by the upper triangle of
//! the adjacency matrix, read column by column (`a_{0,1}, a_{0,2}, a_{1,2},
//! a_{0,3}, ...`), packed big-endian into 6-bit groups offset by 63.

use crate::graph::{Graph, GraphError, MAX_VERTICES};
use crate::linalg::BitMatrix;

fn decode_byte(b: u8) -> Result<u32, GraphError> {
    if (63..=126).contains(&b) {
        Ok(u32::from(b - 63))
    } else {
        Err(GraphError::Graph6InvalidByte(b))
    }
}

/// Decodes the `N(n)` header; returns the vertex count and the body offset.
fn decode_order(bytes: &[u8]) -> Result<(usize, usize), GraphError> {
    if bytes[0] != b'~' {
        return Ok((decode_byte(bytes[0])? as usize, 1));
    }
    if bytes.len() >= 2 && bytes[1] == b'~' {
        // 8-byte form encodes up to 2^36 - 1 vertices, far past our cap;
        // decode enough to report the right error.
        if bytes.len() < 8 {
            return Err(GraphError::Graph6BadHeader);
        }
        let mut n: u64 = 0;
        for &b in &bytes[2..8] {
            n = n << 6 | u64::from(decode_byte(b)?);
        }
        let n = usize::try_from(n).map_err(|_| GraphError::Graph6BadHeader)?;
        return Ok((n, 8));
    }
    if bytes.len() < 4 {
        return Err(GraphError::Graph6BadHeader);
    }
    let mut n: u32 = 0;
    for &b in &bytes[1..4] {
        n = n << 6 | decode_byte(b)?;
    }
    Ok((n as usize, 4))
}

/// Parses a graph6 string, with or without the optional `>>graph6<<` prefix.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    if s.is_empty() {
        return Err(GraphError::Graph6Empty);
    }
    let bytes = s.as_bytes();
    let (n, offset) = decode_order(bytes)?;
    if n == 0 {
        return Err(GraphError::TooFewVertices {
            family: "graph6",
            min: 1,
            got: 0,
        });
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    let got = bytes.len() - offset;
    if got < expected {
        return Err(GraphError::Graph6Truncated { expected, got });
    }
    if got > expected {
        return Err(GraphError::Graph6TrailingData { expected, got });
    }
    let mut adj = BitMatrix::zeros(n, n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let value = decode_byte(bytes[offset + bit / 6])?;
            if value >> (5 - bit % 6) & 1 == 1 {
                adj.set(i, j, true);
                adj.set(j, i, true);
            }
            bit += 1;
        }
    }
    Ok(Graph::from_adjacency_bits(n, adj))
}

/// Encodes a graph in graph6 form; inverse of [`parse_graph6`] on the
/// supported range.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // 4-byte header covers everything up to the vertex cap.
        out.push(b'~');
        out.push((n >> 12 & 0x3f) as u8 + 63);
        out.push((n >> 6 & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut group = 0u8;
    let mut filled = 0usize;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}
