//! The graph6 text format for undirected graphs.

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 header: {0}")]
    MalformedHeader(String),
    #[error("truncated graph6 data: need {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("trailing bytes after graph6 data: {0:?}")]
    TrailingGarbage(String),
    #[error("byte {0:#04x} outside the graph6 range 63..=126")]
    InvalidByte(u8),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Encodes `g`. Bits run over the upper triangle column by column.
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) as u8 & 63, (n >> 6) as u8 & 63, n as u8 & 63].map(|b| b + 63));
    }
    let mut byte = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            byte = byte << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(byte + 63);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((byte << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes one graph6 string. Surrounding whitespace and the optional
/// `>>graph6<<` prefix are accepted.
pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let first = *bytes.first().ok_or_else(|| Graph6Error::MalformedHeader("empty input".into()))?;
    let (n, body) = match first {
        63..=125 => ((first - 63) as usize, &bytes[1..]),
        126 => {
            let size = bytes.get(1..4).ok_or_else(|| Graph6Error::MalformedHeader("short size field".into()))?;
            if size[0] == 126 {
                return Err(Graph6Error::MalformedHeader("orders above 258047 are unsupported".into()));
            }
            let mut n = 0;
            for &b in size {
                if !(63..=126).contains(&b) {
                    return Err(Graph6Error::MalformedHeader(format!("size byte {b:#04x}")));
                }
                n = n << 6 | (b - 63) as usize;
            }
            (n, &bytes[4..])
        }
        b => return Err(Graph6Error::MalformedHeader(format!("first byte {b:#04x}"))),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::Capacity(n).into());
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated { expected, got: body.len() });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage(String::from_utf8_lossy(&body[expected..]).into_owned()));
    }
    if let Some(&b) = body.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Graph6Error::InvalidByte(b));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = body[k / 6] - 63;
            if b >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::build(n, &edges)?)
}
