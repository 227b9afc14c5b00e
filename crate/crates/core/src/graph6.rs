//! graph6 text encoding (header-less, one graph per line).
//!
//! Layout: the order `N(n)` followed by the upper triangle of the adjacency
//! matrix in column order `x(0,1) x(0,2) x(1,2) x(0,3) ...`, packed big-endian
//! into six-bit groups, each group offset by 63. The last group is zero-padded.

use crate::error::Graph6Error;
use crate::graph::{bit, Graph, MAX_VERTICES};

const BIAS: u8 = 63;

pub fn emit_graph6(g: &Graph) -> String {
    let bytes = encode(g.adjacency());
    // Every byte is in 63..=126.
    String::from_utf8(bytes).expect("graph6 output is ASCII")
}

pub(crate) fn encode(adj: &[u64]) -> Vec<u8> {
    let n = adj.len();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + BIAS);
        out.push(((n >> 6) & 0x3f) as u8 + BIAS);
        out.push((n & 0x3f) as u8 + BIAS);
    }
    let mut group = 0u8;
    let mut filled = 0;
    for (j, &row) in adj.iter().enumerate().take(n).skip(1) {
        for i in 0..j {
            group = (group << 1) | ((row >> i) & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + BIAS);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + BIAS);
    }
    out
}

fn err(offset: usize, reason: &'static str) -> Graph6Error {
    Graph6Error { offset, reason }
}

pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(err(0, "empty input"));
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(pos, "character outside the graph6 range"));
    }
    let (n, mut pos) = if bytes[0] < 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(err(bytes.len(), "truncated order field"));
        }
        if bytes[1] == 126 {
            return Err(err(1, "order exceeds the supported maximum"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        if n <= 62 {
            return Err(err(0, "non-minimal order field"));
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(err(0, "order exceeds the supported maximum"));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let groups = bits.div_ceil(6);
    if bytes.len() < pos + groups {
        return Err(err(bytes.len(), "truncated adjacency section"));
    }
    if bytes.len() > pos + groups {
        return Err(err(pos + groups, "trailing bytes after adjacency section"));
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + k / 6] - BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if bits % 6 != 0 {
        pos += groups - 1;
        let pad = 6 - bits % 6;
        if (bytes[pos] - BIAS) & ((1 << pad) - 1) != 0 {
            return Err(err(pos, "nonzero padding bits"));
        }
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}
