//! graph6 and plain edge-list encodings.
//!
//! graph6 follows the nauty format description: each byte carries six bits
//! plus an offset of 63, the vertex count comes first in the `N(n)` form, and
//! the upper triangle of the adjacency matrix is packed column by column
//! `(0,1),(0,2),(1,2),(0,3),...`.

use crate::error::{EdsError, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const OFFSET: u8 = 63;
const MAX_BYTE: u8 = 126;

fn g6_err(offset: usize, message: impl Into<String>) -> EdsError {
    EdsError::Graph6 { offset, message: message.into() }
}

/// Decodes one graph6 record. An optional `>>graph6<<` header and a trailing
/// line terminator are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let start = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let mut end = bytes.len();
    while end > start && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let data = &bytes[start..end];
    let at = |i: usize| start + i;

    if let Some(i) = data.iter().position(|&b| !(OFFSET..=MAX_BYTE).contains(&b)) {
        return Err(g6_err(at(i), format!("invalid byte 0x{:02x}", data[i])));
    }
    if data.is_empty() {
        return Err(g6_err(at(0), "missing vertex count"));
    }

    let (n, mut pos) = if data[0] != MAX_BYTE {
        ((data[0] - OFFSET) as usize, 1)
    } else if data.len() >= 2 && data[1] == MAX_BYTE {
        (read_big_endian(data, 2, 6).ok_or_else(|| g6_err(at(data.len()), "truncated vertex count"))?, 8)
    } else {
        (read_big_endian(data, 1, 3).ok_or_else(|| g6_err(at(data.len()), "truncated vertex count"))?, 4)
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    let byte_count = bit_count.div_ceil(6);
    let body = &data[pos..];
    if body.len() < byte_count {
        return Err(g6_err(at(data.len()), format!("truncated edge bits: expected {byte_count} bytes, found {}", body.len())));
    }
    if body.len() > byte_count {
        return Err(g6_err(at(pos + byte_count), "trailing data after edge bits"));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
            if k == bit_count {
                break 'outer;
            }
        }
    }
    if bit_count % 6 != 0 {
        let last = body[byte_count - 1] - OFFSET;
        let pad = 6 - bit_count % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(g6_err(at(pos + byte_count - 1), "nonzero padding bits"));
        }
    }
    pos += byte_count;
    debug_assert_eq!(pos, data.len());
    Graph::from_edges(n, edges).map_err(|e| g6_err(at(0), e.to_string()))
}

fn read_big_endian(data: &[u8], from: usize, count: usize) -> Option<usize> {
    let chunk = data.get(from..from + count)?;
    Some(chunk.iter().fold(0usize, |acc, &b| acc << 6 | (b - OFFSET) as usize))
}

/// Encodes a graph in canonical graph6 form (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(MAX_BYTE);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + OFFSET));
    } else {
        out.extend([MAX_BYTE, MAX_BYTE]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + OFFSET));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses `n` on the first line followed by one `u v` pair per nonempty line.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let err = |line: usize, message: String| EdsError::EdgeList { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (first_no, first) = lines.next().ok_or_else(|| err(1, "missing vertex count".into()))?;
    let n: usize = first.parse().map_err(|_| err(first_no, format!("invalid vertex count {first:?}")))?;

    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for (no, line) in lines {
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(no, format!("expected two vertex ids, got {line:?}")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| err(no, format!("invalid vertex id {s:?}")));
        let (u, v) = (parse(a)?, parse(b)?);
        if u >= n || v >= n {
            return Err(err(no, format!("vertex id out of range (n = {n})")));
        }
        if u == v {
            return Err(err(no, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(no, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}

/// Renders the edge-list form accepted by [`parse_edge_list`].
pub fn encode_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tiny_graph6_strings() {
        let g = parse_graph6("@").unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));
        assert_eq!(encode_graph6(&g), "@");

        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.n(), 3);
        assert_eq!(k3.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(encode_graph6(&k3), "Bw");

        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), k3);
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        assert_eq!(parse_graph6("B ").unwrap_err(), EdsError::Graph6 { offset: 1, message: "invalid byte 0x20".into() });
        assert!(matches!(parse_graph6("C"), Err(EdsError::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("Bww"), Err(EdsError::Graph6 { offset: 2, .. })));
        assert!(matches!(parse_graph6("B\x7f"), Err(EdsError::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6(""), Err(EdsError::Graph6 { .. })));
        // K_3 with a padding bit set
        assert!(matches!(parse_graph6("Bx"), Err(EdsError::Graph6 { .. })));
        assert!(matches!(parse_graph6("~?"), Err(EdsError::Graph6 { .. })));
    }

    #[test]
    fn long_form_vertex_count() {
        let g = Graph::from_edges(100, (0..99).map(|i| (i, i + 1))).unwrap();
        let s = encode_graph6(&g);
        assert!(s.starts_with("~?@c"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn edge_list_examples() {
        let k3 = parse_edge_list("3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(encode_graph6(&k3), "Bw");
        assert_eq!(parse_edge_list("2\n0 0").unwrap_err(), EdsError::EdgeList { line: 2, message: "self-loop at vertex 0".into() });
        assert!(matches!(parse_edge_list("4\n0 1\n0 1"), Err(EdsError::EdgeList { line: 3, .. })));
        assert!(matches!(parse_edge_list("4\n1 0\n0 1"), Err(EdsError::EdgeList { line: 3, .. })));
        assert!(matches!(parse_edge_list("3\n0 3"), Err(EdsError::EdgeList { line: 2, .. })));
        assert!(matches!(parse_edge_list("3\n0 1 2"), Err(EdsError::EdgeList { line: 2, .. })));
        assert!(matches!(parse_edge_list("x"), Err(EdsError::EdgeList { line: 1, .. })));
        assert!(matches!(parse_edge_list(""), Err(EdsError::EdgeList { line: 1, .. })));
        assert_eq!(parse_edge_list(&encode_edge_list(&k3)).unwrap(), k3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn graph6_round_trip(n in 0usize..=200, density in 0.0f64..1.0, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(density)).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let s = encode_graph6(&g);
            let back = parse_graph6(&s).unwrap();
            prop_assert!(back.check_invariants());
            prop_assert_eq!(encode_graph6(&back), s);
            prop_assert_eq!(back, g);
        }
    }
}
