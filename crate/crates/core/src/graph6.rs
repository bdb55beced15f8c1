//! graph6 encoding (short form, n ≤ 62) as produced by nauty's `geng`.
//!
//! Header byte is `63 + n`, followed by the upper triangle of the adjacency
//! matrix in column order (for j in 1..n, for i in 0..j) packed six bits per
//! byte, most significant bit first, zero padded.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_VERTICES: usize = 62;

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(line: &str) -> Result<Graph> {
    let trimmed = line.trim_end_matches(['\n', '\r']);
    let (bytes, base) = match trimmed.strip_prefix(">>graph6<<") {
        Some(rest) => (rest.as_bytes(), 10),
        None => (trimmed.as_bytes(), 0),
    };
    let err = |offset: usize, message: String| Error::Graph6 { offset: base + offset, message };

    let &first = bytes.first().ok_or_else(|| err(0, "empty line".into()))?;
    if !(63..=126).contains(&first) {
        return Err(err(0, format!("byte {first} outside 63..=126")));
    }
    if first == 126 {
        return Err(err(0, format!("long-form header (n > {MAX_VERTICES}) is not supported")));
    }
    let n = (first - 63) as usize;
    let body = &bytes[1..];
    let want = body_len(n);
    if body.len() != want {
        return Err(err(
            1 + body.len().min(want),
            format!("expected {want} adjacency bytes for n = {n}, found {}", body.len()),
        ));
    }
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(1 + pos, format!("byte {} outside 63..=126", body[pos])));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = body[k / 6] - 63;
        let pad_mask = (1u8 << (6 - k % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(err(1 + k / 6, "nonzero padding bits".into()));
        }
    }
    Graph::new(n, edges)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(n));
    }
    let mut bits = vec![0u8; body_len(n)];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                bits[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + bits.len());
    out.push((63 + n as u8) as char);
    out.extend(bits.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference strings produced by networkx.to_graph6_bytes and nauty geng.
    #[test]
    fn reference_encodings() {
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.vertex_count(), k2.edge_count()), (2, 1));
        let single = parse_graph6("@").unwrap();
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
        assert_eq!(to_graph6(&Graph::complete(2)).unwrap(), "A_");
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(to_graph6(&Graph::path(4)).unwrap(), "Ch");
        assert_eq!(to_graph6(&Graph::cycle(5)).unwrap(), "Dhc");
        assert_eq!(parse_graph6("Dhc").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn header_option_and_newline() {
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), Graph::complete(2));
    }

    #[test]
    fn errors_name_offsets() {
        assert_eq!(
            parse_graph6("A").unwrap_err(),
            Error::Graph6 { offset: 1, message: "expected 1 adjacency bytes for n = 2, found 0".into() }
        );
        assert!(matches!(parse_graph6("A_?"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(parse_graph6("B\x20"), Err(Error::Graph6 { offset: 1, .. })));
        // n = 2 uses one bit; 'A' + 1 sets a padding bit.
        assert!(matches!(parse_graph6("A`"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("~?@"), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
    }

    #[test]
    fn rejects_large_graphs() {
        assert_eq!(to_graph6(&Graph::empty(63)), Err(Error::UnsupportedSize(63)));
        assert!(to_graph6(&Graph::empty(62)).unwrap().starts_with('}'));
    }
}
