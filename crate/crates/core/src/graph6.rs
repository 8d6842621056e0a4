//! graph6 encoding for graphs of order at most 62.
//!
//! A line is the size byte `63 + n` followed by the upper triangle of the
//! adjacency matrix, read column by column ((0,1), (0,2), (1,2), (0,3), ...),
//! packed six bits per byte (most significant first) and offset by 63. The
//! final byte is zero-padded.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order representable with the single-byte size field.
pub const MAX_GRAPH6_ORDER: usize = 62;

const HEADER: &str = ">>graph6<<";

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let Some((&first, body)) = bytes.split_first() else {
        return Err(Error::Graph6("empty line".into()));
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("byte {b:#04x} at offset {i} outside 63..=126")));
        }
    }
    let n = (first - 63) as usize;
    if n > MAX_GRAPH6_ORDER {
        return Err(Error::Graph6(format!(
            "order {n} needs a multi-byte size field (max {MAX_GRAPH6_ORDER})"
        )));
    }
    let want = body_len(n);
    if body.len() != want {
        return Err(Error::Graph6(format!(
            "order {n} needs {want} body bytes, found {}",
            body.len()
        )));
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            bit += 1;
        }
    }
    if bit % 6 != 0 {
        let last = body[body.len() - 1] - 63;
        let pad = 6 - bit % 6;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

/// Canonical graph6 line for `g`, without header or newline.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_GRAPH6_ORDER {
        return Err(Error::Graph6(format!(
            "order {n} exceeds graph6 limit {MAX_GRAPH6_ORDER}"
        )));
    }
    let mut body = vec![0u8; body_len(n)];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                body[bit / 6] |= 1 << (5 - bit % 6);
            }
            bit += 1;
        }
    }
    let mut out = String::with_capacity(body.len() + 1);
    out.push((63 + n as u8) as char);
    out.extend(body.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Expected strings were produced by networkx's graph6 writer.
    #[test]
    fn reference_encodings() {
        assert_eq!(to_graph6(&Graph::complete(3).unwrap()).unwrap(), "Bw");
        assert_eq!(to_graph6(&Graph::path(3).unwrap()).unwrap(), "Bg");
        assert_eq!(to_graph6(&Graph::complete(4).unwrap()).unwrap(), "C~");
        assert_eq!(to_graph6(&Graph::empty(2).unwrap()).unwrap(), "A?");
        assert_eq!(to_graph6(&Graph::cycle(6).unwrap()).unwrap(), "EhEG");
        assert_eq!(to_graph6(&Graph::complete(7).unwrap()).unwrap(), "F~~~w");
        assert_eq!(to_graph6(&Graph::path(7).unwrap()).unwrap(), "FhCGG");
    }

    #[test]
    fn parse_reference_lines() {
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        let p3 = parse_graph6("Bg").unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4).unwrap());
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(parse_graph6("@").unwrap().order(), 1);
        assert_eq!(parse_graph6("?").unwrap().order(), 0);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("Bw \n").is_ok()); // trailing whitespace trimmed
        assert!(matches!(parse_graph6("B"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("B\u{7f}"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("Bww"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("C"), Err(Error::Graph6(_))));
        // K_3 body is 3 bits followed by 3 padding bits; 'x' sets the last one.
        assert!(matches!(parse_graph6("Bx"), Err(Error::Graph6(_))));
        // size byte 126 introduces the multi-byte form
        assert!(matches!(parse_graph6("~??~"), Err(Error::Graph6(_))));
    }

    #[test]
    fn order_limit() {
        let g = Graph::empty(63).unwrap();
        assert!(to_graph6(&g).is_err());
        let g = Graph::complete(62).unwrap();
        let line = to_graph6(&g).unwrap();
        assert_eq!(parse_graph6(&line).unwrap(), g);
    }
}
