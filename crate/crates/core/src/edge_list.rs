//! Plain-text edge lists: a header line `n m`, then `m` lines `u v` with
//! 0-based labels. Blank lines and lines starting with `#` are skipped.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::EdgeList {
        line: 0,
        msg: "missing header \"n m\"".into(),
    })?;
    let [n, m] = parse_pair(hline, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let [u, v] = parse_pair(line, text)?;
        if u >= n || v >= n {
            return Err(Error::EdgeList {
                line,
                msg: format!("endpoint out of range for n = {n}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::EdgeList {
            line: hline,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::EdgeList {
            line,
            msg: format!("expected two fields, found {}", fields.len()),
        });
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| Error::EdgeList {
            line,
            msg: format!("not a non-negative integer: {f:?}"),
        })?;
    }
    Ok(out)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# path\n5 4\n0 1\n1 2\n\n# middle\n2 3\n3\t4\n";
        assert_eq!(parse_edge_list(text).unwrap(), Graph::path(5).unwrap());
    }

    #[test]
    fn round_trip() {
        let g = Graph::cycle(6).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn errors() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
        assert!(parse_edge_list("3 1\n1 1\n").is_err());
        assert!(parse_edge_list("3 1\n-1 2\n").is_err());
        assert!(parse_edge_list("3\n").is_err());
    }
}
