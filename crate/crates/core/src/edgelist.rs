//! Plain-text edge lists.
//!
//! ```text
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```
//!
//! ASCII, one record per line, newline-terminated. Duplicate pairs, self-loops,
//! `u > v` and a count that disagrees with `m` are parse errors.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));

    let (header_no, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    let [n, m] = parse_pair(header_no, header)?;

    let mut g = Graph::empty(n);
    let mut seen = 0usize;
    for (line, raw) in lines {
        if raw.trim().is_empty() {
            continue;
        }
        let [u, v] = parse_pair(line, raw)?;
        let err = |message: String| Error::Parse { line, message };
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        if u > v {
            return Err(err(format!("edge \"{u} {v}\" must be written with u < v")));
        }
        if v >= n {
            return Err(err(format!("vertex {v} out of range for n = {n}")));
        }
        if !g.insert_edge(u, v) {
            return Err(err(format!("duplicate edge {u} {v}")));
        }
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: header_no,
            message: format!("header declares {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

fn parse_pair(line: usize, raw: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = raw.split_ascii_whitespace().collect();
    let bad = || Error::Parse {
        line,
        message: format!("expected two integers, got {raw:?}"),
    };
    if fields.len() != 2 {
        return Err(bad());
    }
    let a = fields[0].parse().map_err(|_| bad())?;
    let b = fields[1].parse().map_err(|_| bad())?;
    Ok([a, b])
}

/// Canonical serialization: edges in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c5() {
        let g = parse_edge_list("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
        assert_eq!(g, Graph::cycle(5).unwrap());
        assert_eq!(write_edge_list(&g), "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    }

    #[test]
    fn rejects_malformed_input() {
        let line_of = |text: &str| match parse_edge_list(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("3\n"), 1);
        assert_eq!(line_of("3 2\n0 1\n0 1\n"), 3);
        assert_eq!(line_of("3 1\n2 2\n"), 2);
        assert_eq!(line_of("3 1\n2 1\n"), 2);
        assert_eq!(line_of("3 1\n0 3\n"), 2);
        assert_eq!(line_of("3 2\n0 1\n"), 1);
        assert_eq!(line_of("3 1\n0 x\n"), 2);
    }

    #[test]
    fn edgeless_round_trip() {
        let g = Graph::empty(6);
        assert_eq!(write_edge_list(&g), "6 0\n");
        assert_eq!(parse_edge_list("6 0\n").unwrap(), g);
    }
}
