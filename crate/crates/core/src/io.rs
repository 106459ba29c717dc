//! Plain-text edge lists: one `u v` pair per line, `#` comments, blank lines
//! ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexId};

/// Reads edges in file order. Self-loops and malformed lines are reported with
/// their 1-based line number.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = || -> Result<VertexId> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two vertex ids".into(),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex id {tok:?}"),
            })
        };
        let (a, b) = (next_id()?, next_id()?);
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("unexpected trailing token {extra:?}"),
            });
        }
        let edge = Edge::new(a, b).map_err(|_| Error::Parse {
            line: lineno,
            message: format!("self-loop on vertex {a}"),
        })?;
        edges.push(edge);
    }
    Ok(edges)
}

pub fn read_edge_list_path<P: AsRef<Path>>(path: P) -> Result<Vec<Edge>> {
    read_edge_list(BufReader::new(File::open(path)?))
}

pub fn write_edge_list<W: Write, I: IntoIterator<Item = Edge>>(mut w: W, edges: I) -> Result<()> {
    for e in edges {
        writeln!(w, "{} {}", e.u(), e.v())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_edge_list_path<P: AsRef<Path>, I: IntoIterator<Item = Edge>>(
    path: P,
    edges: I,
) -> Result<()> {
    write_edge_list(BufWriter::new(File::create(path)?), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blanks() {
        let text = "# header\n1 2\n\n  3\t4  \n# trailing\n";
        let edges = read_edge_list(text.as_bytes()).unwrap();
        assert_eq!(edges, vec![Edge::new(1, 2).unwrap(), Edge::new(3, 4).unwrap()]);
    }

    #[test]
    fn self_loop_reports_line() {
        let err = read_edge_list("1 2\n5 5\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn malformed_lines() {
        for bad in ["1\n", "1 x\n", "1 2 3\n", "-1 2\n"] {
            assert!(matches!(
                read_edge_list(bad.as_bytes()),
                Err(Error::Parse { line: 1, .. })
            ));
        }
    }

    #[test]
    fn write_then_read() {
        let edges = vec![Edge::new(9, 3).unwrap(), Edge::new(1, 2).unwrap()];
        let mut buf = Vec::new();
        write_edge_list(&mut buf, edges.clone()).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "3 9\n1 2\n");
        assert_eq!(read_edge_list(buf.as_slice()).unwrap(), edges);
    }
}
