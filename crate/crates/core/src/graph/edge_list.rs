use std::collections::{BTreeSet, HashSet};

use super::{Graph, GraphError, Vertex};

/// Result of reading an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListInput {
    pub graph: Graph,
    /// Edges that appeared more than once (reported once each, as written
    /// the second time).
    pub duplicates: Vec<(Vertex, Vertex)>,
    /// `original_id[v]` for every vertex of `graph`. Identity unless ids were
    /// compacted.
    pub original_id: Vec<Vertex>,
}

fn line_err(line: usize, reason: impl Into<String>) -> GraphError {
    GraphError::EdgeList {
        line,
        reason: reason.into(),
    }
}

/// Reads `u v` lines with an optional leading `n <count>` line. Blank lines
/// and `#` comments are skipped. Without a declared count, ids that leave
/// gaps are compacted to `0..k` in increasing order.
pub fn parse_edge_list(text: &str) -> Result<EdgeListInput, GraphError> {
    let mut declared: Option<usize> = None;
    let mut raw = Vec::new();
    let mut seen = HashSet::new();
    let mut duplicates = Vec::new();
    let mut first = true;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if first && tokens.first() == Some(&"n") {
            first = false;
            if tokens.len() != 2 {
                return Err(line_err(lineno, "expected `n <count>`"));
            }
            let n = tokens[1]
                .parse()
                .map_err(|_| line_err(lineno, format!("invalid vertex count {:?}", tokens[1])))?;
            declared = Some(n);
            continue;
        }
        first = false;
        if tokens.len() != 2 {
            return Err(line_err(lineno, format!("expected two ids, found {}", tokens.len())));
        }
        let parse = |t: &str| {
            t.parse::<Vertex>()
                .map_err(|_| line_err(lineno, format!("invalid vertex id {t:?}")))
        };
        let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
        if u == v {
            return Err(line_err(lineno, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            duplicates.push((u, v));
            continue;
        }
        raw.push((u, v));
    }

    match declared {
        Some(n) => {
            if let Some(&(u, v)) = raw.iter().find(|&&(u, v)| u.max(v) >= n) {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            Ok(EdgeListInput {
                graph: Graph::from_edges(n, raw)?,
                duplicates,
                original_id: (0..n).collect(),
            })
        }
        None => {
            let ids: BTreeSet<Vertex> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
            let original_id: Vec<Vertex> = ids.into_iter().collect();
            let compact = |x: Vertex| original_id.binary_search(&x).unwrap();
            let edges: Vec<_> = raw.iter().map(|&(u, v)| (compact(u), compact(v))).collect();
            Ok(EdgeListInput {
                graph: Graph::from_edges(original_id.len(), edges)?,
                duplicates,
                original_id,
            })
        }
    }
}

/// Writes `n <count>` followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}
