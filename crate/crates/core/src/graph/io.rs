//! Text and JSON graph formats.
//!
//! Edge lists start with a header line `n m` followed by `m` lines `u v`
//! (0-indexed). Blank lines and lines starting with `#` are ignored. The JSON
//! mirror is `{"n": 4, "edges": [[0, 1], ...]}`.

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, GraphResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers(line: usize, text: &str) -> GraphResult<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(line, format!("expected a non-negative integer, got {t:?}")))
        })
        .collect()
}

pub fn parse_edge_list(text: &str) -> GraphResult<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let [n, m] = numbers(hline, header)?[..] else {
        return Err(parse_err(hline, "header must be `n m`"));
    };
    let mut g = Graph::empty(n).map_err(|e| parse_err(hline, e.to_string()))?;
    let mut count = 0;
    for (lno, l) in lines {
        let [u, v] = numbers(lno, l)?[..] else {
            return Err(parse_err(lno, "edge line must be `u v`"));
        };
        add_edge(&mut g, u, v).map_err(|e| parse_err(lno, e.to_string()))?;
        count += 1;
    }
    if count != m {
        return Err(parse_err(hline, format!("header announces {m} edges, found {count}")));
    }
    Ok(g)
}

fn add_edge(g: &mut Graph, u: usize, v: usize) -> GraphResult<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    if g.has_edge(u, v) {
        return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
    }
    g.set_edge(u, v, true);
    Ok(())
}

pub fn parse_graph_json(text: &str) -> GraphResult<Graph> {
    let gj: GraphJson =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    Graph::try_from(&gj)
}

impl TryFrom<&GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(gj: &GraphJson) -> GraphResult<Graph> {
        let edges: Vec<_> = gj.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(gj.n, &edges)
    }
}

/// Parses either format: JSON when the first non-blank character is `{`.
pub fn parse_graph(text: &str) -> GraphResult<Graph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_edge_list(text)
    }
}

impl Graph {
    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}
