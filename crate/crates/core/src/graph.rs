//! Simple undirected graphs: point graphs of incidence structures and Cayley graphs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::incidence::IncidenceStructure;

pub const GRAPH_SCHEMA: &str = "finrep.graph/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds from an edge list; loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for v in &mut adj {
            v.sort_unstable();
            v.dedup();
        }
        Graph { adj }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, ns)| ns.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    /// `{"schema", "kind", "meta", "vertices", "edges"}` with edges as index pairs `a < b`.
    pub fn to_json(&self, kind: &str, meta: &std::collections::BTreeMap<String, String>) -> serde_json::Value {
        serde_json::json!({
            "schema": GRAPH_SCHEMA,
            "kind": kind,
            "meta": meta,
            "vertices": self.num_vertices(),
            "edges": self.edges().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }

    pub fn to_dimacs(&self, comment: &str) -> String {
        let mut out = String::new();
        writeln!(out, "c {comment}").unwrap();
        writeln!(out, "p edge {} {}", self.num_vertices(), self.num_edges()).unwrap();
        for (a, b) in self.edges() {
            writeln!(out, "e {} {}", a + 1, b + 1).unwrap();
        }
        out
    }
}

/// Collinearity graph: vertices are points, edges join distinct points on a common line.
pub fn point_graph(g: &IncidenceStructure) -> Graph {
    let edges = (0..g.num_lines()).flat_map(|l| {
        let pts = g.line_points(l);
        pts.iter().enumerate().flat_map(move |(i, &a)| pts[i + 1..].iter().map(move |&b| (a, b)))
    });
    Graph::from_edges(g.num_points(), edges)
}
