//! Simple connected undirected graphs and the edge-list text format.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Default vertex-count limit for graphs. Vertex sets are single words, and
/// exhaustive searches over subsets stop being practical well before 32.
pub const DEFAULT_VERTEX_CAP: usize = 24;

/// An immutable simple connected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges, out-of-range
    /// endpoints and disconnected vertex sets.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_cap(n, edges, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        cap: usize,
    ) -> Result<Self> {
        let cap = cap.min(crate::vertex_set::MAX_SET_VERTICES);
        if n == 0 {
            return Err(Error::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        if n > cap {
            return Err(Error::TooLarge { n, cap });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adj[u].contains(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        let g = Graph {
            n,
            adj,
            edges: list,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    fn is_connected(&self) -> bool {
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen.len() == self.n
    }

    /// Parses the edge-list format: first non-comment line is the vertex
    /// count, then one `u v` pair per line. `#` comments and blank lines are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_cap(text, DEFAULT_VERTEX_CAP)
    }

    pub fn parse_with_cap(text: &str, cap: usize) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let bad = |message: &str| Error::Parse {
                line: lineno,
                message: format!("{message}: {line:?}"),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match n {
                None => {
                    if fields.len() != 1 {
                        return Err(bad("expected vertex count"));
                    }
                    n = Some(
                        fields[0]
                            .parse::<usize>()
                            .map_err(|_| bad("bad vertex count"))?,
                    );
                }
                Some(_) => {
                    if fields.len() != 2 {
                        return Err(bad("expected two vertex indices"));
                    }
                    let u = fields[0]
                        .parse::<usize>()
                        .map_err(|_| bad("bad vertex index"))?;
                    let v = fields[1]
                        .parse::<usize>()
                        .map_err(|_| bad("bad vertex index"))?;
                    edges.push((u, v));
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "missing vertex count".into(),
        })?;
        Self::with_cap(n, edges, cap)
    }

    /// Emits the edge-list format with edges in sorted order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        Self::with_cap(
            self.n,
            self.edges.iter().map(|&(u, v)| (perm[u], perm[v])),
            crate::vertex_set::MAX_SET_VERTICES,
        )
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}
