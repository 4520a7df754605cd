//! Simple undirected graphs over dense integer vertex ids.
//!
//! Every graph in this crate is simple (no self-loops, no parallel edges)
//! with vertices `0..n`. Adjacency lists are kept sorted so membership
//! queries are binary searches and iteration order is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;

use thiserror::Error;

/// An immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n(), self.m(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge iterator. Self-loops are
    /// ignored and duplicate edges (in either orientation) are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut pairs: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        for &(u, v) in &pairs {
            assert!((v as usize) < n, "edge endpoint {} out of range for n={}", v, n);
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Graph { adj, m: pairs.len() }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as u32;
            nbrs.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.n() as u32
    }

    /// `deg(v)` for every vertex; the sum is exactly `2m`.
    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(|nbrs| nbrs.len()).collect()
    }

    /// Connected components as sorted vertex-id lists, ordered by smallest
    /// member id.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.clear();
            queue.push(s as u32);
            let mut comp = vec![s as u32];
            while let Some(u) = queue.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Induced subgraph on `vertices` (must be sorted and deduplicated).
    /// New ids follow the order of `vertices`, so compaction preserves the
    /// relative order of original ids.
    pub fn induced(&self, vertices: &[u32]) -> Graph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut index = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, i as u32);
        }
        let edges = vertices.iter().flat_map(|&u| {
            let iu = index[&u];
            self.neighbors(u)
                .iter()
                .filter_map(|w| index.get(w).map(|&iw| (iu, iw)))
                .filter(move |&(a, b)| a < b)
                .collect::<Vec<_>>()
        });
        Graph::from_edges(vertices.len(), edges)
    }

    /// Serializes as a SNAP-style edge list: sorted `u v` lines with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u, v));
        }
        out
    }
}

/// A subgraph together with the original ids of its vertices: new id `i`
/// corresponds to `vertices[i]`.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertices: Vec<u32>,
}

impl InducedSubgraph {
    pub fn of(g: &Graph, vertices: Vec<u32>) -> InducedSubgraph {
        let graph = g.induced(&vertices);
        InducedSubgraph { graph, vertices }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed token {token:?}")]
    MalformedToken { line: usize, token: String },
    #[error("line {line}: expected two vertex ids, found {found}")]
    WrongArity { line: usize, found: usize },
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
}

/// Counters for input cleaning during parsing.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct ParseStats {
    pub edge_lines: usize,
    pub comment_lines: usize,
    pub self_loops_dropped: usize,
    pub duplicates_merged: usize,
}

impl ParseStats {
    /// Lines that did not contribute an edge to the graph.
    pub fn dropped(&self) -> usize {
        self.self_loops_dropped + self.duplicates_merged
    }
}

/// Parses a SNAP-style whitespace-separated edge list. Lines starting with
/// `#` are comments. Self-loops are dropped, duplicate edges (including
/// reversed duplicates) merged, and vertex ids compacted to `0..n` in
/// ascending order of the original ids.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(Graph, ParseStats), ParseError> {
    let mut stats = ParseStats::default();
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            stats.comment_lines += 1;
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::WrongArity { line: lineno, found: tokens.len() });
        }
        let mut ids = [0u64; 2];
        for (slot, tok) in ids.iter_mut().zip(&tokens) {
            *slot = tok.parse::<u64>().map_err(|_| ParseError::MalformedToken {
                line: lineno,
                token: tok.to_string(),
            })?;
        }
        stats.edge_lines += 1;
        if ids[0] == ids[1] {
            stats.self_loops_dropped += 1;
            continue;
        }
        raw_edges.push((ids[0].min(ids[1]), ids[0].max(ids[1])));
    }

    let before = raw_edges.len();
    raw_edges.sort_unstable();
    raw_edges.dedup();
    stats.duplicates_merged = before - raw_edges.len();

    let mut index: BTreeMap<u64, u32> = BTreeMap::new();
    for &(u, v) in &raw_edges {
        index.entry(u).or_insert(0);
        index.entry(v).or_insert(0);
    }
    for (next, (_, slot)) in index.iter_mut().enumerate() {
        *slot = next as u32;
    }
    let n = index.len();
    let graph = Graph::from_edges(n, raw_edges.iter().map(|&(u, v)| (index[&u], index[&v])));
    Ok((graph, stats))
}

/// Induced subgraph on the largest connected component, ids recompacted.
/// Ties are broken toward the component containing the smallest original
/// vertex id. An empty graph maps to an empty graph.
pub fn largest_connected_component(g: &Graph) -> Graph {
    let comps = g.components();
    match comps.into_iter().max_by(|a, b| {
        a.len().cmp(&b.len()).then(b[0].cmp(&a[0]))
    }) {
        Some(comp) => g.induced(&comp),
        None => Graph::from_edges(0, std::iter::empty()),
    }
}
