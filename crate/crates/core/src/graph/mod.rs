//! Finite simple graphs, edge colourings and embeddings.
//!
//! Every other module builds on the types here. Vertices are `0..n`, edges
//! are stored as `(u, v)` with `u < v` in lexicographic order, and that order
//! is the fixed edge order used by colourings and the colouring enumerator.

mod canon;
mod matcher;
pub(crate) mod parse;

pub use canon::{enumerate_trees, forest_code, free_tree_code, rooted_tree_code};
pub use matcher::{
    colour_degree, find_copy, find_monochromatic_copy, find_rainbow_copy, verify_monochromatic, verify_rainbow, ColouredGraph, ColouredHost, CopyKind,
};
pub use parse::{parse_edge_list, parse_graph, ParseError};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0} {1} has an endpoint outside 0..{2}")]
    OutOfRange(usize, usize, usize),
}

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Sorted `(neighbour, edge id)` pairs per vertex.
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u, v, n));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// Incident `(neighbour, edge id)` pairs, sorted by neighbour.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let a = &self.adj[u];
        a.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| a[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbours(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edges.len() + 1 == self.n
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|a| a.is_empty()).count()
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let pos: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if let (Some(&a), Some(&b)) = (pos.get(&u), pos.get(&v)) {
                edges.push((a, b));
            }
        }
        Graph::new(vertices.len(), edges).expect("induced subgraph is simple")
    }

    /// The graph with isolated vertices removed, relabelled in vertex order.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::new(self.n + other.n, edges).expect("union of simple graphs is simple")
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().copied().chain(std::iter::once((u, v))))
    }

    /// Plain edge-list text: `n` on the first line, then one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; {:?})", self.n, self.edges)
    }
}

impl fmt::Display for Graph {
    /// Inline edge-list form accepted by [`parse_graph`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)?;
        for &(u, v) in &self.edges {
            write!(f, "; {u} {v}")?;
        }
        Ok(())
    }
}

/// An assignment of colour ids to the edges of a host graph, indexed by edge id.
///
/// Colour ids are arbitrary; [`Colouring::canonical`] renumbers them by first
/// appearance along the edge order, which is the unique representative of the
/// induced partition of the edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Colouring {
    colours: Vec<usize>,
}

impl Colouring {
    pub fn new(colours: Vec<usize>) -> Self {
        Colouring { colours }
    }

    pub fn uniform(edges: usize) -> Self {
        Colouring { colours: vec![0; edges] }
    }

    pub fn rainbow(edges: usize) -> Self {
        Colouring { colours: (0..edges).collect() }
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colour(&self, edge: usize) -> usize {
        self.colours[edge]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colours
    }

    pub fn num_colours(&self) -> usize {
        let mut c = self.colours.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Restricted-growth renumbering: colour ids `0, 1, ...` in order of first appearance.
    pub fn canonical(&self) -> Colouring {
        let mut map = BTreeMap::new();
        let colours = self
            .colours
            .iter()
            .map(|&c| {
                let next = map.len();
                *map.entry(c).or_insert(next)
            })
            .collect();
        Colouring { colours }
    }

    pub fn is_canonical(&self) -> bool {
        let mut next = 0;
        for &c in &self.colours {
            if c > next {
                return false;
            }
            if c == next {
                next += 1;
            }
        }
        true
    }

    /// Edge ids grouped by colour, keyed by colour id.
    pub fn classes(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (e, &c) in self.colours.iter().enumerate() {
            m.entry(c).or_default().push(e);
        }
        m
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.colours.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A vertex map from a pattern graph into a host, indexed by pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }

    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_injective(&self) -> bool {
        let mut m = self.map.clone();
        m.sort_unstable();
        m.windows(2).all(|w| w[0] != w[1])
    }
}
