//! Rooted trees, both materialised and lazily indexed.

use std::ops::Range;

use crate::graph::{parse, ColouredHost, Colouring, Graph};

use super::ConstructionError;

/// Default cap on materialised tree size.
pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

/// A tree with a distinguished root. Children are kept in increasing vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl RootedTree {
    pub fn new(graph: Graph, root: usize) -> Result<Self, ConstructionError> {
        if !graph.is_tree() || root >= graph.n() {
            return Err(ConstructionError::NotATree);
        }
        let n = graph.n();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = vec![root];
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            for w in graph.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    children[u].push(w);
                    queue.push(w);
                }
            }
        }
        Ok(RootedTree {
            graph,
            root,
            parent,
            children,
            depth,
        })
    }

    /// `T(d, h)` numbered in level order with root `0`.
    pub fn complete(d: usize, h: usize, vertex_budget: usize) -> Result<Self, ConstructionError> {
        let size = complete_tree_size(d, h).filter(|&n| n <= vertex_budget);
        let size = size.ok_or(ConstructionError::Budget {
            what: format!("T({d},{h})"),
            budget: vertex_budget,
        })?;
        let g = parse::complete_tree(d, h).ok_or(ConstructionError::Budget {
            what: format!("T({d},{h})"),
            budget: size,
        })?;
        RootedTree::new(g, 0)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Vertices in breadth-first order from the root.
    pub fn level_order(&self) -> Vec<usize> {
        let mut order = vec![self.root];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            order.extend(self.children[u].iter().copied());
        }
        order
    }

    /// Edge id of the edge from `v` to its parent.
    pub fn parent_edge(&self, v: usize) -> Option<usize> {
        self.parent[v].map(|p| self.graph.edge_id(p, v).expect("tree edge"))
    }
}

/// `1 + d + ... + d^h`, or `None` on overflow.
pub fn complete_tree_size(d: usize, h: usize) -> Option<usize> {
    if d == 0 {
        return None;
    }
    let mut n: usize = 1;
    let mut level: usize = 1;
    for _ in 0..h {
        level = level.checked_mul(d)?;
        n = n.checked_add(level)?;
    }
    Some(n)
}

/// A level-order tree given by per-depth child counts; vertices are
/// addressed arithmetically and never stored.
///
/// Vertices at depth `i` form the id range `level(i)`; the children of the
/// `j`-th vertex at depth `i` are consecutive ids at depth `i + 1`. Parent ids
/// are non-decreasing in child id, so when materialised the edge to the parent
/// of `v` has edge id `v - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazyTree {
    arity: Vec<usize>,
    offsets: Vec<usize>,
}

impl LazyTree {
    /// `arity[i]` is the number of children of every vertex at depth `i`.
    pub fn new(arity: Vec<usize>) -> Result<Self, ConstructionError> {
        let mut offsets = vec![0usize, 1];
        let mut level: usize = 1;
        for (i, &a) in arity.iter().enumerate() {
            let overflow = || ConstructionError::Budget {
                what: format!("lazy tree level {}", i + 1),
                budget: usize::MAX,
            };
            level = level.checked_mul(a).ok_or_else(overflow)?;
            let next = offsets[i + 1].checked_add(level).ok_or_else(overflow)?;
            offsets.push(next);
        }
        Ok(LazyTree { arity, offsets })
    }

    pub fn complete(d: usize, h: usize) -> Result<Self, ConstructionError> {
        if d == 0 {
            return Err(ConstructionError::Budget {
                what: format!("T({d},{h})"),
                budget: 0,
            });
        }
        LazyTree::new(vec![d; h])
    }

    pub fn n(&self) -> usize {
        *self.offsets.last().expect("at least the root level")
    }

    pub fn height(&self) -> usize {
        self.arity.len()
    }

    pub fn arity_at(&self, depth: usize) -> usize {
        self.arity.get(depth).copied().unwrap_or(0)
    }

    pub fn level(&self, depth: usize) -> Range<usize> {
        self.offsets[depth]..self.offsets[depth + 1]
    }

    pub fn depth(&self, v: usize) -> usize {
        debug_assert!(v < self.n());
        self.offsets.partition_point(|&o| o <= v) - 1
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        if v == 0 || v >= self.n() {
            return None;
        }
        let d = self.depth(v);
        let j = (v - self.offsets[d]) / self.arity[d - 1];
        Some(self.offsets[d - 1] + j)
    }

    pub fn children(&self, v: usize) -> Range<usize> {
        let d = self.depth(v);
        if d >= self.height() {
            return v..v;
        }
        let a = self.arity[d];
        let start = self.offsets[d + 1] + (v - self.offsets[d]) * a;
        start..start + a
    }

    pub fn leaf_count(&self) -> usize {
        self.level(self.height()).len()
    }

    pub fn materialize(&self, vertex_budget: usize) -> Result<RootedTree, ConstructionError> {
        if self.n() > vertex_budget {
            return Err(ConstructionError::Budget {
                what: format!("tree with {} vertices", self.n()),
                budget: vertex_budget,
            });
        }
        let g = Graph::new(self.n(), (1..self.n()).map(|v| (self.parent(v).expect("non-root"), v))).expect("tree is simple");
        RootedTree::new(g, 0)
    }
}

/// A lazy tree whose edge to the parent of `v` has colour `colour(v)`.
pub struct LazyColouredTree<'a> {
    pub tree: &'a LazyTree,
    pub colour: &'a dyn Fn(usize) -> usize,
}

impl ColouredHost for LazyColouredTree<'_> {
    fn edge_colour(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.tree.n() || v >= self.tree.n() {
            return None;
        }
        if self.tree.parent(v) == Some(u) {
            Some((self.colour)(v))
        } else if self.tree.parent(u) == Some(v) {
            Some((self.colour)(u))
        } else {
            None
        }
    }
}

/// Reads a colouring of a materialised level-order tree as a child-keyed function.
pub fn child_keyed(chi: &Colouring) -> impl Fn(usize) -> usize + '_ {
    move |v| chi.colour(v - 1)
}

/// Colour-degree of `v` over all its incident edges in a lazy tree, stopping
/// early once `cap` distinct colours are seen.
pub(crate) fn lazy_colour_degree(t: &LazyTree, colour: &dyn Fn(usize) -> usize, v: usize, cap: usize) -> usize {
    let mut seen: Vec<usize> = Vec::new();
    if v != 0 {
        seen.push(colour(v));
    }
    for c in t.children(v) {
        let col = colour(c);
        if !seen.contains(&col) {
            seen.push(col);
            if seen.len() >= cap {
                break;
            }
        }
    }
    seen.len()
}
