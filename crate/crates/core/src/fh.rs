//! Descendant colourings, the path-product parameter `f(H)` of a tree, and
//! rainbow binary trees inside fast-branching trees.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::constructions::{ConstructionError, LazyColouredTree, LazyTree, RootedTree};
use crate::graph::{parse_graph, rooted_tree_code, verify_monochromatic, verify_rainbow, Colouring, Embedding, Graph};

/// Default largest tree handled by the exact search.
pub const DEFAULT_F_EDGE_BUDGET: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FError {
    #[error("f(H) is defined for trees only")]
    NotATree,
    #[error("tree has {edges} edges, above the exact budget {budget}; best upper bound {best_bound}")]
    Budget { edges: usize, budget: usize, best_bound: u128 },
}

/// `D_T(v)`: the number of descendants of `v`, itself included.
pub fn descendant_counts(t: &RootedTree) -> Vec<usize> {
    let mut d = vec![1; t.n()];
    for &v in t.level_order().iter().rev() {
        if let Some(p) = t.parent(v) {
            d[p] += d[v];
        }
    }
    d
}

/// Child edges of each vertex coloured `1..k` by decreasing descendant count,
/// ties by least index. Indexed by edge id of `t.graph()`.
pub fn descendant_colouring(t: &RootedTree) -> Colouring {
    let d = descendant_counts(t);
    let mut colours = vec![0; t.graph().edge_count()];
    for u in 0..t.n() {
        let mut kids = t.children(u).to_vec();
        kids.sort_by_key(|&v| (std::cmp::Reverse(d[v]), v));
        for (i, v) in kids.into_iter().enumerate() {
            colours[t.parent_edge(v).unwrap()] = i + 1;
        }
    }
    Colouring::new(colours)
}

/// Descendant colouring of a lazy level-order tree, where siblings have equal
/// descendant counts: the `i`-th child edge gets colour `i + 1`.
pub fn lazy_descendant_colour(t: &LazyTree) -> impl Fn(usize) -> usize + '_ {
    move |v| v - t.children(t.parent(v).expect("non-root")).start + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FValue {
    pub value: u128,
    pub root: usize,
    /// A bijection from edge ids to `1..=e(H)`.
    pub labels: Vec<usize>,
}

/// Largest product of labels along a path from `root` to a leaf (paths with
/// at least one edge only).
pub fn max_path_product(h: &Graph, root: usize, labels: &[usize]) -> u128 {
    let t = RootedTree::new(h.clone(), root).expect("tree");
    let mut prod = vec![1u128; h.n()];
    let mut best = 1;
    for v in t.level_order() {
        if let Some(p) = t.parent(v) {
            prod[v] = prod[p] * labels[t.parent_edge(v).unwrap()] as u128;
            if t.children(v).is_empty() {
                best = best.max(prod[v]);
            }
        }
    }
    best
}

/// Roots up to rooted isomorphism, least index per class.
fn root_orbits(h: &Graph) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    (0..h.n()).filter(|&r| seen.insert(rooted_tree_code(h, r))).collect()
}

struct Bnb<'a> {
    t: &'a RootedTree,
    /// Non-root vertices in level order; the edge to position `i` is labelled at step `i`.
    order: Vec<usize>,
    prod: Vec<u128>,
    used: Vec<bool>,
    labels: Vec<usize>,
    incumbent: u128,
    best: Option<Vec<usize>>,
}

impl Bnb<'_> {
    fn run(&mut self, i: usize, partial: u128) {
        let m = self.order.len();
        if i == m {
            if partial < self.incumbent {
                self.incumbent = partial;
                self.best = Some(self.labels.clone());
            }
            return;
        }
        // the largest unused label still has to go somewhere
        let top = (1..=m).rev().find(|&l| !self.used[l]).unwrap() as u128;
        if partial.max(top) >= self.incumbent {
            return;
        }
        let v = self.order[i];
        let base = self.prod[self.t.parent(v).unwrap()];
        for l in 1..=m {
            if self.used[l] {
                continue;
            }
            let p = base * l as u128;
            if p >= self.incumbent {
                break;
            }
            self.used[l] = true;
            self.prod[v] = p;
            self.labels[self.t.parent_edge(v).unwrap()] = l;
            self.run(i + 1, partial.max(p));
            self.used[l] = false;
        }
    }
}

/// Labels by increasing subtree size, smallest label on the largest subtree.
fn greedy_labels(t: &RootedTree) -> Vec<usize> {
    let d = descendant_counts(t);
    let mut verts: Vec<usize> = (0..t.n()).filter(|&v| v != t.root()).collect();
    verts.sort_by_key(|&v| (std::cmp::Reverse(d[v]), v));
    let mut labels = vec![0; t.graph().edge_count()];
    for (i, v) in verts.into_iter().enumerate() {
        labels[t.parent_edge(v).unwrap()] = i + 1;
    }
    labels
}

fn search(h: &Graph, root: usize, incumbent: u128) -> Option<(u128, Vec<usize>)> {
    let t = RootedTree::new(h.clone(), root).expect("tree");
    let order: Vec<usize> = t.level_order().into_iter().skip(1).collect();
    let m = order.len();
    let mut b = Bnb {
        t: &t,
        order,
        prod: vec![1; h.n()],
        used: vec![false; m + 1],
        labels: vec![0; m],
        incumbent,
        best: None,
    };
    b.run(0, 1);
    b.best.map(|l| (b.incumbent, l))
}

/// Exact `f(H)` by branch and bound over roots and bijective labelings.
pub fn f_of(h: &Graph, edge_budget: usize) -> Result<FValue, FError> {
    if !h.is_tree() {
        return Err(FError::NotATree);
    }
    let m = h.edge_count();
    if m == 0 {
        return Ok(FValue {
            value: 1,
            root: 0,
            labels: Vec::new(),
        });
    }
    let roots = root_orbits(h);
    let mut best: Option<FValue> = None;
    for &r in &roots {
        let t = RootedTree::new(h.clone(), r).expect("tree");
        let labels = greedy_labels(&t);
        let value = max_path_product(h, r, &labels);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(FValue { value, root: r, labels });
        }
    }
    let mut best = best.expect("at least one root");
    if m > edge_budget {
        return Err(FError::Budget {
            edges: m,
            budget: edge_budget,
            best_bound: best.value,
        });
    }
    for &r in &roots {
        if let Some((value, labels)) = search(h, r, best.value) {
            best = FValue { value, root: r, labels };
        }
    }
    Ok(best)
}

/// Whether `f(H) ≥ t`: no root and labeling keeps every path product below `t`.
pub fn f_at_least(h: &Graph, t: u128) -> Result<bool, FError> {
    if !h.is_tree() {
        return Err(FError::NotATree);
    }
    if h.edge_count() == 0 {
        return Ok(t <= 1);
    }
    Ok(root_orbits(h).into_iter().all(|r| search(h, r, t).is_none()))
}

/// The tree whose depth-`i` vertices have `2^(i+3)` children, height `h`.
pub fn appendix_tree(h: usize) -> Result<LazyTree, ConstructionError> {
    LazyTree::new((0..h).map(|i| 1usize << (i + 3)).collect())
}

/// `2^(C(h,2) + 3h)`.
pub fn appendix_leaf_count(h: usize) -> u128 {
    1u128 << (h * h.saturating_sub(1) / 2 + 3 * h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinaryOutcome {
    /// A rainbow copy of `B_h`, indexed by the level-order vertices of `T(2, h)`.
    Rainbow(Embedding),
    /// A monochromatic `K_{1,3}`, centre first.
    Monochromatic(Embedding),
}

/// Embeds `B_h` level by level, extending each leaf by two children along
/// fresh, distinct colours. `colour(v)` colours the edge from `v` to its parent.
pub fn embed_rainbow_binary(g: &LazyTree, colour: &dyn Fn(usize) -> usize, h: usize) -> Result<BinaryOutcome, ConstructionError> {
    if g.height() < h {
        return Err(ConstructionError::InvalidArgument(format!("host height {} is below {h}", g.height())));
    }
    let mut map = vec![0usize];
    let mut used: Vec<usize> = Vec::new();
    for depth in 0..h {
        let first = (1usize << depth) - 1;
        for k in first..2 * first + 1 {
            let v = map[k];
            let mut picks = Vec::new();
            for w in g.children(v) {
                let c = colour(w);
                if !used.contains(&c) && !picks.iter().any(|&(_, pc)| pc == c) {
                    picks.push((w, c));
                    if picks.len() == 2 {
                        break;
                    }
                }
            }
            if picks.len() < 2 {
                return mono_star_at(g, colour, v).map(BinaryOutcome::Monochromatic);
            }
            for (w, c) in picks {
                used.push(c);
                map.push(w);
            }
        }
    }
    let emb = Embedding::new(map);
    let pattern = parse_graph(&format!("B{h}")).expect("valid");
    if !verify_rainbow(&LazyColouredTree { tree: g, colour }, &pattern, &emb) {
        return Err(ConstructionError::AssertionViolation("binary tree failed rainbow replay".into()));
    }
    Ok(BinaryOutcome::Rainbow(emb))
}

fn mono_star_at(g: &LazyTree, colour: &dyn Fn(usize) -> usize, v: usize) -> Result<Embedding, ConstructionError> {
    let mut nbrs: Vec<usize> = g.parent(v).into_iter().chain(g.children(v)).collect();
    let host = LazyColouredTree { tree: g, colour };
    let edge_colour = |w: usize| if g.parent(v) == Some(w) { colour(v) } else { colour(w) };
    nbrs.sort_by_key(|&w| (edge_colour(w), w));
    for win in nbrs.windows(3) {
        if win.iter().all(|&w| edge_colour(w) == edge_colour(win[0])) {
            let emb = Embedding::new(vec![v, win[0], win[1], win[2]]);
            let star = parse_graph("K1,3").expect("valid");
            debug_assert!(verify_monochromatic(&host, &star, &emb));
            return Ok(emb);
        }
    }
    Err(ConstructionError::AssertionViolation(format!(
        "greedy stalled at {v} without a monochromatic K1,3"
    )))
}
