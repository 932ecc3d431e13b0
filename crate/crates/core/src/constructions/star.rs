//! Complete trees forcing a monochromatic star or a rainbow forest, and the
//! greedy embedding that realises the rainbow side.

use crate::graph::{verify_monochromatic, verify_rainbow, ColouredGraph, Colouring, Embedding, Graph};

use super::{ConstructionError, RootedTree};

#[derive(Clone, Debug)]
pub struct StarArrowTree {
    /// `T((s-1)(ℓ-1)+1, h)`.
    pub tree: RootedTree,
    /// The spanning tree completion of `H2`, rooted at `0`.
    pub completion: RootedTree,
    pub star_size: usize,
    pub arity: usize,
    pub height: usize,
}

/// Completes a forest to a spanning tree by joining the least vertices of
/// consecutive components.
pub fn spanning_completion(h2: &Graph) -> Result<Graph, ConstructionError> {
    if !h2.is_forest() || h2.n() == 0 {
        return Err(ConstructionError::NotAForest);
    }
    let comps = h2.components();
    let bridges = comps.windows(2).map(|w| (w[0][0], w[1][0]));
    let g = Graph::new(h2.n(), h2.edges().iter().copied().chain(bridges)).expect("bridges join distinct components");
    Ok(g)
}

pub fn star_arrow_tree(s: usize, h2: &Graph, vertex_budget: usize) -> Result<StarArrowTree, ConstructionError> {
    if s == 0 {
        return Err(ConstructionError::InvalidArgument("star size must be positive".into()));
    }
    let completion = RootedTree::new(spanning_completion(h2)?, 0)?;
    let l = completion.graph().edge_count();
    let arity = (s - 1) * l.saturating_sub(1) + 1;
    let height = completion.height();
    let tree = RootedTree::complete(arity, height, vertex_budget)?;
    Ok(StarArrowTree {
        tree,
        completion,
        star_size: s,
        arity,
        height,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GreedyOutcome {
    /// A rainbow embedding of the completion (and so of `H2`).
    Rainbow(Embedding),
    /// A monochromatic `K_{1,s}`, centre first.
    Monochromatic(Embedding),
    /// The greedy stalled at this host vertex without a monochromatic star;
    /// only possible when the host is smaller than the construction requires.
    Stalled(usize),
}

/// Embeds `h2p` root to root, level by level, always choosing the least child
/// whose edge colour is still unused.
pub fn greedy_rainbow_embed(t: &RootedTree, chi: &Colouring, h2p: &RootedTree, s: usize) -> GreedyOutcome {
    let host = ColouredGraph {
        graph: t.graph(),
        colouring: chi,
    };
    let mut map = vec![usize::MAX; h2p.n()];
    map[h2p.root()] = t.root();
    let mut used: Vec<usize> = Vec::new();
    for u in h2p.level_order() {
        let tu = map[u];
        let mut taken = 0;
        for &c in h2p.children(u) {
            let pick = t.children(tu)[taken..]
                .iter()
                .enumerate()
                .find(|&(_, &w)| !used.contains(&chi.colour(t.parent_edge(w).unwrap())));
            let Some((off, &w)) = pick else {
                return star_or_stall(t, chi, tu, s);
            };
            // skipped children below `taken + off` carry used colours; keep them to the left
            taken += off + 1;
            used.push(chi.colour(t.parent_edge(w).unwrap()));
            map[c] = w;
        }
    }
    let emb = Embedding::new(map);
    debug_assert!(verify_rainbow(&host, h2p.graph(), &emb));
    GreedyOutcome::Rainbow(emb)
}

fn star_or_stall(t: &RootedTree, chi: &Colouring, v: usize, s: usize) -> GreedyOutcome {
    let kids = t.children(v);
    let colour = |w: usize| chi.colour(t.parent_edge(w).unwrap());
    let best = kids
        .iter()
        .map(|&w| colour(w))
        .min_by_key(|&c| (std::cmp::Reverse(kids.iter().filter(|&&w| colour(w) == c).count()), c));
    if let Some(c) = best {
        let leaves: Vec<usize> = kids.iter().copied().filter(|&w| colour(w) == c).take(s).collect();
        if leaves.len() == s {
            let emb = Embedding::new(std::iter::once(v).chain(leaves).collect());
            let star = Graph::new(s + 1, (1..=s).map(|i| (0, i))).unwrap();
            debug_assert!(verify_monochromatic(
                &ColouredGraph {
                    graph: t.graph(),
                    colouring: chi
                },
                &star,
                &emb
            ));
            return GreedyOutcome::Monochromatic(emb);
        }
    }
    GreedyOutcome::Stalled(v)
}
