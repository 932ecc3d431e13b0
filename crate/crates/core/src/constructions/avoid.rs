//! Colourings of forests that avoid a monochromatic constellation and a
//! rainbow copy of a long forest.

use crate::graph::{find_copy, find_monochromatic_copy, find_rainbow_copy, parse_graph, Colouring, CopyKind, Graph};

use super::ConstructionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AvoidMode {
    /// `χ(v_i v_j) = min(i, j)`: at most two colours at every vertex.
    HighDegree,
    /// Each edge takes the index of its odd-depth endpoint: no rainbow path with three edges.
    LongPath,
}

/// Mode that defeats `h2`: `HighDegree` when `Δ(h2) ≥ 3`, else `LongPath`
/// when `h2` contains a three-edge path, else `None`.
pub fn mode_for(h2: &Graph) -> Option<AvoidMode> {
    if h2.max_degree() >= 3 {
        return Some(AvoidMode::HighDegree);
    }
    let p3 = parse_graph("P3").expect("valid");
    find_copy(h2, &|_| Some(0), &p3, CopyKind::Monochromatic).map(|_| AvoidMode::LongPath)
}

/// Positions in the order "by depth, then by index", with every component
/// rooted at its least vertex, together with the depths.
fn depth_order(f: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = f.n();
    let mut depth = vec![usize::MAX; n];
    for comp in f.components() {
        let root = comp[0];
        depth[root] = 0;
        let mut queue = vec![root];
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            for w in f.neighbours(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    queue.push(w);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (depth[v], v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    (pos, depth)
}

pub fn avoid_colouring(f: &Graph, mode: AvoidMode) -> Result<Colouring, ConstructionError> {
    if !f.is_forest() {
        return Err(ConstructionError::NotAForest);
    }
    let (pos, depth) = depth_order(f);
    let colours = f
        .edges()
        .iter()
        .map(|&(u, v)| match mode {
            AvoidMode::HighDegree => pos[u].min(pos[v]),
            AvoidMode::LongPath => {
                if depth[u] % 2 == 1 {
                    pos[u]
                } else {
                    pos[v]
                }
            }
        })
        .collect();
    Ok(Colouring::new(colours))
}

/// True iff `chi` has neither a monochromatic `h1` nor a rainbow `h2`.
pub fn verify_avoiding(f: &Graph, chi: &Colouring, h1: &Graph, h2: &Graph) -> bool {
    find_monochromatic_copy(f, chi, h1).is_none() && find_rainbow_copy(f, chi, h2).is_none()
}

/// One colour per component carrying edges, numbered by least vertex.
pub fn component_mono_colouring(f: &Graph) -> Result<Colouring, ConstructionError> {
    if !f.is_forest() {
        return Err(ConstructionError::NotAForest);
    }
    let mut comp_of = vec![usize::MAX; f.n()];
    let mut next = 0;
    for comp in f.components() {
        if comp.len() < 2 {
            continue;
        }
        for &v in &comp {
            comp_of[v] = next;
        }
        next += 1;
    }
    Ok(Colouring::new(f.edges().iter().map(|&(u, _)| comp_of[u]).collect()))
}
