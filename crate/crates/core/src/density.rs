//! Exact maximum density `m(H)`, maximum 2-density `m₂(H)`, and the graph
//! classes that drive the threshold case table.
//!
//! Both maxima are attained on induced subgraphs (for a fixed vertex set the
//! induced subgraph has the most edges), so the search ranges over vertex
//! subsets. Density is additive-max over components, which keeps the subset
//! enumeration per component; tree components use the closed form
//! `(k-1)/k` directly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;

pub type Rational = BigRational;

/// Largest component (non-tree) on which subset enumeration is attempted.
pub const MAX_ENUMERATION_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("density of the empty graph is undefined")]
    EmptyGraph,
    #[error("component with {0} vertices is too large for exact subset enumeration")]
    TooLarge(usize),
}

pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `m(H) = max e(J)/v(J)` over non-empty subgraphs `J ⊆ H`.
pub fn max_density(h: &Graph) -> Result<Rational, DensityError> {
    if h.n() == 0 {
        return Err(DensityError::EmptyGraph);
    }
    let mut best = Rational::zero();
    for comp in h.components() {
        let sub = h.induced(&comp);
        let d = if sub.is_tree() {
            ratio(sub.n() as i64 - 1, sub.n() as i64)
        } else {
            if sub.n() > MAX_ENUMERATION_VERTICES {
                return Err(DensityError::TooLarge(sub.n()));
            }
            let (e, v) = best_subset(&sub, 1, |e, v| (e, v));
            ratio(e, v)
        };
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// `m₂(H)`: `0` for `K1` and `2K1`, `1/2` for `K2`, and otherwise the maximum of
/// `(e(J)-1)/(v(J)-2)` over subgraphs on at least three vertices.
pub fn max_2_density(h: &Graph) -> Result<Rational, DensityError> {
    match h.n() {
        0 => return Err(DensityError::EmptyGraph),
        1 => return Ok(Rational::zero()),
        2 => return Ok(if h.edge_count() == 1 { ratio(1, 2) } else { Rational::zero() }),
        _ => {}
    }
    // a forest has e(J) <= v(J) - 1, with equality on any tree with >= 3 vertices
    if h.is_forest() && h.components().iter().any(|c| c.len() >= 3) {
        return Ok(Rational::one());
    }
    if h.n() > MAX_ENUMERATION_VERTICES {
        return Err(DensityError::TooLarge(h.n()));
    }
    let (e, v) = best_subset(h, 3, |e, v| (e - 1, v - 2));
    Ok(ratio(e, v))
}

/// Maximises `num/den` over vertex subsets of size at least `min_size`,
/// where `(num, den) = key(e(G[S]), |S|)`; returns the maximising pair.
fn best_subset(g: &Graph, min_size: usize, key: impl Fn(i64, i64) -> (i64, i64)) -> (i64, i64) {
    let n = g.n();
    let masks: Vec<u32> = (0..n).map(|v| g.neighbours(v).filter(|&w| w < v).fold(0u32, |m, w| m | 1 << w)).collect();
    let mut best: Option<(i64, i64)> = None;
    // e(S) for each subset, built from the subset without its top vertex
    let mut edges = vec![0u16; 1usize << n];
    for s in 1usize..(1 << n) {
        let top = usize::BITS as usize - 1 - s.leading_zeros() as usize;
        let rest = s & !(1 << top);
        edges[s] = edges[rest] + (masks[top] & rest as u32).count_ones() as u16;
        let size = s.count_ones() as usize;
        if size < min_size {
            continue;
        }
        let (num, den) = key(i64::from(edges[s]), size as i64);
        if best.is_none_or(|(bn, bd)| num * bd > bn * den) {
            best = Some((num, den));
        }
    }
    best.expect("some subset meets the size bound")
}

/// Structural flags for the threshold case analysis. Isolated vertices are
/// ignored by every flag; `k_nonisolated` counts the remaining vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub is_forest: bool,
    pub is_star: bool,
    pub is_matching: bool,
    pub is_star_forest: bool,
    pub is_constellation: bool,
    pub is_short_forest: bool,
    pub is_cherry: bool,
    pub k_nonisolated: usize,
}

pub fn classify(h: &Graph) -> GraphClass {
    let core = h.without_isolated();
    let comps: Vec<Graph> = core.components().iter().map(|c| core.induced(c)).collect();
    let is_forest = h.is_forest();
    let is_star_comp = |c: &Graph| c.is_tree() && c.n() >= 2 && c.max_degree() == c.n() - 1;
    let all_stars = is_forest && comps.iter().all(is_star_comp);
    GraphClass {
        is_forest,
        is_star: comps.len() == 1 && all_stars,
        is_matching: is_forest && comps.iter().all(|c| c.n() == 2),
        is_star_forest: all_stars,
        is_constellation: all_stars && comps.len() >= 2,
        is_short_forest: is_forest && comps.iter().all(|c| c.n() == 2 || c.n() == 3),
        is_cherry: comps.len() == 1 && comps[0].n() == 3 && comps[0].is_tree(),
        k_nonisolated: core.n(),
    }
}

/// `m(F) = 1 - 1/v(T)` for a forest whose largest component is `T`.
pub fn forest_density(largest_component: usize) -> Rational {
    Rational::one() - ratio(1, largest_component.max(1) as i64)
}
