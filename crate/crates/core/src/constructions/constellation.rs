//! Height-three trees forcing a monochromatic constellation or a rainbow
//! collection of cherries, with the witness search that proves it.

use crate::density::classify;
use crate::graph::{verify_monochromatic, verify_rainbow, CopyKind, Embedding, Graph};

use super::tree::lazy_colour_degree;
use super::{ConstructionError, LazyColouredTree, LazyTree};

/// `6s³ + 7s²`.
pub fn constellation_arity(s: usize) -> usize {
    6 * s * s * s + 7 * s * s
}

/// `T(6s³+7s², 3)`, lazily indexed.
pub fn constellation_arrow_tree(s: usize) -> Result<LazyTree, ConstructionError> {
    if s < 2 {
        return Err(ConstructionError::InvalidArgument(format!("s = {s}; the construction needs s >= 2")));
    }
    LazyTree::complete(constellation_arity(s), 3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstellationWitness {
    /// `s` vertex-disjoint stars with `s` leaves each, all in `colour`.
    Monochromatic { colour: usize, stars: Vec<(usize, Vec<usize>)> },
    /// `s` vertex-disjoint cherries `[end, centre, end]` with all `2s` edge colours distinct.
    Rainbow { cherries: Vec<[usize; 3]> },
}

fn stars_pattern(count: usize, leaves: usize) -> Graph {
    let edges = (0..count).flat_map(|j| {
        let c = j * (leaves + 1);
        (1..=leaves).map(move |i| (c, c + i))
    });
    Graph::new(count * (leaves + 1), edges).expect("disjoint stars")
}

impl ConstellationWitness {
    pub fn kind(&self) -> CopyKind {
        match self {
            ConstellationWitness::Monochromatic { .. } => CopyKind::Monochromatic,
            ConstellationWitness::Rainbow { .. } => CopyKind::Rainbow,
        }
    }

    /// The witnessed pattern, numbered star by star with the centre first.
    pub fn pattern(&self) -> Graph {
        match self {
            ConstellationWitness::Monochromatic { stars, .. } => stars_pattern(stars.len(), stars.first().map_or(0, |s| s.1.len())),
            ConstellationWitness::Rainbow { cherries } => stars_pattern(cherries.len(), 2),
        }
    }

    pub fn embedding(&self) -> Embedding {
        let map = match self {
            ConstellationWitness::Monochromatic { stars, .. } => {
                stars.iter().flat_map(|(c, leaves)| std::iter::once(*c).chain(leaves.iter().copied())).collect()
            }
            ConstellationWitness::Rainbow { cherries } => cherries.iter().flat_map(|&[a, w, z]| [w, a, z]).collect(),
        };
        Embedding::new(map)
    }

    pub fn verify(&self, t: &LazyTree, colour: &dyn Fn(usize) -> usize) -> bool {
        let host = LazyColouredTree { tree: t, colour };
        let (p, e) = (self.pattern(), self.embedding());
        match self.kind() {
            CopyKind::Monochromatic => verify_monochromatic(&host, &p, &e),
            CopyKind::Rainbow => verify_rainbow(&host, &p, &e),
        }
    }
}

struct Star {
    centre: usize,
    colour: usize,
    leaves: Vec<usize>,
}

enum Claim {
    Mono(ConstellationWitness),
    /// Stars of pairwise distinct colours, in order of first appearance.
    Stars(Vec<Star>),
}

/// For each vertex of `a` with colour-degree below `3s`, the star formed by
/// its children in its most frequent child colour (earliest colour on ties).
/// Stops early once `s` such stars share a colour.
fn claim(t: &LazyTree, colour: &dyn Fn(usize) -> usize, a: impl IntoIterator<Item = usize>, s: usize) -> Claim {
    let mut groups: Vec<(usize, Vec<Star>)> = Vec::new();
    for v in a {
        if lazy_colour_degree(t, colour, v, 3 * s) >= 3 * s {
            continue;
        }
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for w in t.children(v) {
            let c = colour(w);
            match counts.iter_mut().find(|(k, _)| *k == c) {
                Some(slot) => slot.1 += 1,
                None => counts.push((c, 1)),
            }
        }
        let Some(&(best, _)) = counts.iter().rev().max_by_key(|&&(_, n)| n) else {
            continue;
        };
        let leaves: Vec<usize> = t.children(v).filter(|&w| colour(w) == best).collect();
        if leaves.len() < s {
            continue;
        }
        let star = Star {
            centre: v,
            colour: best,
            leaves,
        };
        let group = match groups.iter_mut().position(|(k, _)| *k == best) {
            Some(i) => &mut groups[i].1,
            None => {
                groups.push((best, Vec::new()));
                &mut groups.last_mut().unwrap().1
            }
        };
        group.push(star);
        if group.len() == s {
            let stars = group.iter().map(|st| (st.centre, st.leaves[..s].to_vec())).collect();
            return Claim::Mono(ConstellationWitness::Monochromatic { colour: best, stars });
        }
    }
    Claim::Stars(groups.into_iter().map(|(_, mut g)| g.swap_remove(0)).collect())
}

/// Greedy cherries around `s` centres of colour-degree at least `3s`.
fn cherries_at_high_degree(t: &LazyTree, colour: &dyn Fn(usize) -> usize, centres: &[usize]) -> Result<ConstellationWitness, ConstructionError> {
    let mut used: Vec<usize> = Vec::new();
    let mut cherries = Vec::new();
    for &x in centres {
        let mut picks: Vec<(usize, usize)> = Vec::new();
        for w in t.children(x) {
            let c = colour(w);
            if centres.contains(&w) || used.contains(&c) || picks.iter().any(|&(_, pc)| pc == c) {
                continue;
            }
            picks.push((w, c));
            if picks.len() == 2 {
                break;
            }
        }
        if picks.len() < 2 {
            return Err(ConstructionError::AssertionViolation(format!(
                "vertex {x} of high colour-degree has fewer than two fresh colours"
            )));
        }
        used.extend(picks.iter().map(|&(_, c)| c));
        cherries.push([picks[0].0, x, picks[1].0]);
    }
    Ok(ConstellationWitness::Rainbow { cherries })
}

/// Finds a monochromatic `s·K_{1,s}` or a rainbow `s·K_{1,2}` in a lazily
/// coloured `T(d, 3)` with `d ≥ 6s³+7s²`; `colour(v)` is the colour of the
/// edge from `v` to its parent. Every returned witness has been re-verified.
pub fn find_mono_or_rainbow(t: &LazyTree, colour: &dyn Fn(usize) -> usize, s: usize) -> Result<ConstellationWitness, ConstructionError> {
    let d = constellation_arity(s);
    if s < 2 || t.height() < 3 || (0..3).any(|i| t.arity_at(i) < d) {
        return Err(ConstructionError::InvalidArgument(format!("host must contain T({d},3) for s = {s}")));
    }
    let cap = 3 * s;
    let mut high = Vec::new();
    for v in 0..t.n() {
        if lazy_colour_degree(t, colour, v, cap) >= cap {
            high.push(v);
            if high.len() == cap {
                break;
            }
        }
    }
    let witness = if high.len() >= cap {
        cherries_at_high_degree(t, colour, &high[..s])?
    } else {
        cherry_chain(t, colour, s)?
    };
    if !witness.verify(t, colour) {
        return Err(ConstructionError::AssertionViolation(format!("witness failed re-verification: {witness:?}")));
    }
    Ok(witness)
}

/// Few vertices of high colour-degree: pick distinctly coloured stars at the
/// root's children, and below each a star in yet another fresh colour.
fn cherry_chain(t: &LazyTree, colour: &dyn Fn(usize) -> usize, s: usize) -> Result<ConstellationWitness, ConstructionError> {
    let top = match claim(t, colour, t.children(0), s) {
        Claim::Mono(w) => return Ok(w),
        Claim::Stars(stars) => stars,
    };
    let mut used: Vec<usize> = Vec::new();
    let mut cherries = Vec::new();
    for i in 0..s {
        let si = top
            .iter()
            .find(|st| !used.contains(&st.colour))
            .ok_or_else(|| ConstructionError::AssertionViolation(format!("no fresh colour for star {i} at depth one")))?;
        let below = match claim(t, colour, si.leaves.iter().copied(), s) {
            Claim::Mono(w) => return Ok(w),
            Claim::Stars(stars) => stars,
        };
        let zi = below
            .iter()
            .find(|st| st.colour != si.colour && !used.contains(&st.colour))
            .ok_or_else(|| ConstructionError::AssertionViolation(format!("no fresh colour below vertex {}", si.centre)))?;
        cherries.push([si.centre, zi.centre, zi.leaves[0]]);
        used.push(si.colour);
        used.push(zi.colour);
    }
    Ok(ConstellationWitness::Rainbow { cherries })
}

/// A witness for the original patterns after normalisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternWitness {
    pub kind: CopyKind,
    pub pattern: Graph,
    pub embedding: Embedding,
}

/// Constellation size `s` covering `h1` (a star forest) and `h2` (a short forest).
pub fn normalised_size(h1: &Graph, h2: &Graph) -> Result<usize, ConstructionError> {
    let (c1, c2) = (classify(h1), classify(h2));
    if !c1.is_star_forest || !c2.is_short_forest {
        return Err(ConstructionError::InvalidArgument("need a star forest and a short forest".into()));
    }
    let core1 = h1.without_isolated();
    let stars = core1.components().len();
    let size = core1.max_degree();
    let comps2 = h2.without_isolated().components().len();
    Ok(stars.max(size).max(comps2).max(2))
}

/// Runs [`find_mono_or_rainbow`] on `T(6s³+7s², 3)` for the normalised `s`
/// and trims the witness to a copy of `h1` or `h2`.
pub fn mono_or_rainbow_for(h1: &Graph, h2: &Graph, t: &LazyTree, colour: &dyn Fn(usize) -> usize) -> Result<PatternWitness, ConstructionError> {
    let s = normalised_size(h1, h2)?;
    let w = find_mono_or_rainbow(t, colour, s)?;
    let used: Vec<usize> = w.embedding().as_slice().to_vec();
    let (pattern, groups): (&Graph, Vec<Vec<usize>>) = match &w {
        ConstellationWitness::Monochromatic { stars, .. } => (
            h1,
            stars
                .iter()
                .map(|(c, leaves)| std::iter::once(*c).chain(leaves.iter().copied()).collect())
                .collect(),
        ),
        ConstellationWitness::Rainbow { cherries } => (h2, cherries.iter().map(|&[a, w, z]| vec![w, a, z]).collect()),
    };
    let mut map = vec![usize::MAX; pattern.n()];
    let comps: Vec<Vec<usize>> = pattern.components().into_iter().filter(|c| c.len() > 1).collect();
    for (comp, group) in comps.iter().zip(&groups) {
        // centre: the vertex of largest degree, least index on ties
        let centre = *comp.iter().max_by_key(|&&v| (pattern.degree(v), std::cmp::Reverse(v))).unwrap();
        map[centre] = group[0];
        for (k, &leaf) in comp.iter().filter(|&&v| v != centre).enumerate() {
            map[leaf] = group[1 + k];
        }
    }
    let mut spare = (0..t.n()).rev().filter(|v| !used.contains(v));
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = spare
            .next()
            .ok_or_else(|| ConstructionError::AssertionViolation("host too small for isolated vertices".into()))?;
    }
    let out = PatternWitness {
        kind: w.kind(),
        pattern: pattern.clone(),
        embedding: Embedding::new(map),
    };
    let host = LazyColouredTree { tree: t, colour };
    let ok = match out.kind {
        CopyKind::Monochromatic => verify_monochromatic(&host, &out.pattern, &out.embedding),
        CopyKind::Rainbow => verify_rainbow(&host, &out.pattern, &out.embedding),
    };
    if !ok {
        return Err(ConstructionError::AssertionViolation(format!(
            "trimmed witness failed re-verification: {out:?}"
        )));
    }
    Ok(out)
}
