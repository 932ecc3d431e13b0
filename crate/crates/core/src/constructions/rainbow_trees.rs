//! Many vertex-disjoint rainbow complete trees, extracted greedily from a
//! colouring with no monochromatic `H` on a host with property `Q`.

use num_traits::{One, ToPrimitive};

use crate::arrow::{check_property_q, ArrowOptions, PropertyQParams};
use crate::density::{ratio, Rational};
use crate::graph::{find_monochromatic_copy, parse_graph, verify_rainbow, ColouredGraph, Colouring, Embedding, Graph};

use super::ConstructionError;

/// Constants `b`, `c`, `r` for `T(d, h)`: on a host with `Q(b, r, H)` and a
/// colouring without a monochromatic `H` there are `⌊c·n⌋` disjoint rainbow
/// copies of `T(d, h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowTreeParams {
    pub b: Rational,
    pub c: Rational,
    pub r: usize,
}

pub fn rainbow_tree_params(d: usize, h: usize) -> RainbowTreeParams {
    assert!(d >= 1 && h >= 1, "T(d,h) needs d >= 1 and h >= 1");
    if h == 1 {
        return RainbowTreeParams {
            b: ratio(1, 2),
            c: ratio(1, 2 * (d as i64 + 1)),
            r: d - 1,
        };
    }
    let star = rainbow_tree_params(2 * d.pow(h as u32), 1);
    let lower = rainbow_tree_params(d, h - 1);
    RainbowTreeParams {
        b: lower.b * star.c.clone() / ratio(2, 1),
        c: star.c * lower.c / ratio(2, 1),
        r: star.r.max(lower.r),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QStatus {
    /// Checked exactly on the host.
    Verified,
    /// Taken on trust: the host is above the exact-check budget.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowTreeReport {
    /// Each copy maps the level-order vertices of `T(d, h)` into the host.
    pub trees: Vec<Embedding>,
    pub params: RainbowTreeParams,
    pub quota: usize,
    pub q_status: QStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RainbowTreesOutcome {
    Monochromatic(Embedding),
    Trees(RainbowTreeReport),
}

fn quota(c: &Rational, n: usize) -> usize {
    (c * Rational::from_integer((n as i64).into()))
        .floor()
        .to_integer()
        .to_usize()
        .expect("non-negative")
}

/// With `verify_q` set, property `Q` is checked exactly when the host fits
/// the edge budget and assumed otherwise.
pub fn disjoint_rainbow_trees(
    g: &Graph,
    chi: &Colouring,
    d: usize,
    h: usize,
    forbidden: &Graph,
    verify_q: Option<&ArrowOptions>,
) -> Result<RainbowTreesOutcome, ConstructionError> {
    if d == 0 || h == 0 {
        return Err(ConstructionError::InvalidArgument(format!("T({d},{h}) needs d >= 1 and h >= 1")));
    }
    if let Some(emb) = find_monochromatic_copy(g, chi, forbidden) {
        return Ok(RainbowTreesOutcome::Monochromatic(emb));
    }
    let params = rainbow_tree_params(d, h);
    let mut q_status = QStatus::Assumed;
    if let Some(opts) = verify_q {
        if g.edge_count() <= opts.edge_budget && g.n() <= 20 {
            let q =
                PropertyQParams::allowing_r1(params.b.clone(), params.r, forbidden.clone()).map_err(|e| ConstructionError::InvalidArgument(e.to_string()))?;
            let verdict = check_property_q(g, &q, opts).map_err(|e| ConstructionError::InvalidArgument(e.to_string()))?;
            if !verdict.holds {
                return Err(ConstructionError::PropertyQFails);
            }
            q_status = QStatus::Verified;
        }
    }
    let all: Vec<usize> = (0..g.n()).collect();
    let trees = extract(g, chi, &all, d, h)?;
    let pattern = parse_graph(&format!("T({d},{h})")).expect("valid tree");
    let host = ColouredGraph { graph: g, colouring: chi };
    let trees: Vec<Embedding> = trees.into_iter().map(Embedding::new).collect();
    for t in &trees {
        if !verify_rainbow(&host, &pattern, t) {
            return Err(ConstructionError::AssertionViolation(format!("tree {:?} is not rainbow", t.as_slice())));
        }
    }
    let mut seen = vec![false; g.n()];
    for v in trees.iter().flat_map(|t| t.as_slice()) {
        if std::mem::replace(&mut seen[*v], true) {
            return Err(ConstructionError::AssertionViolation(format!("vertex {v} used by two trees")));
        }
    }
    let quota = quota(&params.c, g.n());
    Ok(RainbowTreesOutcome::Trees(RainbowTreeReport {
        trees,
        params,
        quota,
        q_status,
    }))
}

/// Disjoint rainbow copies of `T(d, h)` inside `within`, as level-order
/// vertex lists, meeting the quota `⌊c·|within|⌋`.
fn extract(g: &Graph, chi: &Colouring, within: &[usize], d: usize, h: usize) -> Result<Vec<Vec<usize>>, ConstructionError> {
    let params = rainbow_tree_params(d, h);
    let need = quota(&params.c, within.len());
    let trees = if h == 1 {
        rainbow_stars(g, chi, within, d)
    } else {
        let big = 2 * d.pow(h as u32);
        let stars = extract(g, chi, within, big, 1)?;
        let roots: Vec<usize> = stars.iter().map(|s| s[0]).collect();
        let mut star_at = vec![usize::MAX; g.n()];
        for (i, s) in stars.iter().enumerate() {
            star_at[s[0]] = i;
        }
        let shorter = extract(g, chi, &roots, d, h - 1)?;
        let leaf_count = d.pow(h as u32 - 1);
        shorter
            .into_iter()
            .filter_map(|mut tree| {
                let mut colours: Vec<usize> = tree_colours(g, chi, &tree, d);
                let leaves: Vec<usize> = tree[tree.len() - leaf_count..].to_vec();
                for leaf in leaves {
                    let star = &stars[star_at[leaf]];
                    let mut added = 0;
                    for &w in &star[1..] {
                        let c = chi.colour(g.edge_id(leaf, w).expect("star edge"));
                        if !colours.contains(&c) {
                            colours.push(c);
                            tree.push(w);
                            added += 1;
                            if added == d {
                                break;
                            }
                        }
                    }
                    if added < d {
                        return None;
                    }
                }
                Some(tree)
            })
            .collect()
    };
    if trees.len() < need {
        return Err(ConstructionError::Stalled {
            height: h,
            found: trees.len(),
            quota: need,
        });
    }
    Ok(trees)
}

/// Edge colours of a level-order copy of `T(d, ·)`.
fn tree_colours(g: &Graph, chi: &Colouring, tree: &[usize], d: usize) -> Vec<usize> {
    (1..tree.len())
        .map(|i| chi.colour(g.edge_id(tree[(i - 1) / d], tree[i]).expect("tree edge")))
        .collect()
}

/// Greedy rainbow `K_{1,d}`s: while at least half of `within` is unused, take
/// the least unused vertex with `d` distinct colours into the unused set.
fn rainbow_stars(g: &Graph, chi: &Colouring, within: &[usize], d: usize) -> Vec<Vec<usize>> {
    let mut free = vec![false; g.n()];
    for &v in within {
        free[v] = true;
    }
    let mut left = within.len();
    let mut stars = Vec::new();
    while 2 * left >= within.len() && left > 0 {
        let found = within.iter().copied().filter(|&v| free[v]).find_map(|v| {
            let mut leaves: Vec<(usize, usize)> = Vec::new();
            for &(w, e) in g.incident(v) {
                let c = chi.colour(e);
                if free[w] && !leaves.iter().any(|&(_, lc)| lc == c) {
                    leaves.push((w, c));
                    if leaves.len() == d {
                        return Some(std::iter::once(v).chain(leaves.iter().map(|&(w, _)| w)).collect::<Vec<_>>());
                    }
                }
            }
            None
        });
        let Some(star) = found else { break };
        for &v in &star {
            free[v] = false;
        }
        left -= star.len();
        stars.push(star);
    }
    stars
}

impl RainbowTreeParams {
    pub fn is_valid(&self) -> bool {
        let zero = Rational::from_integer(0.into());
        self.b > zero && self.b <= Rational::one() && self.c > zero && self.c < Rational::one() && self.r >= 1
    }
}
