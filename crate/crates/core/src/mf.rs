//! Bounds on the least maximum density `m_F(H₁, H₂)` of a forest arrowing
//! `(H₁, H₂)`, with the witness forest and a refutation certificate.
//!
//! A forest whose largest component has `k` vertices has density `(k-1)/k`,
//! so candidates are searched level by level in `k`. The first arrowing
//! forest found gives the upper bound; a level counts towards the lower bound
//! once every candidate at that level has been refuted.

use std::fmt;

use thiserror::Error;

use crate::arrow::{arrows_mr, ArrowOptions};
use crate::constructions::{
    avoid_colouring, complete_tree_size, component_mono_colouring, constellation_arity, normalised_size, star_arrow_tree, verify_avoiding, AvoidMode,
    RootedTree,
};
use crate::density::{classify, forest_density, ratio, Rational};
use crate::fh::descendant_colouring;
use crate::graph::{enumerate_trees, find_monochromatic_copy, find_rainbow_copy, free_tree_code, Colouring, Graph};

#[derive(Clone, Debug)]
pub struct MfOptions {
    /// Largest component size searched.
    pub max_component: usize,
    /// Most copies of one tree shape in a candidate.
    pub copies_cap: usize,
    /// Most vertices in a candidate.
    pub vertex_budget: usize,
    /// Vertex budget for materialising fallback constructions.
    pub construction_budget: usize,
    pub arrow: ArrowOptions,
}

impl Default for MfOptions {
    fn default() -> Self {
        MfOptions {
            max_component: 6,
            copies_cap: 3,
            vertex_budget: 12,
            construction_budget: 200_000,
            arrow: ArrowOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MfError {
    #[error("m_F is only finite when H1 is a star and H2 a forest, or H1 a constellation and H2 a short forest")]
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Forest(Graph),
    /// `T(arity, height)`, too large to materialise.
    CompleteTree {
        arity: usize,
        height: usize,
    },
}

impl Witness {
    pub fn as_forest(&self) -> Option<&Graph> {
        match self {
            Witness::Forest(g) => Some(g),
            Witness::CompleteTree { .. } => None,
        }
    }

    pub fn largest_component(&self) -> usize {
        match self {
            Witness::Forest(g) => largest_component(g),
            Witness::CompleteTree { arity, height } => complete_tree_size(*arity, *height).unwrap_or(usize::MAX),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Forest(g) => write!(f, "{g}"),
            Witness::CompleteTree { arity, height } => write!(f, "T({arity},{height})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperSource {
    /// Found by the search and confirmed by `arrows_mr`.
    Search,
    /// A complete tree from one of the explicit constructions.
    Construction { verified: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCertificate {
    /// Every forest with components of at most this many vertices was refuted.
    pub max_component: usize,
    pub copies_cap: usize,
    pub refuted: usize,
    pub undecided: usize,
    /// Refutation of the counted levels holds for forests with any number of copies.
    pub unconditional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfReport {
    pub upper: Rational,
    pub witness: Witness,
    pub upper_source: UpperSource,
    pub lower: Rational,
    pub certificate: LowerCertificate,
    pub exact: bool,
    /// Bounds on the least largest-component size of an arrowing forest.
    pub v_param_bounds: (usize, usize),
}

impl fmt::Display for MfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "upper: {}", self.upper)?;
        writeln!(f, "witness: {}", self.witness)?;
        let source = match self.upper_source {
            UpperSource::Search => "search (verified by arrows_mr)",
            UpperSource::Construction { verified: true } => "construction (verified by arrows_mr)",
            UpperSource::Construction { verified: false } => "construction (unverified by arrows_mr)",
        };
        writeln!(f, "upper_source: {source}")?;
        writeln!(f, "lower: {}", self.lower)?;
        writeln!(f, "lower_max_component: {}", self.certificate.max_component)?;
        writeln!(f, "copies_cap: {}", self.certificate.copies_cap)?;
        writeln!(f, "refuted: {}", self.certificate.refuted)?;
        writeln!(f, "undecided: {}", self.certificate.undecided)?;
        writeln!(f, "unconditional: {}", self.certificate.unconditional)?;
        writeln!(f, "exact: {}", self.exact)?;
        write!(f, "v_bounds: {} {}", self.v_param_bounds.0, self.v_param_bounds.1)
    }
}

/// Number of vertices in the largest connected component.
fn largest_component(g: &Graph) -> usize {
    g.components().iter().map(Vec::len).max().unwrap_or(0)
}

/// Refutations valid for every forest whose components have at most `k`
/// vertices, however many copies it has.
///
/// With one colour there is no rainbow `H₂` once `e(H₂) ≥ 2`, and no
/// monochromatic `H₁` if some component of `H₁` is too large. Colouring each
/// component on its own kills every rainbow `H₂` with a component of two or
/// more edges, and forces a monochromatic `H₁` into one component.
pub fn unconditional_refutation(h1: &Graph, h2: &Graph, k: usize) -> bool {
    let h1_too_big = !h1.is_forest() || largest_component(h1) > k;
    let single_colour = h1_too_big && h2.edge_count() >= 2;
    let core = h1.without_isolated();
    let h2_has_long_component = h2.components().iter().any(|c| h2.induced(c).edge_count() >= 2);
    let per_component = (!h1.is_forest() || core.n() > k) && h2_has_long_component;
    single_colour || per_component
}

struct Shape {
    size: usize,
    code: String,
    graph: Graph,
}

fn shapes(max: usize) -> Vec<Shape> {
    (1..=max)
        .flat_map(|k| enumerate_trees(k).map(move |g| (k, g)))
        .map(|(size, graph)| Shape {
            size,
            code: free_tree_code(&graph),
            graph,
        })
        .collect()
}

/// Candidate forests with largest component exactly `k`, ordered by vertex
/// count and then by canonical code.
fn candidates(shapes: &[Shape], k: usize, cap: usize, budget: usize) -> Vec<Graph> {
    let usable: Vec<&Shape> = shapes.iter().filter(|s| s.size <= k).collect();
    let mut out: Vec<(usize, String, Vec<usize>)> = Vec::new();
    let mut mult = vec![0usize; usable.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(i: usize, used: usize, usable: &[&Shape], mult: &mut Vec<usize>, k: usize, cap: usize, budget: usize, out: &mut Vec<(usize, String, Vec<usize>)>) {
        if i == usable.len() {
            let has_top = usable.iter().zip(mult.iter()).any(|(s, &m)| s.size == k && m > 0);
            if has_top {
                let mut parts: Vec<(usize, &str)> = Vec::new();
                for (s, &m) in usable.iter().zip(mult.iter()) {
                    parts.extend(std::iter::repeat_n((s.size, s.code.as_str()), m));
                }
                parts.sort_by(|a, b| b.cmp(a));
                let code = parts.iter().map(|p| p.1).collect::<Vec<_>>().join(" ");
                out.push((used, code, mult.clone()));
            }
            return;
        }
        for m in 0..=cap {
            let need = used + m * usable[i].size;
            if need > budget {
                break;
            }
            mult[i] = m;
            rec(i + 1, need, usable, mult, k, cap, budget, out);
        }
        mult[i] = 0;
    }
    rec(0, 0, &usable, &mut mult, k, cap, budget, &mut out);
    out.sort();
    out.into_iter()
        .map(|(_, _, mult)| {
            // larger shapes first
            let mut g = Graph::empty(0);
            for (s, &m) in usable.iter().zip(&mult).rev() {
                for _ in 0..m {
                    g = g.disjoint_union(&s.graph);
                }
            }
            g
        })
        .collect()
}

/// Cheap colourings tried before exhaustive search.
fn quick_refutation(f: &Graph, h1: &Graph, h2: &Graph) -> bool {
    let e = f.edge_count();
    let mut tries = vec![Colouring::uniform(e), Colouring::rainbow(e)];
    tries.extend(component_mono_colouring(f).ok());
    tries.extend(
        [AvoidMode::HighDegree, AvoidMode::LongPath]
            .into_iter()
            .filter_map(|m| avoid_colouring(f, m).ok()),
    );
    tries.push(forest_descendant_colouring(f));
    tries.iter().any(|chi| verify_avoiding(f, chi, h1, h2))
}

/// Descendant colouring of each component rooted at its least vertex.
fn forest_descendant_colouring(f: &Graph) -> Colouring {
    let mut colours = vec![0; f.edge_count()];
    for comp in f.components() {
        let sub = f.induced(&comp);
        let t = RootedTree::new(sub.clone(), 0).expect("component of a forest");
        let chi = descendant_colouring(&t);
        for (e, &(u, v)) in sub.edges().iter().enumerate() {
            let id = f.edge_id(comp[u], comp[v]).expect("edge of component");
            colours[id] = chi.colour(e);
        }
    }
    Colouring::new(colours)
}

enum Verdict {
    Arrows,
    Refuted,
    Undecided,
}

fn decide(f: &Graph, h1: &Graph, h2: &Graph, opts: &ArrowOptions) -> Verdict {
    let e = f.edge_count();
    let absent = find_monochromatic_copy(f, &Colouring::uniform(e), h1).is_none() && find_rainbow_copy(f, &Colouring::rainbow(e), h2).is_none();
    if absent || quick_refutation(f, h1, h2) {
        return Verdict::Refuted;
    }
    match arrows_mr(f, h1, h2, opts) {
        Ok(v) if v.arrows() => Verdict::Arrows,
        Ok(_) => Verdict::Refuted,
        Err(_) => Verdict::Undecided,
    }
}

pub fn in_scope(h1: &Graph, h2: &Graph) -> bool {
    let (c1, c2) = (classify(h1), classify(h2));
    (c1.is_star && c2.is_forest) || (c1.is_constellation && c2.is_short_forest)
}

pub fn mf_report(h1: &Graph, h2: &Graph, opts: &MfOptions) -> Result<MfReport, MfError> {
    if !in_scope(h1, h2) {
        return Err(MfError::OutOfScope);
    }
    let all_shapes = shapes(opts.max_component);
    let mut refuted = 0;
    let mut undecided = 0;
    // largest level below which every candidate was refuted
    let mut clean_level = 0;
    let mut unconditional = true;
    let mut witness: Option<(usize, Graph)> = None;
    for k in 1..=opts.max_component {
        if unconditional_refutation(h1, h2, k) {
            if clean_level == k - 1 {
                clean_level = k;
            }
            continue;
        }
        let mut level_clean = true;
        for f in candidates(&all_shapes, k, opts.copies_cap, opts.vertex_budget) {
            match decide(&f, h1, h2, &opts.arrow) {
                Verdict::Arrows => {
                    witness = Some((k, f));
                    break;
                }
                Verdict::Refuted => refuted += 1,
                Verdict::Undecided => {
                    undecided += 1;
                    level_clean = false;
                }
            }
        }
        if witness.is_some() {
            break;
        }
        if level_clean && clean_level == k - 1 {
            clean_level = k;
            unconditional = false;
        }
    }
    let (upper_k, witness, upper_source) = match witness {
        Some((k, f)) => (k, Witness::Forest(f), UpperSource::Search),
        None => {
            let (w, verified) = construction_witness(h1, h2, opts);
            (w.largest_component(), w, UpperSource::Construction { verified })
        }
    };
    let upper = forest_density(upper_k);
    let lower = forest_density(clean_level + 1);
    let exact = lower == upper && unconditional && upper_source == UpperSource::Search;
    Ok(MfReport {
        upper,
        witness,
        upper_source,
        lower,
        certificate: LowerCertificate {
            max_component: clean_level,
            copies_cap: opts.copies_cap,
            refuted,
            undecided,
            unconditional,
        },
        exact,
        v_param_bounds: (clean_level + 1, upper_k),
    })
}

/// The explicit arrowing tree; replayed through `arrows_mr` when small enough.
fn construction_witness(h1: &Graph, h2: &Graph, opts: &MfOptions) -> (Witness, bool) {
    if classify(h1).is_star {
        if let Ok(c) = star_arrow_tree(h1.max_degree(), h2, opts.construction_budget) {
            let t = c.tree.graph().clone();
            let verified = arrows_mr(&t, h1, h2, &opts.arrow).is_ok_and(|v| v.arrows());
            return (Witness::Forest(t), verified);
        }
        let l = crate::constructions::spanning_completion(h2).map(|g| g.edge_count()).unwrap_or(1);
        let arity = (h1.max_degree() - 1) * l.saturating_sub(1) + 1;
        let height = RootedTree::new(crate::constructions::spanning_completion(h2).expect("forest"), 0)
            .expect("tree")
            .height();
        return (Witness::CompleteTree { arity, height }, false);
    }
    let s = normalised_size(h1, h2).expect("in scope");
    (
        Witness::CompleteTree {
            arity: constellation_arity(s),
            height: 3,
        },
        false,
    )
}

/// `-1 / m` as an exponent.
pub fn exponent_of(m: &Rational) -> Rational {
    -(ratio(1, 1) / m)
}
