//! Exact decision of `G →mr (H₁, H₂)` by exhaustive search over set
//! partitions of `E(G)`.
//!
//! Colourings are unrestricted in the number of colours, so it suffices to
//! visit each partition of the edge set once; partitions are enumerated as
//! restricted-growth strings over the fixed edge order. A prefix that already
//! contains a monochromatic `H₁` or a rainbow `H₂` decides every extension,
//! since such copies survive any further assignment.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::density::Rational;
use crate::graph::{colour_degree, find_copy, find_monochromatic_copy, Colouring, CopyKind, Graph};

/// Bell(16) > 10^10; larger hosts need an explicit override.
pub const DEFAULT_EDGE_BUDGET: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrowError {
    #[error("host has {edges} edges, above the exhaustive-search budget of {budget}")]
    BudgetExceeded { edges: usize, budget: usize },
    #[error("invalid property Q parameters: {0}")]
    InvalidParams(String),
}

#[derive(Clone, Copy, Debug)]
pub struct ArrowOptions {
    pub edge_budget: usize,
    /// Worker threads; `1` runs the plain sequential search.
    pub jobs: usize,
}

impl Default for ArrowOptions {
    fn default() -> Self {
        ArrowOptions {
            edge_budget: DEFAULT_EDGE_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Arrows,
    NotArrows,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowVerdict {
    pub outcome: Outcome,
    /// The lexicographically least avoiding colouring, present iff `NotArrows`.
    pub counterexample: Option<Colouring>,
    /// Canonical colourings covered by the search, counting every extension
    /// of a decided prefix. Equals `Bell(e(G))` for an `Arrows` verdict.
    pub colourings_examined: u128,
}

impl ArrowVerdict {
    pub fn arrows(&self) -> bool {
        self.outcome == Outcome::Arrows
    }
}

/// Restricted-growth string enumerator over the edges of a graph.
pub struct Colourings {
    current: Option<Vec<usize>>,
}

impl Iterator for Colourings {
    type Item = Colouring;

    fn next(&mut self) -> Option<Colouring> {
        let cur = self.current.take()?;
        let out = Colouring::new(cur.clone());
        let mut a = cur;
        // prefix maxima
        let mut maxes = Vec::with_capacity(a.len());
        let mut m = 0;
        for &x in &a {
            m = m.max(x);
            maxes.push(m);
        }
        let mut i = a.len();
        let mut advanced = false;
        while i > 1 {
            i -= 1;
            if a[i] <= maxes[i - 1] {
                a[i] += 1;
                for x in &mut a[i + 1..] {
                    *x = 0;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(a);
        }
        Some(out)
    }
}

/// Every partition of `E(g)`, once, in lexicographic RGS order.
pub fn enumerate_colourings(g: &Graph) -> Colourings {
    Colourings {
        current: Some(vec![0; g.edge_count()]),
    }
}

/// Number of restricted-growth completions of `remaining` entries after a
/// prefix that uses `used` colours.
struct CompletionTable(Vec<Vec<u128>>);

impl CompletionTable {
    fn new(e: usize) -> Self {
        let mut t = vec![vec![1u128; e + 2]; e + 1];
        for r in 1..=e {
            for m in 0..=e {
                let next = if m < e + 1 { t[r - 1][m + 1] } else { 0 };
                t[r][m] = (m as u128) * t[r - 1][m] + next;
            }
        }
        CompletionTable(t)
    }

    fn get(&self, remaining: usize, used: usize) -> u128 {
        self.0[remaining][used]
    }
}

pub fn bell(e: usize) -> u128 {
    CompletionTable::new(e).get(e, 0)
}

struct Decider<'a> {
    g: &'a Graph,
    h1: &'a Graph,
    h2: &'a Graph,
    table: CompletionTable,
}

enum Node {
    Decided(u128),
    Open(Vec<usize>),
}

impl<'a> Decider<'a> {
    fn decided(&self, prefix: &[usize]) -> bool {
        let colour_of = |e: usize| prefix.get(e).copied();
        find_copy(self.g, &colour_of, self.h1, CopyKind::Monochromatic).is_some() || find_copy(self.g, &colour_of, self.h2, CopyKind::Rainbow).is_some()
    }

    fn used(prefix: &[usize]) -> usize {
        prefix.iter().max().map_or(0, |m| m + 1)
    }

    /// Depth-first search below `prefix`; returns the number of colourings
    /// covered and the first avoiding colouring, if any.
    fn search(&self, prefix: &mut Vec<usize>, cancel: &dyn Fn() -> bool) -> (u128, Option<Vec<usize>>) {
        let e = self.g.edge_count();
        if self.decided(prefix) {
            return (self.table.get(e - prefix.len(), Self::used(prefix)), None);
        }
        if prefix.len() == e {
            return (1, Some(prefix.clone()));
        }
        if cancel() {
            return (0, None);
        }
        let mut covered = 0;
        for c in 0..=Self::used(prefix) {
            prefix.push(c);
            let (n, found) = self.search(prefix, cancel);
            prefix.pop();
            covered += n;
            if found.is_some() {
                return (covered, found);
            }
        }
        (covered, None)
    }

    /// Prefixes of length `depth` (or shorter, if decided) in lexicographic order.
    fn frontier(&self, prefix: &mut Vec<usize>, depth: usize, out: &mut Vec<Node>) {
        let e = self.g.edge_count();
        if self.decided(prefix) {
            out.push(Node::Decided(self.table.get(e - prefix.len(), Self::used(prefix))));
            return;
        }
        if prefix.len() == depth {
            out.push(Node::Open(prefix.clone()));
            return;
        }
        for c in 0..=Self::used(prefix) {
            prefix.push(c);
            self.frontier(prefix, depth, out);
            prefix.pop();
        }
    }
}

/// Decides `G →mr (H₁, H₂)`.
pub fn arrows_mr(g: &Graph, h1: &Graph, h2: &Graph, opts: &ArrowOptions) -> Result<ArrowVerdict, ArrowError> {
    let e = g.edge_count();
    if e > opts.edge_budget {
        return Err(ArrowError::BudgetExceeded {
            edges: e,
            budget: opts.edge_budget,
        });
    }
    let decider = Decider {
        g,
        h1,
        h2,
        table: CompletionTable::new(e),
    };
    let (covered, found) = if opts.jobs <= 1 || e < 4 {
        decider.search(&mut Vec::new(), &|| false)
    } else {
        parallel_search(&decider, opts.jobs)
    };
    Ok(match found {
        Some(c) => ArrowVerdict {
            outcome: Outcome::NotArrows,
            counterexample: Some(Colouring::new(c)),
            colourings_examined: covered,
        },
        None => ArrowVerdict {
            outcome: Outcome::Arrows,
            counterexample: None,
            colourings_examined: covered,
        },
    })
}

fn parallel_search(decider: &Decider<'_>, jobs: usize) -> (u128, Option<Vec<usize>>) {
    let e = decider.g.edge_count();
    let mut nodes = Vec::new();
    decider.frontier(&mut Vec::new(), e.min(6), &mut nodes);
    let first_fail = AtomicUsize::new(usize::MAX);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    let results: Vec<(u128, Option<Vec<usize>>)> = pool.install(|| {
        nodes
            .par_iter()
            .enumerate()
            .map(|(i, node)| match node {
                Node::Decided(n) => (*n, None),
                Node::Open(p) => {
                    if first_fail.load(Ordering::Relaxed) < i {
                        return (0, None);
                    }
                    let cancel = || first_fail.load(Ordering::Relaxed) < i;
                    let r = decider.search(&mut p.clone(), &cancel);
                    if r.1.is_some() {
                        first_fail.fetch_min(i, Ordering::Relaxed);
                    }
                    r
                }
            })
            .collect()
    });
    let mut covered = 0;
    for (n, found) in results {
        covered += n;
        if found.is_some() {
            return (covered, found);
        }
    }
    (covered, None)
}

/// Least `n ≤ n_max` with `K_n →mr (H₁, H₂)`.
pub fn constrained_ramsey_number(h1: &Graph, h2: &Graph, n_max: usize, opts: &ArrowOptions) -> Result<Option<usize>, ArrowError> {
    for n in 1..=n_max {
        if arrows_mr(&Graph::complete(n), h1, h2, opts)?.arrows() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Parameters of property `Q(b, r, H)`.
#[derive(Clone, Debug)]
pub struct PropertyQParams {
    b: Rational,
    r: usize,
    h: Graph,
}

impl PropertyQParams {
    pub fn new(b: Rational, r: usize, h: Graph) -> Result<Self, ArrowError> {
        if b <= Rational::from_integer(0.into()) || b > Rational::from_integer(1.into()) {
            return Err(ArrowError::InvalidParams(format!("b = {b} must lie in (0, 1]")));
        }
        if r < 2 {
            return Err(ArrowError::InvalidParams(format!("r = {r} must be at least 2")));
        }
        Ok(PropertyQParams { b, r, h })
    }

    /// As [`PropertyQParams::new`] but admitting `r = 1`, which the
    /// rainbow-tree recursion produces for binary trees.
    pub(crate) fn allowing_r1(b: Rational, r: usize, h: Graph) -> Result<Self, ArrowError> {
        PropertyQParams::new(b.clone(), r.max(2), h).map(|mut p| {
            p.r = r.max(1);
            p
        })
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyQVerdict {
    pub holds: bool,
    /// A colouring without a monochromatic `H` and a large set `X` in which
    /// every vertex has colour-degree at most `r`.
    pub witness: Option<(Colouring, Vec<usize>)>,
    pub colourings_checked: u128,
}

/// Exact check of `Q(b, r, H)`: every colouring of `G` without a
/// monochromatic `H` leaves, in every `X` with `|X| ≥ b·n`, a vertex `v ∈ X`
/// with `d_χ(v, X) > r`.
pub fn check_property_q(g: &Graph, params: &PropertyQParams, opts: &ArrowOptions) -> Result<PropertyQVerdict, ArrowError> {
    let e = g.edge_count();
    if e > opts.edge_budget {
        return Err(ArrowError::BudgetExceeded {
            edges: e,
            budget: opts.edge_budget,
        });
    }
    let n = g.n();
    let min_size = (params.b.clone() * Rational::from_integer((n as i64).into()))
        .ceil()
        .to_integer()
        .to_usize()
        .expect("bounded by n");
    let mut checked = 0;
    for chi in enumerate_colourings(g) {
        checked += 1;
        if find_monochromatic_copy(g, &chi, &params.h).is_some() {
            continue;
        }
        for mask in 0u64..(1u64 << n) {
            if (mask.count_ones() as usize) < min_size {
                continue;
            }
            let x: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if !x.iter().any(|&v| colour_degree(g, &chi, v, &x) > params.r) {
                return Ok(PropertyQVerdict {
                    holds: false,
                    witness: Some((chi, x)),
                    colourings_checked: checked,
                });
            }
        }
    }
    Ok(PropertyQVerdict {
        holds: true,
        witness: None,
        colourings_checked: checked,
    })
}
