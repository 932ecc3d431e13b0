//! Seeded binomial random graphs and Monte Carlo probes.
//!
//! Trial `i` of a run with seed `s` draws its uniforms from ChaCha8 seeded
//! with `s` on stream `i`, one uniform per vertex pair in lexicographic
//! order. A pair is an edge at density `p` iff its uniform is below `p`, so
//! samples at different `p` for the same trial are nested.

use std::fmt;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arrow::{arrows_mr, ArrowOptions};
use crate::density::Rational;
use crate::graph::{find_copy, CopyKind, Graph};

pub const CSV_HEADER: &str = "n,p,trials,successes,undecided,estimate,stderr,seed";

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One uniform in `[0, 1)` per pair `(u, v)`, `u < v`, in lexicographic order.
pub fn pair_uniforms(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n * n.saturating_sub(1) / 2).map(|_| rng.gen::<f64>()).collect()
}

pub fn graph_from_uniforms(n: usize, uniforms: &[f64], p: f64) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if uniforms[i] < p {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, edges).expect("simple by construction")
}

pub fn sample_gnp_trial(n: usize, p: f64, seed: u64, trial: u64) -> Graph {
    graph_from_uniforms(n, &pair_uniforms(n, &mut trial_rng(seed, trial)), p)
}

/// `G(n, p)` from trial `0` of `seed`.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Graph {
    sample_gnp_trial(n, p, seed, 0)
}

/// An edge probability, either fixed or of the form `c·n^q`.
#[derive(Clone, Debug, PartialEq)]
pub enum PValue {
    Fixed(f64),
    Power { c: f64, q: Rational },
}

impl PValue {
    pub fn at(&self, n: usize) -> f64 {
        match self {
            PValue::Fixed(p) => *p,
            PValue::Power { c, q } => (c * (n as f64).powf(q.to_f64().expect("finite"))).clamp(0.0, 1.0),
        }
    }

    /// Reads `0.05`, `n^-1`, `2*n^-3/2` or `0.5n^-2/3`.
    pub fn parse(s: &str) -> Option<PValue> {
        let s = s.trim();
        let Some(idx) = s.find("n^") else {
            return s.parse::<f64>().ok().filter(|p| (0.0..=1.0).contains(p)).map(PValue::Fixed);
        };
        let head = s[..idx].trim_end_matches('*').trim();
        let c = if head.is_empty() { 1.0 } else { head.parse::<f64>().ok()? };
        let q: Rational = s[idx + 2..].trim().parse().ok()?;
        Some(PValue::Power { c, q })
    }
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValue::Fixed(p) => write!(f, "{p}"),
            PValue::Power { c, q } => write!(f, "{c}*n^{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub successes: usize,
    pub undecided: usize,
    /// Successes over decided trials.
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl SweepRow {
    fn new(n: usize, p: f64, trials: usize, successes: usize, undecided: usize, seed: u64) -> Self {
        let decided = trials - undecided;
        let (estimate, stderr) = if decided == 0 {
            (f64::NAN, f64::NAN)
        } else {
            let e = successes as f64 / decided as f64;
            (e, (e * (1.0 - e) / decided as f64).sqrt())
        };
        SweepRow {
            n,
            p,
            trials,
            successes,
            undecided,
            estimate,
            stderr,
            seed,
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n, self.p, self.trials, self.successes, self.undecided, self.estimate, self.stderr, self.seed
        )
    }
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

fn contains(g: &Graph, h: &Graph) -> bool {
    find_copy(g, &|_| Some(0), h, CopyKind::Monochromatic).is_some()
}

/// Empirical probability that `h ⊆ G(n, p)` at each grid point, with the same
/// uniforms reused across the grid.
pub fn containment_sweep(h: &Graph, n: usize, grid: &[PValue], trials: usize, seed: u64, jobs: usize) -> Vec<SweepRow> {
    let hits: Vec<Vec<bool>> = pool(jobs).install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let u = pair_uniforms(n, &mut trial_rng(seed, t));
                grid.iter().map(|p| contains(&graph_from_uniforms(n, &u, p.at(n)), h)).collect()
            })
            .collect()
    });
    grid.iter()
        .enumerate()
        .map(|(i, p)| SweepRow::new(n, p.at(n), trials, hits.iter().filter(|row| row[i]).count(), 0, seed))
        .collect()
}

/// Estimates `P[G(n, p) →mr (H₁, H₂)]` by exact decisions; samples with more
/// than `edge_cap` edges are counted as undecided.
pub fn arrow_probability(n: usize, p: f64, h1: &Graph, h2: &Graph, trials: usize, seed: u64, edge_cap: usize) -> SweepRow {
    arrow_sweep(n, &[PValue::Fixed(p)], h1, h2, trials, seed, edge_cap, 1).remove(0)
}

#[allow(clippy::too_many_arguments)]
pub fn arrow_sweep(n: usize, grid: &[PValue], h1: &Graph, h2: &Graph, trials: usize, seed: u64, edge_cap: usize, jobs: usize) -> Vec<SweepRow> {
    let opts = ArrowOptions {
        edge_budget: edge_cap,
        jobs: 1,
    };
    let verdicts: Vec<Vec<Option<bool>>> = pool(jobs).install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let u = pair_uniforms(n, &mut trial_rng(seed, t));
                grid.iter()
                    .map(|p| arrows_mr(&graph_from_uniforms(n, &u, p.at(n)), h1, h2, &opts).ok().map(|v| v.arrows()))
                    .collect()
            })
            .collect()
    });
    grid.iter()
        .enumerate()
        .map(|(i, p)| {
            let ok = verdicts.iter().filter(|row| row[i] == Some(true)).count();
            let undecided = verdicts.iter().filter(|row| row[i].is_none()).count();
            SweepRow::new(n, p.at(n), trials, ok, undecided, seed)
        })
        .collect()
}

/// Where the estimate first reaches one half, interpolated in `log p`.
pub fn half_crossing(rows: &[SweepRow]) -> Option<f64> {
    let i = rows.iter().position(|r| r.estimate >= 0.5)?;
    if i == 0 {
        return Some(rows[0].p);
    }
    let (a, b) = (&rows[i - 1], &rows[i]);
    let t = (0.5 - a.estimate) / (b.estimate - a.estimate);
    Some((a.p.ln() + t * (b.p.ln() - a.p.ln())).exp())
}
