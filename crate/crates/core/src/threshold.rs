//! Threshold exponents `q` with `p̂(H₁, H₂) = n^q` for forests `H₂`.
//!
//! The dispatch keys on `e(H₂)`: one edge or fewer is trivial, two edges are
//! governed by `m(H₁)` or the vertex count of `H₁`, and three or more split
//! by the star structure of `H₁` and whether `H₂` is a short forest.

use std::fmt;

use thiserror::Error;

use crate::density::{classify, max_2_density, max_density, ratio, DensityError, Rational};
use crate::graph::Graph;
use crate::mf::{exponent_of, mf_report, MfError, MfOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("open problem: the threshold is not known when H2 is not a forest")]
    OpenProblem,
    #[error("degenerate input: both patterns need at least one edge")]
    Degenerate,
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Mf(#[from] MfError),
}

/// The clause of the case analysis that determines the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// `min(e(H₁), e(H₂)) ≤ 1`: `q = -2`.
    Trivial,
    /// `H₂` a cherry and `H₁` a forest on `k` non-isolated vertices: `q = -k/(k-1)`.
    CherryForest,
    /// Any other `H₂` with two edges: `q = -1/m(H₁)`.
    TwoEdge,
    /// `H₁` a matching, `H₂` not short: `q = -1`.
    Matching,
    /// `q = -1/m₂(H₁)`.
    TwoDensity,
    /// `q = -1/m_F(H₁, H₂)`.
    ForestDensity,
}

pub const ALL_CLAUSES: [Clause; 6] = [
    Clause::Trivial,
    Clause::CherryForest,
    Clause::TwoEdge,
    Clause::Matching,
    Clause::TwoDensity,
    Clause::ForestDensity,
];

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Trivial => "trivial",
            Clause::CherryForest => "cherry-forest",
            Clause::TwoEdge => "two-edge",
            Clause::Matching => "matching",
            Clause::TwoDensity => "two-density",
            Clause::ForestDensity => "forest-density",
        })
    }
}

/// Each clause's hypotheses, evaluated independently of the others.
pub fn clause_predicates(h1: &Graph, h2: &Graph) -> [bool; 6] {
    let (e1, e2) = (h1.edge_count(), h2.edge_count());
    let (c1, c2) = (classify(h1), classify(h2));
    let base = e1 >= 2 && h2.is_forest();
    let large = base && e2 >= 3;
    [
        e1 >= 1 && e2 >= 1 && e1.min(e2) <= 1,
        base && e2 == 2 && c2.is_cherry && c1.is_forest,
        base && e2 == 2 && !(c2.is_cherry && c1.is_forest),
        large && c1.is_matching && !c2.is_short_forest,
        large && (!c1.is_star_forest || (c1.is_constellation && h1.max_degree() >= 2 && !c2.is_short_forest)),
        large && (c1.is_star || (c1.is_constellation && c2.is_short_forest)),
    ]
}

pub fn dispatch(h1: &Graph, h2: &Graph) -> Result<Clause, ThresholdError> {
    if h1.edge_count() == 0 || h2.edge_count() == 0 {
        return Err(ThresholdError::Degenerate);
    }
    if h1.edge_count().min(h2.edge_count()) > 1 && !h2.is_forest() {
        return Err(ThresholdError::OpenProblem);
    }
    let fired = clause_predicates(h1, h2);
    let i = fired.iter().position(|&b| b).expect("clauses cover every pair");
    Ok(ALL_CLAUSES[i])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentKind {
    Exact(Rational),
    /// `q = -1/m_F` known to lie in `[lower, upper]`.
    MfBased {
        lower: Rational,
        upper: Rational,
        exact: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdExponent {
    pub kind: ExponentKind,
    pub clause: Clause,
    /// Named density values the exponent was computed from.
    pub provenance: Vec<(String, Rational)>,
}

impl fmt::Display for ThresholdExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExponentKind::Exact(q) => write!(f, "exponent = {q}; case = {}", self.clause),
            ExponentKind::MfBased { lower, upper, exact } => {
                write!(f, "exponent in [{lower}, {upper}] (-1/m_F, exact = {exact}); case = {}", self.clause)
            }
        }
    }
}

pub fn threshold(h1: &Graph, h2: &Graph, mf_opts: &MfOptions) -> Result<ThresholdExponent, ThresholdError> {
    let clause = dispatch(h1, h2)?;
    let exact = |q: Rational, provenance: Vec<(String, Rational)>| ThresholdExponent {
        kind: ExponentKind::Exact(q),
        clause,
        provenance,
    };
    Ok(match clause {
        Clause::Trivial => exact(ratio(-2, 1), Vec::new()),
        Clause::CherryForest => {
            let k = classify(h1).k_nonisolated as i64;
            exact(ratio(-k, k - 1), vec![("k".into(), ratio(k, 1))])
        }
        Clause::TwoEdge => {
            let m = max_density(h1)?;
            exact(exponent_of(&m), vec![("m(H1)".into(), m)])
        }
        Clause::Matching => exact(ratio(-1, 1), Vec::new()),
        Clause::TwoDensity => {
            let m2 = max_2_density(h1)?;
            exact(exponent_of(&m2), vec![("m2(H1)".into(), m2)])
        }
        Clause::ForestDensity => {
            let r = mf_report(h1, h2, mf_opts)?;
            ThresholdExponent {
                kind: ExponentKind::MfBased {
                    lower: exponent_of(&r.lower),
                    upper: exponent_of(&r.upper),
                    exact: r.exact,
                },
                clause,
                provenance: vec![("m_F lower".into(), r.lower), ("m_F upper".into(), r.upper)],
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn q(a: &str, b: &str) -> ThresholdExponent {
        threshold(&parse_graph(a).unwrap(), &parse_graph(b).unwrap(), &MfOptions::default()).unwrap()
    }

    #[test]
    fn dispatch_examples() {
        let cases = [
            ("K3", "P3", ratio(-1, 2), Clause::TwoDensity),
            ("2K1,2", "K1,3", ratio(-1, 1), Clause::TwoDensity),
            ("M2", "P3", ratio(-1, 1), Clause::Matching),
            ("K3", "K1,2", ratio(-1, 1), Clause::TwoEdge),
            ("K1,2", "K1,2", ratio(-3, 2), Clause::CherryForest),
            ("K2", "K4", ratio(-2, 1), Clause::Trivial),
            ("K2", "P5", ratio(-2, 1), Clause::Trivial),
        ];
        for (a, b, want, clause) in cases {
            let t = q(a, b);
            assert_eq!((t.kind, t.clause), (ExponentKind::Exact(want), clause), "{a} {b}");
        }
    }

    #[test]
    fn forest_density_interval() {
        let t = q("K1,2", "2K1,2");
        assert_eq!(t.clause, Clause::ForestDensity);
        let ExponentKind::MfBased { lower, upper, .. } = t.kind else { panic!() };
        assert!(lower <= upper && upper < ratio(-1, 1));
    }

    #[test]
    fn refusals() {
        let g = |s: &str| parse_graph(s).unwrap();
        assert_eq!(dispatch(&g("K1,2"), &g("K3")), Err(ThresholdError::OpenProblem));
        assert_eq!(dispatch(&g("K3"), &g("3K1")), Err(ThresholdError::Degenerate));
    }

    #[test]
    fn display() {
        assert_eq!(q("K3", "P3").to_string(), "exponent = -1/2; case = two-density");
    }
}
