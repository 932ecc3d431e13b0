//! Exact combinatorics for the constrained Ramsey property `G →mr (H₁, H₂)`:
//! every edge colouring of `G` contains a monochromatic `H₁` or a rainbow `H₂`.
//!
//! The crate decides the property exhaustively on small hosts, implements
//! the explicit colourings and embedding procedures that witness it on trees,
//! bounds the forest density parameter `m_F`, computes the labelled-path
//! extremal function `f(H)`, evaluates the full threshold-exponent case table,
//! and samples `G(n, p)` for empirical probes.

pub mod arrow;
pub mod constructions;
pub mod density;
pub mod fh;
pub mod gnp;
pub mod graph;
pub mod mf;
pub mod threshold;

pub use density::Rational;
pub use graph::{Colouring, Embedding, Graph};
