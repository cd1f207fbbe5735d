//! Cohen-Macaulayness of tangent cones of Gorenstein, non complete
//! intersection monomial curves in affine 4-space.
//!
//! The crate pairs closed-form criteria on the exponents of Bresinsky's five
//! generators with an independent Mora standard-basis engine that checks
//! every verdict, and computes the tangent-cone ideal with its minimal number
//! of generators.
//!
//! Modules, bottom up:
//! - [`kernel`]: monomials, binomials, term orders, weights.
//! - [`engine`]: Mora normal form and standard bases (local order),
//!   Buchberger and membership (global orders).
//! - [`curve`]: toric ideals of monomial curves and Bresinsky data.
//! - [`cm`]: the invariant `d`, the extended basis and the criteria.
//! - [`cone`]: least homogeneous summands and the generator count.
//! - [`report`]: input parsing, analysis pipeline, suites and reports.

pub mod cm;
pub mod cone;
pub mod curve;
pub mod engine;
pub mod kernel;
pub mod report;

pub use kernel::{Binomial, Monomial, OrderKind, Poly, TermOrder, WeightVector};
