//! Exact classification of Gevrey orders for formal descending power /
//! Puiseux series solutions of polynomial ODEs (differential sums).
//!
//! The pipeline, end to end:
//!
//! 1. parse an ODE written as a differential sum `F(z, w, w', ..., w^(n)) = 0`
//!    with exact Gaussian-rational coefficients ([`diffsum`]),
//! 2. extend a prescribed leading behaviour to an `N`-term formal solution by
//!    the triangular linear recurrence the equation induces ([`solver`]),
//! 3. linearize `F` at the solution, push the operator into the Euler basis
//!    `D = z d/dz` through Stirling-number transition matrices ([`operator`],
//!    [`stirling`]),
//! 4. read off the operator support, build the Newton polygon, and report the
//!    candidate Gevrey orders `{0} ∪ {1/k}` over positive edge slopes
//!    ([`mod@polygon`]).
//!
//! Every computation is exact: coefficients are Gaussian rationals, exponents
//! live on a ramified grid `(1/ρ)·ℤ`, and truncation is tracked explicitly so
//! that nothing uncertified is ever reported. All values are immutable after
//! construction and every operation is a pure function, so independent
//! branches and cases can safely run concurrently; the Stirling tables are
//! computed once and shared read-only.
//!
//! The built-in [`corpus`] reproduces the classical descending expansions of
//! the third and fifth Painlevé equations near `z = ∞` and their polygon
//! classification (all of Gevrey order 0 or 1).

pub mod corpus;
pub mod diffsum;
pub mod error;
pub mod exponent;
pub mod gaussian;
pub mod operator;
pub mod pipeline;
pub mod polygon;
pub mod report;
pub mod seedspec;
pub mod series;
pub mod solver;
pub mod stirling;

pub use diffsum::{DiffMonomial, DiffSum, LinearDiffOperator};
pub use error::Error;
pub use exponent::RamifiedExponent;
pub use gaussian::GaussianRational;
pub use operator::{OperatorOnSeries, SeriesBasis};
pub use pipeline::{classify, Classification};
pub use polygon::{gevrey_candidates, polygon, NewtonPolygon, SupportPoint};
pub use series::PuiseuxSeries;
pub use solver::{extend, growth_profile, residual_order, ExtendedSolution, SeedExpansion};
pub use stirling::StirlingTables;
