//! Verification and classification toolkit for invariant metrics on
//! 4-dimensional cohomogeneity-one manifolds.
//!
//! The metric along a normal geodesic is encoded by three functions
//! `(v1, v2, v3)` (lengths of the action fields of a diagonal `SU(2)` action)
//! or by two functions `(f, g)` (sphere and circle radii of an
//! `SO(3)xSO(2)` action). Everything downstream works with exact closed-form
//! calculus on those functions:
//!
//! - [`analytic`]: closed-form scalar functions `c * t^p * {1, sin, cos, exp}(d t)`,
//!   exact differentiation, and truncated Taylor/Laurent series arithmetic.
//! - [`metrics`]: metric data types, group diagrams, eigenvalue-multiplicity
//!   tracking for non-diagonal metric endomorphisms.
//! - [`catalog`]: the built-in catalog of curvature homogeneous examples.
//! - [`curvature`]: frame curvature components, Ricci curvature, the
//!   curvature-homogeneity decision, and the connection-tensor residual.
//! - [`connection`]: Christoffel coefficients in the parallel frame, an
//!   independent curvature oracle, and the invariants |nabla Ric|, |nabla R|.
//! - [`smoothness`]: smooth/orbifold verdicts at collapsing orbits from exact
//!   boundary Taylor coefficients.
//! - [`classifier`]: named polynomial constraint systems with exhaustive
//!   root search, boundary Laurent profiles, the exponential-ansatz sweep,
//!   and matching of metrics against the catalog.

pub mod analytic;
pub mod catalog;
pub mod classifier;
pub mod connection;
pub mod curvature;
pub mod defaults;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod series;
pub mod smoothness;

pub use error::{Error, Result};
