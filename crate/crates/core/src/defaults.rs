//! Default tolerances, orders, and sampling parameters.
//!
//! Every threshold used by the library is named here; call sites never carry
//! ad-hoc magic numbers. Derivatives are exact (no finite differencing except
//! where explicitly stated), so the equality-style tolerances are close to
//! double-precision round-off with a safety margin.

/// Truncation order for interior Taylor expansions of curvature components.
pub const SERIES_ORDER: usize = 12;

/// Relative threshold below which a series' leading coefficient counts as a
/// zero divisor (signals a pole; callers must switch to Laurent handling).
pub const EPS_DIV: f64 = 1e-12;

/// Positivity floor for metric functions at an evaluation point.
pub const EPS_POS: f64 = 1e-10;

/// Interior sample count for the curvature-homogeneity decision.
pub const CH_SAMPLES: usize = 200;

/// Relative constancy tolerance for the curvature-homogeneity decision.
pub const CH_TOL: f64 = 1e-8;

/// Fraction of the domain length kept as a margin at each end when sampling.
pub const CH_MARGIN_FRAC: f64 = 0.05;

/// Extra padding past an interior zero of a metric function when sampling.
pub const ZERO_MARGIN_PAD: f64 = 1e-3;

/// Residual tolerance for the connection-tensor least-squares certificate.
pub const A_RESIDUAL_TOL: f64 = 1e-8;

/// Step for centered differences of Christoffel coefficients in t
/// (Richardson-extrapolated with steps h and h/2).
pub const FD_STEP: f64 = 1e-5;

/// Taylor order for smoothness checks at a collapsing orbit.
pub const SMOOTH_ORDER: usize = 10;

/// Absolute threshold for a boundary Taylor coefficient to count as zero.
pub const COEFF_TOL: f64 = 1e-10;

/// Tolerance for recognizing an integer collapse-speed ratio (orbifold rule).
pub const ORBIFOLD_INT_TOL: f64 = 1e-9;

/// Default sample count for eigenvalue-multiplicity tracking.
pub const EIGEN_SAMPLES: usize = 512;

/// Bisection tolerance in t for locating eigenvalue crossings.
pub const EIGEN_CROSS_TOL: f64 = 1e-9;

/// Relative tolerance for grouping eigenvalues into multiplicity patterns.
pub const EIGEN_EQ_TOL: f64 = 1e-8;

/// Convergence threshold on the residual norm for Newton/Gauss-Newton.
pub const NEWTON_TOL: f64 = 1e-12;

/// Iteration cap for Newton/Gauss-Newton polishing.
pub const NEWTON_MAX_ITERS: usize = 50;

/// Default grid resolution (points per axis) for root-search seeding.
pub const GRID_PER_AXIS: usize = 50;

/// Merge radius for clustering polished roots.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Max-norm residual below which a polished point is accepted as a root.
pub const ROOT_ACCEPT_TOL: f64 = 1e-9;

/// Step for forward-difference Jacobians inside Gauss-Newton.
pub const FD_JACOBIAN_STEP: f64 = 1e-7;

/// Component-vector tolerance for catalog matching in classify.
pub const MATCH_TOL: f64 = 1e-6;

/// Draw count for the exponential-ansatz parameter sweep.
pub const SWEEP_DRAWS: usize = 10_000;

/// Half-width of the sweep's sampling interval [-T, T].
pub const SWEEP_T: f64 = 20.0;

/// Default search box for amplitude-like parameters (a, b, b_i).
pub const BOX_AMPLITUDE: (f64, f64) = (0.1, 6.0);

/// Default search box for rate-like parameters (c, c_i, d_i).
pub const BOX_RATE: (f64, f64) = (0.0, 4.0);

/// Lower bound for rates drawn in the exponential sweep; keeps draws away
/// from the numerically-constant regime at tolerance [`CH_TOL`].
pub const SWEEP_RATE_LO: f64 = 0.1;

/// Working window [0, T] stored for catalog entries defined on [0, infinity).
pub const NONCOMPACT_WINDOW: f64 = 3.0;
