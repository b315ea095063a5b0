//! Metric descriptions. A diagonal metric is a triple of positive functions
//! v1, v2, v3 on an interval, giving dt^2 + v1^2 w1^2 + v2^2 w2^2 + v3^2 w3^2
//! in the standard coframe of the three-sphere group orbits. A product metric
//! is a pair (f, g) for a two-sphere factor of radius f and a circle factor of
//! radius g. Group diagrams carry the collapse data at a singular orbit: the
//! codimension and the slice speed, plus the isotropy labels they determine.

use crate::analytic::ScalarFunction;
use crate::defaults::EPS_POS;
use crate::linalg::jacobi_eigen_3;
use crate::{Error, Result};

/// Symmetry group acting with cohomogeneity one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    /// Three-sphere group acting on four-manifolds with three-dimensional
    /// principal orbits.
    SU2,
    /// Rotation group of a two-sphere factor times a circle group.
    SO3xSO2,
}

/// Collapse data at one singular orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDiagram {
    pub group: Group,
    /// Codimension of the singular orbit (2, 3 or 4).
    pub singular_codim: u32,
    /// Slope that the collapsing metric function must attain at the orbit.
    pub slice_speed: u32,
    pub singular_isotropy: &'static str,
    pub principal_isotropy: &'static str,
}

impl GroupDiagram {
    /// Diagram for a three-sphere group action. `slice_speed` is the speed of
    /// the collapsing circle: 1, 2 or 4 in codimension two, 1 in codimension
    /// four (where the whole orbit collapses to a point).
    pub fn su2(codim: u32, slice_speed: u32) -> Result<Self> {
        let (singular_isotropy, principal_isotropy) = match (codim, slice_speed) {
            (2, 1) => ("SO(2)", "{e}"),
            (2, 2) => ("Pin(2)", "Z_4"),
            (2, 4) => ("Pin(2)", "D_2*"),
            (4, 1) => ("SU(2)", "{e}"),
            _ => {
                return Err(Error::Config(format!(
                    "no three-sphere diagram with codimension {codim} and slice speed {slice_speed}"
                )))
            }
        };
        Ok(GroupDiagram {
            group: Group::SU2,
            singular_codim: codim,
            slice_speed,
            singular_isotropy,
            principal_isotropy,
        })
    }

    /// Diagram for a product action: codimension 2 collapses the circle
    /// factor, codimension 3 collapses the sphere factor.
    pub fn product(codim: u32) -> Result<Self> {
        let (singular_isotropy, principal_isotropy) = match codim {
            2 => ("SO(2) x SO(2)", "SO(2)"),
            3 => ("SO(3)", "SO(2)"),
            _ => {
                return Err(Error::Config(format!(
                    "no product diagram with codimension {codim}"
                )))
            }
        };
        Ok(GroupDiagram {
            group: Group::SO3xSO2,
            singular_codim: codim,
            slice_speed: 1,
            singular_isotropy,
            principal_isotropy,
        })
    }
}

fn check_domain(domain: (f64, f64)) -> Result<()> {
    if !(domain.0.is_finite() && domain.1.is_finite() && domain.0 < domain.1) {
        return Err(Error::Domain(format!(
            "invalid interval [{}, {}]",
            domain.0, domain.1
        )));
    }
    Ok(())
}

/// Interior positivity check by sampling. Endpoint zeros (collapsing orbits)
/// are allowed; a sign change or an identically vanishing function is not.
fn check_positive_inside(f: &ScalarFunction, domain: (f64, f64), name: &str) -> Result<()> {
    let (lo, hi) = domain;
    let n = 33;
    let mut peak = 0.0f64;
    for k in 0..n {
        let t = lo + (hi - lo) * (k as f64 + 0.5) / n as f64;
        let val = f.evaluate(t);
        if val < -EPS_POS {
            return Err(Error::Domain(format!(
                "{name} is negative at t = {t}: {val}"
            )));
        }
        peak = peak.max(val);
    }
    if peak <= EPS_POS {
        return Err(Error::DegenerateAnsatz);
    }
    Ok(())
}

fn check_scale(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::Config(format!(
            "homothety factor must be positive, got {lambda}"
        )));
    }
    Ok(())
}

/// Diagonal invariant metric on an interval times a three-sphere orbit.
#[derive(Debug, Clone)]
pub struct DiagonalMetric {
    v: [ScalarFunction; 3],
    dv: [ScalarFunction; 3],
    ddv: [ScalarFunction; 3],
    domain: (f64, f64),
}

impl DiagonalMetric {
    pub fn new(v: [ScalarFunction; 3], domain: (f64, f64)) -> Result<Self> {
        check_domain(domain)?;
        for (i, f) in v.iter().enumerate() {
            check_positive_inside(f, domain, &format!("metric function v{}", i + 1))?;
        }
        let dv = [
            v[0].differentiate(),
            v[1].differentiate(),
            v[2].differentiate(),
        ];
        let ddv = [
            dv[0].differentiate(),
            dv[1].differentiate(),
            dv[2].differentiate(),
        ];
        Ok(DiagonalMetric { v, dv, ddv, domain })
    }

    pub fn functions(&self) -> &[ScalarFunction; 3] {
        &self.v
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn vals(&self, t: f64) -> [f64; 3] {
        [
            self.v[0].evaluate(t),
            self.v[1].evaluate(t),
            self.v[2].evaluate(t),
        ]
    }

    pub fn dvals(&self, t: f64) -> [f64; 3] {
        [
            self.dv[0].evaluate(t),
            self.dv[1].evaluate(t),
            self.dv[2].evaluate(t),
        ]
    }

    pub fn ddvals(&self, t: f64) -> [f64; 3] {
        [
            self.ddv[0].evaluate(t),
            self.ddv[1].evaluate(t),
            self.ddv[2].evaluate(t),
        ]
    }

    /// Relabels the orbit directions: function i of the result is function
    /// `perm[i]` of the original.
    pub fn permuted(&self, perm: [usize; 3]) -> DiagonalMetric {
        let v = [
            self.v[perm[0]].clone(),
            self.v[perm[1]].clone(),
            self.v[perm[2]].clone(),
        ];
        DiagonalMetric::new(v, self.domain).expect("relabeling preserves admissibility")
    }

    /// Reverses the interval: the new functions trace the old ones from the
    /// other end.
    pub fn reflected(&self) -> DiagonalMetric {
        let c = self.domain.0 + self.domain.1;
        let v = [
            self.v[0].reflect(c),
            self.v[1].reflect(c),
            self.v[2].reflect(c),
        ];
        DiagonalMetric::new(v, self.domain).expect("reflection preserves admissibility")
    }

    /// Homothety: v(t) becomes lambda v(t / lambda) on the stretched interval.
    pub fn scaled(&self, lambda: f64) -> Result<DiagonalMetric> {
        check_scale(lambda)?;
        let mut v = Vec::with_capacity(3);
        for f in &self.v {
            v.push(f.rescale_arg(lambda)?.scale(lambda));
        }
        let v: [ScalarFunction; 3] = [v[0].clone(), v[1].clone(), v[2].clone()];
        DiagonalMetric::new(v, (self.domain.0 * lambda, self.domain.1 * lambda))
    }
}

/// Product metric: two-sphere of radius f times circle of radius g over an
/// interval.
#[derive(Debug, Clone)]
pub struct ProductMetric {
    sphere: ScalarFunction,
    circle: ScalarFunction,
    d_sphere: ScalarFunction,
    d_circle: ScalarFunction,
    dd_sphere: ScalarFunction,
    dd_circle: ScalarFunction,
    domain: (f64, f64),
}

impl ProductMetric {
    pub fn new(sphere: ScalarFunction, circle: ScalarFunction, domain: (f64, f64)) -> Result<Self> {
        check_domain(domain)?;
        check_positive_inside(&sphere, domain, "sphere radius")?;
        check_positive_inside(&circle, domain, "circle radius")?;
        let d_sphere = sphere.differentiate();
        let d_circle = circle.differentiate();
        let dd_sphere = d_sphere.differentiate();
        let dd_circle = d_circle.differentiate();
        Ok(ProductMetric {
            sphere,
            circle,
            d_sphere,
            d_circle,
            dd_sphere,
            dd_circle,
            domain,
        })
    }

    pub fn sphere_function(&self) -> &ScalarFunction {
        &self.sphere
    }

    pub fn circle_function(&self) -> &ScalarFunction {
        &self.circle
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// (f, f', f'') at t.
    pub fn sphere_vals(&self, t: f64) -> [f64; 3] {
        [
            self.sphere.evaluate(t),
            self.d_sphere.evaluate(t),
            self.dd_sphere.evaluate(t),
        ]
    }

    /// (g, g', g'') at t.
    pub fn circle_vals(&self, t: f64) -> [f64; 3] {
        [
            self.circle.evaluate(t),
            self.d_circle.evaluate(t),
            self.dd_circle.evaluate(t),
        ]
    }

    pub fn scaled(&self, lambda: f64) -> Result<ProductMetric> {
        check_scale(lambda)?;
        let sphere = self.sphere.rescale_arg(lambda)?.scale(lambda);
        let circle = self.circle.rescale_arg(lambda)?.scale(lambda);
        ProductMetric::new(
            sphere,
            circle,
            (self.domain.0 * lambda, self.domain.1 * lambda),
        )
    }
}

/// Either kind of cohomogeneity-one metric handled by this crate.
#[derive(Debug, Clone)]
pub enum Metric {
    Diagonal(DiagonalMetric),
    Product(ProductMetric),
}

impl Metric {
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Metric::Diagonal(m) => m.domain(),
            Metric::Product(m) => m.domain(),
        }
    }

    pub fn scaled(&self, lambda: f64) -> Result<Metric> {
        Ok(match self {
            Metric::Diagonal(m) => Metric::Diagonal(m.scaled(lambda)?),
            Metric::Product(m) => Metric::Product(m.scaled(lambda)?),
        })
    }

    /// Metric functions sampled for window selection: the functions whose
    /// zeros bound the usable interior.
    pub(crate) fn radius_functions(&self) -> Vec<&ScalarFunction> {
        match self {
            Metric::Diagonal(m) => m.functions().iter().collect(),
            Metric::Product(m) => vec![m.sphere_function(), m.circle_function()],
        }
    }
}

/// Eigenvalue branch structure of a symmetric endomorphism family over a
/// window: multiplicity pattern at the window midpoint and the parameter
/// values where tracked branches cross.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenTrack {
    /// Multiplicities of the eigenvalue clusters at the window midpoint,
    /// largest first.
    pub pattern: Vec<usize>,
    /// Crossing locations of distinct tracked branches, ascending.
    pub crossings: Vec<f64>,
}

/// The orbit endomorphism of a metric: diag(v_i^2) in the diagonal case,
/// diag(f^2, f^2, g^2) in the product case.
pub fn orbit_endomorphism(m: &Metric) -> impl Fn(f64) -> [[f64; 3]; 3] + '_ {
    move |t: f64| {
        let mut e = [[0.0; 3]; 3];
        match m {
            Metric::Diagonal(d) => {
                let v = d.vals(t);
                for i in 0..3 {
                    e[i][i] = v[i] * v[i];
                }
            }
            Metric::Product(p) => {
                let f = p.sphere_vals(t)[0];
                let g = p.circle_vals(t)[0];
                e[0][0] = f * f;
                e[1][1] = f * f;
                e[2][2] = g * g;
            }
        }
        e
    }
}

/// Tracks the three eigenvalue branches of a symmetric 3x3 family across a
/// window. Branches are continued by maximal eigenvector overlap, so genuine
/// crossings are seen as sign changes of a tracked difference; sorting the
/// eigenvalues would hide them.
pub fn eigen_track<F>(endo: F, window: (f64, f64), samples: usize) -> Result<EigenTrack>
where
    F: Fn(f64) -> [[f64; 3]; 3],
{
    use crate::defaults::{EIGEN_CROSS_TOL, EIGEN_EQ_TOL};
    check_domain(window)?;
    let n = samples.max(8);
    let grid: Vec<f64> = (0..n)
        .map(|k| window.0 + (window.1 - window.0) * k as f64 / (n - 1) as f64)
        .collect();

    let eval = |t: f64| -> Result<([f64; 3], [[f64; 3]; 3])> {
        let m = endo(t);
        for i in 0..3 {
            for j in 0..i {
                if (m[i][j] - m[j][i]).abs() > 1e-9 * (1.0 + m[i][j].abs()) {
                    return Err(Error::Config(format!(
                        "endomorphism is not symmetric at t = {t}"
                    )));
                }
            }
        }
        let (vals, vecs) = jacobi_eigen_3(m);
        let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if scale <= 0.0 || vals.iter().any(|v| v.abs() < 1e-12 * scale) {
            return Err(Error::DegenerateMetric(t));
        }
        Ok((vals, vecs))
    };

    // Align (vals, vecs) to a reference eigenbasis by maximal total overlap.
    let align = |reference: &[[f64; 3]; 3],
                 vals: [f64; 3],
                 vecs: [[f64; 3]; 3]|
     -> ([f64; 3], [[f64; 3]; 3]) {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let overlap = |i: usize, j: usize| -> f64 {
            (0..3)
                .map(|k| reference[k][i] * vecs[k][j])
                .sum::<f64>()
                .abs()
        };
        let best = PERMS
            .iter()
            .max_by(|p, q| {
                let sp: f64 = (0..3).map(|i| overlap(i, p[i])).sum();
                let sq: f64 = (0..3).map(|i| overlap(i, q[i])).sum();
                sp.total_cmp(&sq)
            })
            .unwrap();
        let mut out_vals = [0.0; 3];
        let mut out_vecs = [[0.0; 3]; 3];
        for i in 0..3 {
            out_vals[i] = vals[best[i]];
            for k in 0..3 {
                out_vecs[k][i] = vecs[k][best[i]];
            }
        }
        (out_vals, out_vecs)
    };

    let (first_vals, first_vecs) = eval(grid[0])?;
    let mut track: Vec<[f64; 3]> = vec![first_vals];
    let mut bases: Vec<[[f64; 3]; 3]> = vec![first_vecs];
    for &t in &grid[1..] {
        let (vals, vecs) = eval(t)?;
        let (vals, vecs) = align(bases.last().unwrap(), vals, vecs);
        track.push(vals);
        bases.push(vecs);
    }

    // Crossings of each branch pair, refined by bisection on the tracked
    // difference.
    let mut crossings: Vec<f64> = Vec::new();
    let scale = track
        .iter()
        .flatten()
        .fold(0.0f64, |a, v| a.max(v.abs()))
        .max(1e-300);
    for i in 0..3 {
        for j in i + 1..3 {
            for k in 1..n {
                let d0 = track[k - 1][i] - track[k - 1][j];
                let d1 = track[k][i] - track[k][j];
                if d0.abs() <= EIGEN_EQ_TOL * scale || d1.abs() <= EIGEN_EQ_TOL * scale {
                    continue;
                }
                if d0.signum() == d1.signum() {
                    continue;
                }
                let mut lo = grid[k - 1];
                let mut hi = grid[k];
                let mut d_lo = d0;
                let mut base_vecs = bases[k - 1];
                while hi - lo > EIGEN_CROSS_TOL {
                    let mid = 0.5 * (lo + hi);
                    let (vm, wm) = eval(mid)?;
                    let (vm, wm) = align(&base_vecs, vm, wm);
                    let dm = vm[i] - vm[j];
                    if dm.signum() == d_lo.signum() {
                        lo = mid;
                        d_lo = dm;
                        base_vecs = wm;
                    } else {
                        hi = mid;
                    }
                }
                crossings.push(0.5 * (lo + hi));
            }
        }
    }
    crossings.sort_by(f64::total_cmp);
    crossings.dedup_by(|a, b| (*a - *b).abs() <= 10.0 * EIGEN_CROSS_TOL);

    // Multiplicity pattern at the midpoint.
    let mid = 0.5 * (window.0 + window.1);
    let (vals, _) = eval(mid)?;
    let mut sorted = vals;
    sorted.sort_by(|a, b| b.total_cmp(a));
    let vscale = sorted
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()))
        .max(1e-300);
    let mut pattern = Vec::new();
    let mut run = 1usize;
    for k in 1..3 {
        if (sorted[k - 1] - sorted[k]).abs() <= EIGEN_EQ_TOL * vscale {
            run += 1;
        } else {
            pattern.push(run);
            run = 1;
        }
    }
    pattern.push(run);
    pattern.sort_by(|a, b| b.cmp(a));

    Ok(EigenTrack { pattern, crossings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_tables() {
        let d = GroupDiagram::su2(2, 4).unwrap();
        assert_eq!(d.singular_isotropy, "Pin(2)");
        assert_eq!(d.principal_isotropy, "D_2*");
        let d = GroupDiagram::su2(4, 1).unwrap();
        assert_eq!(d.singular_isotropy, "SU(2)");
        assert!(GroupDiagram::su2(2, 3).is_err());
        assert!(GroupDiagram::su2(4, 2).is_err());
        let p = GroupDiagram::product(3).unwrap();
        assert_eq!(p.singular_isotropy, "SO(3)");
        assert!(GroupDiagram::product(4).is_err());
    }

    #[test]
    fn admissibility_checks() {
        let sin3 = || {
            [
                ScalarFunction::sin(1.0),
                ScalarFunction::sin(1.0),
                ScalarFunction::sin(1.0),
            ]
        };
        assert!(DiagonalMetric::new(sin3(), (0.0, 3.0)).is_ok());
        // Negative inside: sin on (0, 5) dips below zero.
        assert!(DiagonalMetric::new(sin3(), (0.0, 5.0)).is_err());
        // Identically zero function.
        let z = [
            ScalarFunction::zero(),
            ScalarFunction::sin(1.0),
            ScalarFunction::sin(1.0),
        ];
        assert!(matches!(
            DiagonalMetric::new(z, (0.0, 3.0)),
            Err(Error::DegenerateAnsatz)
        ));
        // Backwards interval.
        assert!(DiagonalMetric::new(sin3(), (1.0, 0.0)).is_err());
    }

    #[test]
    fn scaling_moves_values_and_domain() {
        let m = DiagonalMetric::new(
            [
                ScalarFunction::sin(1.0),
                ScalarFunction::cos(1.0),
                ScalarFunction::constant(1.0),
            ],
            (0.0, 1.5),
        )
        .unwrap();
        let s = m.scaled(2.0).unwrap();
        assert_eq!(s.domain(), (0.0, 3.0));
        let base = m.vals(0.7);
        let moved = s.vals(1.4);
        for i in 0..3 {
            assert!((moved[i] - 2.0 * base[i]).abs() < 1e-12);
        }
        assert!(m.scaled(-1.0).is_err());
    }

    #[test]
    fn reflection_and_permutation() {
        let m = DiagonalMetric::new(
            [
                ScalarFunction::sin(1.0),
                ScalarFunction::cos(1.0).scale(2.0),
                ScalarFunction::constant(3.0),
            ],
            (0.0, 1.5),
        )
        .unwrap();
        let r = m.reflected();
        assert!((r.vals(0.4)[0] - m.vals(1.1)[0]).abs() < 1e-12);
        let p = m.permuted([2, 0, 1]);
        let (a, b) = (p.vals(0.8), m.vals(0.8));
        assert!((a[0] - b[2]).abs() < 1e-15);
        assert!((a[1] - b[0]).abs() < 1e-15);
        assert!((a[2] - b[1]).abs() < 1e-15);
    }

    #[test]
    fn eigen_tracking_sees_crossing_through_rotation() {
        // Branches 1 + t and 2 - t cross at t = 0.5; a fixed rotation mixes
        // the coordinates so the crossing is invisible to sorted eigenvalues.
        let (c, s) = (0.8f64, 0.6f64);
        let endo = |t: f64| {
            let d = [1.0 + t, 2.0 - t, 5.0];
            // R diag(d) R^T with R a rotation in the (0, 1) plane.
            [
                [c * c * d[0] + s * s * d[1], c * s * (d[1] - d[0]), 0.0],
                [c * s * (d[1] - d[0]), s * s * d[0] + c * c * d[1], 0.0],
                [0.0, 0.0, d[2]],
            ]
        };
        let track = eigen_track(endo, (0.0, 0.8), 64).unwrap();
        assert_eq!(track.pattern, vec![1, 1, 1]);
        assert_eq!(track.crossings.len(), 1);
        assert!(
            (track.crossings[0] - 0.5).abs() < 1e-7,
            "{:?}",
            track.crossings
        );
    }

    #[test]
    fn equal_branches_do_not_count_as_crossings() {
        let endo = |t: f64| [[1.0 + t, 0.0, 0.0], [0.0, 1.0 + t, 0.0], [0.0, 0.0, 3.0]];
        let track = eigen_track(endo, (0.0, 1.0), 64).unwrap();
        assert_eq!(track.pattern, vec![2, 1]);
        assert!(track.crossings.is_empty());
    }

    #[test]
    fn degenerate_endomorphism_is_reported() {
        let m = Metric::Diagonal(
            DiagonalMetric::new(
                [
                    ScalarFunction::sin(1.0),
                    ScalarFunction::sin(1.0),
                    ScalarFunction::sin(1.0),
                ],
                (0.0, 3.0),
            )
            .unwrap(),
        );
        // Window touching the collapse point makes the endomorphism singular.
        let endo = orbit_endomorphism(&m);
        assert!(matches!(
            eigen_track(endo, (0.0, 1.0), 32),
            Err(Error::DegenerateMetric(_))
        ));
    }
}
