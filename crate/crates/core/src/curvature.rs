//! Frame curvature of the two metric shapes.
//!
//! For a diagonal metric the orthonormal frame is E_i = X_i* / v_i along the
//! orbits and E_4 = d/dt. The curvature tensor is determined by nine
//! component functions: three orbit sectional components kappa_ij, three
//! mixed components m_k = R(E_i, E_j, E_k, E_4) for (i, j, k) cyclic, and
//! three radial components r_i = R(E_i, E_4, E_i, E_4) = -v_i''/v_i. The
//! kappa formulas are written in a split form whose intermediates stay within
//! floating-point range even for fast-growing exponential profiles.
//!
//! For a product metric the four components are the sphere curvature, the
//! mixed sphere-circle and sphere-radial components, and the circle-radial
//! one.

use crate::defaults::{CH_MARGIN_FRAC, EPS_POS, ZERO_MARGIN_PAD};
use crate::linalg::lstsq;
use crate::metrics::{DiagonalMetric, Metric, ProductMetric};
use crate::series::TaylorSeries;
use crate::{Error, Result};

/// Allowance past the stated domain for evaluation points; covers round-off
/// from rescaled domains and finite-difference probes.
const DOMAIN_SLACK: f64 = 1e-7;

/// The nine curvature components of a diagonal metric at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureData {
    /// kappa\[0\] = kappa_12, kappa\[1\] = kappa_13, kappa\[2\] = kappa_23.
    pub kappa: [f64; 3],
    /// mixed\[k\] = R(E_i, E_j, E_k+1, E_4) for (i, j, k+1) cyclic.
    pub mixed: [f64; 3],
    /// radial\[i\] = -v_i'' / v_i.
    pub radial: [f64; 3],
}

/// Index of the unordered orbit pair {i, j}, i < j, in the kappa array.
fn kappa_index(i: usize, j: usize) -> usize {
    i + j - 1
}

impl CurvatureData {
    /// Components flattened as (kappa, mixed, radial).
    pub fn as_vec9(&self) -> [f64; 9] {
        [
            self.kappa[0],
            self.kappa[1],
            self.kappa[2],
            self.mixed[0],
            self.mixed[1],
            self.mixed[2],
            self.radial[0],
            self.radial[1],
            self.radial[2],
        ]
    }

    /// Components after relabeling the orbit directions by `perm` (the new
    /// direction i is the old direction perm\[i\]). The mixed components
    /// follow the relabeling with no sign change.
    pub fn permuted(&self, perm: [usize; 3]) -> CurvatureData {
        let mut kappa = [0.0; 3];
        let mut mixed = [0.0; 3];
        let mut radial = [0.0; 3];
        for i in 0..3 {
            mixed[i] = self.mixed[perm[i]];
            radial[i] = self.radial[perm[i]];
        }
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            kappa[kappa_index(i, j)] = self.kappa[kappa_index(a, b)];
        }
        CurvatureData {
            kappa,
            mixed,
            radial,
        }
    }
}

fn check_in_domain(domain: (f64, f64), t: f64) -> Result<()> {
    if !(t >= domain.0 - DOMAIN_SLACK && t <= domain.1 + DOMAIN_SLACK) {
        return Err(Error::Domain(format!(
            "t = {t} outside [{}, {}]",
            domain.0, domain.1
        )));
    }
    Ok(())
}

/// Curvature components of a diagonal metric at an interior point.
pub fn curvature_components(m: &DiagonalMetric, t: f64) -> Result<CurvatureData> {
    check_in_domain(m.domain(), t)?;
    let v = m.vals(t);
    let dv = m.dvals(t);
    let ddv = m.ddvals(t);
    if v.iter().any(|&x| !(x > EPS_POS)) {
        return Err(Error::Pole);
    }
    let kap = |i: usize, j: usize, k: usize| -> f64 {
        2.0 / (v[i] * v[i]) + 2.0 / (v[j] * v[j])
            - 3.0 * (v[k] / v[i]) * (v[k] / v[j]) / (v[i] * v[j])
            + (v[i] / v[j] - v[j] / v[i]).powi(2) / (v[k] * v[k])
            - (dv[i] / v[i]) * (dv[j] / v[j])
    };
    let mix = |i: usize, j: usize, k: usize| -> f64 {
        -2.0 * dv[k] / (v[i] * v[j])
            + (dv[i] / v[i]) * ((v[i] * v[i] + v[k] * v[k] - v[j] * v[j]) / (v[i] * v[j] * v[k]))
            + (dv[j] / v[j]) * ((v[j] * v[j] + v[k] * v[k] - v[i] * v[i]) / (v[i] * v[j] * v[k]))
    };
    Ok(CurvatureData {
        kappa: [kap(0, 1, 2), kap(0, 2, 1), kap(1, 2, 0)],
        mixed: [mix(1, 2, 0), mix(2, 0, 1), mix(0, 1, 2)],
        radial: [-ddv[0] / v[0], -ddv[1] / v[1], -ddv[2] / v[2]],
    })
}

/// The four curvature components of a product metric at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductCurvature {
    /// Sectional curvature of the sphere factor: (1 - f'^2) / f^2.
    pub sphere: f64,
    /// Mixed sphere-circle component: -f' g' / (f g).
    pub sphere_circle: f64,
    /// Sphere-radial component: -f'' / f.
    pub sphere_radial: f64,
    /// Circle-radial component: -g'' / g.
    pub circle_radial: f64,
}

impl ProductCurvature {
    pub fn as_vec4(&self) -> [f64; 4] {
        [
            self.sphere,
            self.sphere_circle,
            self.sphere_radial,
            self.circle_radial,
        ]
    }
}

pub fn product_curvature(m: &ProductMetric, t: f64) -> Result<ProductCurvature> {
    check_in_domain(m.domain(), t)?;
    let [f, df, ddf] = m.sphere_vals(t);
    let [g, dg, ddg] = m.circle_vals(t);
    if !(f > EPS_POS) || !(g > EPS_POS) {
        return Err(Error::Pole);
    }
    Ok(ProductCurvature {
        sphere: (1.0 - df * df) / (f * f),
        sphere_circle: -df * dg / (f * g),
        sphere_radial: -ddf / f,
        circle_radial: -ddg / g,
    })
}

/// Ricci eigenvalues in frame order. Diagonal metrics: (E_1, E_2, E_3, E_4).
/// Product metrics: (sphere, sphere, circle, radial).
pub fn ricci(m: &Metric, t: f64) -> Result<[f64; 4]> {
    match m {
        Metric::Diagonal(d) => {
            let c = curvature_components(d, t)?;
            Ok([
                c.kappa[0] + c.kappa[1] + c.radial[0],
                c.kappa[0] + c.kappa[2] + c.radial[1],
                c.kappa[1] + c.kappa[2] + c.radial[2],
                c.radial[0] + c.radial[1] + c.radial[2],
            ])
        }
        Metric::Product(p) => {
            let c = product_curvature(p, t)?;
            Ok([
                c.sphere + c.sphere_circle + c.sphere_radial,
                c.sphere + c.sphere_circle + c.sphere_radial,
                2.0 * c.sphere_circle + c.circle_radial,
                2.0 * c.sphere_radial + c.circle_radial,
            ])
        }
    }
}

/// Sampling window for pointwise invariants: the domain shrunk by a relative
/// margin at each end, widened further past any zeros of the metric functions
/// (collapsing orbits make the components singular there).
pub fn sample_window(m: &Metric) -> Result<(f64, f64)> {
    let (lo, hi) = m.domain();
    let len = hi - lo;
    let mut margin_lo = CH_MARGIN_FRAC * len;
    let mut margin_hi = CH_MARGIN_FRAC * len;
    let grid = 2048usize;
    for f in m.radius_functions() {
        let mut zeros: Vec<f64> = Vec::new();
        let mut prev_t = lo;
        let mut prev_v = f.evaluate(lo);
        if prev_v.abs() <= EPS_POS {
            zeros.push(lo);
        }
        for k in 1..=grid {
            let t = lo + len * k as f64 / grid as f64;
            let v = f.evaluate(t);
            if v.abs() <= EPS_POS {
                zeros.push(t);
            } else if prev_v.abs() > EPS_POS && prev_v.signum() != v.signum() {
                let (mut a, mut b) = (prev_t, t);
                let mut fa = prev_v;
                for _ in 0..60 {
                    let mid = 0.5 * (a + b);
                    let fm = f.evaluate(mid);
                    if fm == 0.0 {
                        a = mid;
                        break;
                    }
                    if fm.signum() == fa.signum() {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                zeros.push(0.5 * (a + b));
            }
            prev_t = t;
            prev_v = v;
        }
        for z in zeros {
            if z - lo <= 0.5 * len {
                margin_lo = margin_lo.max(z - lo + ZERO_MARGIN_PAD);
            } else {
                margin_hi = margin_hi.max(hi - z + ZERO_MARGIN_PAD);
            }
        }
    }
    let window = (lo + margin_lo, hi - margin_hi);
    if !(window.0 < window.1) {
        return Err(Error::Domain(
            "no usable interior window between the zeros of the metric functions".to_string(),
        ));
    }
    Ok(window)
}

/// Outcome of the pointwise curvature-homogeneity decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChReport {
    pub homogeneous: bool,
    /// Largest relative spread of any component over the window.
    pub max_deviation: f64,
    pub window: (f64, f64),
}

/// Decides whether all curvature components are constant over the sampling
/// window, up to the relative tolerance `tol`.
pub fn is_curvature_homogeneous(m: &Metric, samples: usize, tol: f64) -> Result<ChReport> {
    let window = sample_window(m)?;
    let n = samples.max(2);
    let values_at = |t: f64| -> Result<Vec<f64>> {
        Ok(match m {
            Metric::Diagonal(d) => curvature_components(d, t)?.as_vec9().to_vec(),
            Metric::Product(p) => product_curvature(p, t)?.as_vec4().to_vec(),
        })
    };
    let mut mins: Vec<f64> = Vec::new();
    let mut maxs: Vec<f64> = Vec::new();
    for k in 0..n {
        let t = window.0 + (window.1 - window.0) * k as f64 / (n - 1) as f64;
        let vals = values_at(t)?;
        if mins.is_empty() {
            mins = vals.clone();
            maxs = vals;
        } else {
            for (i, v) in vals.iter().enumerate() {
                mins[i] = mins[i].min(*v);
                maxs[i] = maxs[i].max(*v);
            }
        }
    }
    let mut max_deviation = 0.0f64;
    for i in 0..mins.len() {
        let scale = 1.0 + maxs[i].abs().max(mins[i].abs());
        max_deviation = max_deviation.max((maxs[i] - mins[i]) / scale);
    }
    Ok(ChReport {
        homogeneous: max_deviation <= tol,
        max_deviation,
        window,
    })
}

/// Interior Taylor expansions of the nine diagonal components around t0.
#[derive(Debug, Clone)]
pub struct ComponentSeries {
    pub kappa: [TaylorSeries; 3],
    pub mixed: [TaylorSeries; 3],
    pub radial: [TaylorSeries; 3],
}

/// Expands the nine components at an interior point by exact series
/// arithmetic on the metric functions. Fails with [`Error::Pole`] at a zero
/// of a metric function.
pub fn component_series(m: &DiagonalMetric, t0: f64, order: usize) -> Result<ComponentSeries> {
    check_in_domain(m.domain(), t0)?;
    let pole = |e: Error| match e {
        Error::DivisionByZeroSeries => Error::Pole,
        other => other,
    };
    let funcs = m.functions();
    let mut v: Vec<TaylorSeries> = Vec::with_capacity(3);
    let mut dv: Vec<TaylorSeries> = Vec::with_capacity(3);
    let mut ddv: Vec<TaylorSeries> = Vec::with_capacity(3);
    for f in funcs.iter() {
        let d1 = f.differentiate();
        let d2 = d1.differentiate();
        v.push(TaylorSeries::of(f, t0, order));
        dv.push(TaylorSeries::of(&d1, t0, order));
        ddv.push(TaylorSeries::of(&d2, t0, order));
    }
    let konst = |c: f64| {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        TaylorSeries::new(t0, coeffs)
    };
    let sq = |s: &TaylorSeries| s.mul(s);
    let kap = |i: usize, j: usize, k: usize| -> Result<TaylorSeries> {
        let vi2 = sq(&v[i]);
        let vj2 = sq(&v[j]);
        let vk2 = sq(&v[k]);
        let a = konst(2.0).div(&vi2).map_err(pole)?;
        let b = konst(2.0).div(&vj2).map_err(pole)?;
        let c = vk2.scale(3.0).div(&vi2.mul(&vj2)).map_err(pole)?;
        let ratio = v[i]
            .div(&v[j])
            .map_err(pole)?
            .sub(&v[j].div(&v[i]).map_err(pole)?);
        let d = sq(&ratio).div(&vk2).map_err(pole)?;
        let e = dv[i]
            .div(&v[i])
            .map_err(pole)?
            .mul(&dv[j].div(&v[j]).map_err(pole)?);
        Ok(a.add(&b).sub(&c).add(&d).sub(&e))
    };
    let mix = |i: usize, j: usize, k: usize| -> Result<TaylorSeries> {
        let vijk = v[i].mul(&v[j]).mul(&v[k]);
        let a = dv[k].scale(-2.0).div(&v[i].mul(&v[j])).map_err(pole)?;
        let num_i = sq(&v[i]).add(&sq(&v[k])).sub(&sq(&v[j]));
        let b = dv[i]
            .div(&v[i])
            .map_err(pole)?
            .mul(&num_i.div(&vijk).map_err(pole)?);
        let num_j = sq(&v[j]).add(&sq(&v[k])).sub(&sq(&v[i]));
        let c = dv[j]
            .div(&v[j])
            .map_err(pole)?
            .mul(&num_j.div(&vijk).map_err(pole)?);
        Ok(a.add(&b).add(&c))
    };
    let rad = |i: usize| -> Result<TaylorSeries> { Ok(ddv[i].div(&v[i]).map_err(pole)?.neg()) };
    Ok(ComponentSeries {
        kappa: [kap(0, 1, 2)?, kap(0, 2, 1)?, kap(1, 2, 0)?],
        mixed: [mix(1, 2, 0)?, mix(2, 0, 1)?, mix(0, 1, 2)?],
        radial: [rad(0)?, rad(1)?, rad(2)?],
    })
}

/// Interior expansions of the four product components (sphere,
/// sphere-circle, sphere-radial, circle-radial), used by the covariant
/// derivative norms.
pub(crate) fn product_component_series(
    m: &ProductMetric,
    t0: f64,
    order: usize,
) -> Result<[TaylorSeries; 4]> {
    check_in_domain(m.domain(), t0)?;
    let pole = |e: Error| match e {
        Error::DivisionByZeroSeries => Error::Pole,
        other => other,
    };
    let f = m.sphere_function();
    let g = m.circle_function();
    let (df, dg) = (f.differentiate(), g.differentiate());
    let (ddf, ddg) = (df.differentiate(), dg.differentiate());
    let fs = TaylorSeries::of(f, t0, order);
    let gs = TaylorSeries::of(g, t0, order);
    let dfs = TaylorSeries::of(&df, t0, order);
    let dgs = TaylorSeries::of(&dg, t0, order);
    let ddfs = TaylorSeries::of(&ddf, t0, order);
    let ddgs = TaylorSeries::of(&ddg, t0, order);
    let konst = |c: f64| {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        TaylorSeries::new(t0, coeffs)
    };
    let sphere = konst(1.0)
        .sub(&dfs.mul(&dfs))
        .div(&fs.mul(&fs))
        .map_err(pole)?;
    let sphere_circle = dfs.mul(&dgs).neg().div(&fs.mul(&gs)).map_err(pole)?;
    let sphere_radial = ddfs.div(&fs).map_err(pole)?.neg();
    let circle_radial = ddgs.div(&gs).map_err(pole)?.neg();
    Ok([sphere, sphere_circle, sphere_radial, circle_radial])
}

/// Full (0,4) curvature tensor on frame indices (E_1, E_2, E_3, E_4) =
/// (0, 1, 2, 3), assembled from the nine components by the pair symmetries
/// R_abcd = -R_bacd = -R_abdc = R_cdab.
pub fn assemble_tensor(c: &CurvatureData) -> [[[[f64; 4]; 4]; 4]; 4] {
    fn pair_index(a: usize, b: usize) -> usize {
        match (a.min(b), a.max(b)) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (1, 2) => 3,
            (1, 3) => 4,
            (2, 3) => 5,
            _ => unreachable!("distinct indices expected"),
        }
    }
    // Symmetric matrix over the six index pairs.
    let mut v = [[0.0f64; 6]; 6];
    v[0][0] = c.kappa[0]; // {0,1} x {0,1}
    v[1][1] = c.kappa[1]; // {0,2} x {0,2}
    v[3][3] = c.kappa[2]; // {1,2} x {1,2}
    v[2][2] = c.radial[0]; // {0,3} x {0,3}
    v[4][4] = c.radial[1]; // {1,3} x {1,3}
    v[5][5] = c.radial[2]; // {2,3} x {2,3}
    v[3][2] = c.mixed[0]; // R_1203 = m_1
    v[2][3] = c.mixed[0];
    v[1][4] = -c.mixed[1]; // R_0213 = -m_2
    v[4][1] = -c.mixed[1];
    v[0][5] = c.mixed[2]; // R_0123 = m_3
    v[5][0] = c.mixed[2];
    let mut r = [[[[0.0f64; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            if a == b {
                continue;
            }
            for cc in 0..4 {
                for d in 0..4 {
                    if cc == d {
                        continue;
                    }
                    let s1 = if a < b { 1.0 } else { -1.0 };
                    let s2 = if cc < d { 1.0 } else { -1.0 };
                    r[a][b][cc][d] = s1 * s2 * v[pair_index(a, b)][pair_index(cc, d)];
                }
            }
        }
    }
    r
}

/// Least-squares certificate for the first-order homogeneity equation: a
/// skew generator A with dR/dt = A . R (acting on all four tensor slots).
/// A tiny residual certifies that the component derivatives are absorbed by
/// an infinitesimal frame rotation, as they must be when the components are
/// constant; a large residual is an obstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionCertificate {
    /// Generator entries over the pairs (0,1), (0,2), (0,3), (1,2), (1,3),
    /// (2,3).
    pub pair_coeffs: [f64; 6],
    /// Euclidean residual of the 20-equation least-squares system.
    pub residual: f64,
}

impl ConnectionCertificate {
    /// The generator as a skew matrix.
    pub fn matrix(&self) -> [[f64; 4]; 4] {
        const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut m = [[0.0; 4]; 4];
        for (k, (i, j)) in PAIRS.iter().enumerate() {
            m[*i][*j] = self.pair_coeffs[k];
            m[*j][*i] = -self.pair_coeffs[k];
        }
        m
    }
}

/// Solves the derivative-rotation system at an interior point.
pub fn solve_connection_a(m: &DiagonalMetric, t0: f64) -> Result<ConnectionCertificate> {
    const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let series = component_series(m, t0, 2)?;
    let at = |k: usize| -> CurvatureData {
        CurvatureData {
            kappa: [
                series.kappa[0].coeff(k),
                series.kappa[1].coeff(k),
                series.kappa[2].coeff(k),
            ],
            mixed: [
                series.mixed[0].coeff(k),
                series.mixed[1].coeff(k),
                series.mixed[2].coeff(k),
            ],
            radial: [
                series.radial[0].coeff(k),
                series.radial[1].coeff(k),
                series.radial[2].coeff(k),
            ],
        }
    };
    let r = assemble_tensor(&at(0));
    let dr = assemble_tensor(&at(1));
    // Equations: one per unordered pair of index pairs, except the
    // ({0,3},{1,2}) slot, which the first Bianchi identity ties to the other
    // two cross slots. That leaves the 20 independent entries of an algebraic
    // curvature tensor.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(20);
    let mut rhs: Vec<f64> = Vec::with_capacity(20);
    for pi in 0..6 {
        for qi in pi..6 {
            if (pi, qi) == (2, 3) {
                continue;
            }
            let (a, b) = PAIRS[pi];
            let (c, d) = PAIRS[qi];
            let idx = [a, b, c, d];
            rhs.push(dr[a][b][c][d]);
            let mut row = Vec::with_capacity(6);
            for &(x, y) in PAIRS.iter() {
                let mut coef = 0.0;
                for s in 0..4 {
                    if idx[s] == x {
                        let mut jj = idx;
                        jj[s] = y;
                        coef += r[jj[0]][jj[1]][jj[2]][jj[3]];
                    }
                    if idx[s] == y {
                        let mut jj = idx;
                        jj[s] = x;
                        coef -= r[jj[0]][jj[1]][jj[2]][jj[3]];
                    }
                }
                row.push(coef);
            }
            rows.push(row);
        }
    }
    let (x, residual) = lstsq(&rows, &rhs);
    Ok(ConnectionCertificate {
        pair_coeffs: [x[0], x[1], x[2], x[3], x[4], x[5]],
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::ScalarFunction;
    use crate::catalog::catalog_get;

    fn diag(id: &str) -> DiagonalMetric {
        match catalog_get(id).unwrap().metric {
            Metric::Diagonal(d) => d,
            _ => panic!("expected a diagonal entry"),
        }
    }

    #[test]
    fn product_of_spheres_components() {
        // (2 sin, 2 cos, 2): kappa = (0, 1, 1), m = (-1, 1, 0), r = (1, 1, 0).
        let m = diag("ex5");
        let c = curvature_components(&m, 0.6).unwrap();
        let want = CurvatureData {
            kappa: [0.0, 1.0, 1.0],
            mixed: [-1.0, 1.0, 0.0],
            radial: [1.0, 1.0, 0.0],
        };
        for (got, want) in c.as_vec9().iter().zip(want.as_vec9().iter()) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn mixed_components_sum_to_zero() {
        let m = diag("ex4");
        for t in [0.2, 0.5, 0.7] {
            let c = curvature_components(&m, t).unwrap();
            assert!((c.mixed[0] + c.mixed[1] + c.mixed[2]).abs() < 1e-12);
        }
    }

    #[test]
    fn tensor_symmetries_hold() {
        let c = CurvatureData {
            kappa: [1.5, -0.3, 2.2],
            mixed: [0.7, -1.1, 0.4],
            radial: [-0.2, 0.9, 1.3],
        };
        let r = assemble_tensor(&c);
        for a in 0..4 {
            for b in 0..4 {
                for x in 0..4 {
                    for y in 0..4 {
                        assert_eq!(r[a][b][x][y], -r[b][a][x][y]);
                        assert_eq!(r[a][b][x][y], -r[a][b][y][x]);
                        assert_eq!(r[a][b][x][y], r[x][y][a][b]);
                    }
                }
            }
        }
        // First Bianchi in the cross slots needs m_1 + m_2 + m_3 = 0.
        let c = CurvatureData {
            kappa: [0.0; 3],
            mixed: [0.7, -1.1, 0.4],
            radial: [0.0; 3],
        };
        let r = assemble_tensor(&c);
        let bianchi = r[0][1][2][3] + r[0][2][3][1] + r[0][3][1][2];
        assert!(bianchi.abs() < 1e-15);
    }

    #[test]
    fn window_avoids_zeros() {
        let entry = catalog_get("ex1").unwrap();
        let w = sample_window(&entry.metric).unwrap();
        let len = std::f64::consts::PI / 3.0;
        assert!((w.0 - 0.05 * len).abs() < 1e-9);
        assert!((w.1 - (len - 0.05 * len)).abs() < 1e-9);
        // An off-center zero forces a wider margin on its side. The profile
        // 1 - cos(t) touches zero at t = 0 without changing sign, so the
        // metric is admissible on the full interval.
        let m = Metric::Diagonal(
            DiagonalMetric::new(
                [
                    ScalarFunction::constant(1.0).sub(&ScalarFunction::cos(1.0)),
                    ScalarFunction::constant(1.0),
                    ScalarFunction::constant(1.0),
                ],
                (-1.0, 3.0),
            )
            .unwrap(),
        );
        let w = sample_window(&m).unwrap();
        assert!(w.0 > 0.0, "window {w:?} must clear the zero at t = 0");
        assert!((w.0 - (0.0 + 1e-3)).abs() < 1e-6, "window {w:?}");
    }

    #[test]
    fn homogeneity_decision_separates_cases() {
        let ch = is_curvature_homogeneous(&catalog_get("ex6").unwrap().metric, 100, 1e-8).unwrap();
        assert!(ch.homogeneous, "deviation {}", ch.max_deviation);
        let skew = Metric::Diagonal(
            DiagonalMetric::new(
                [
                    ScalarFunction::exp(0.4).add(&ScalarFunction::exp(-0.4)),
                    ScalarFunction::exp(0.9).scale(1.3),
                    ScalarFunction::constant(2.0),
                ],
                (0.0, 2.0),
            )
            .unwrap(),
        );
        let report = is_curvature_homogeneous(&skew, 100, 1e-8).unwrap();
        assert!(!report.homogeneous);
    }

    #[test]
    fn product_model_components() {
        let entry = catalog_get("ex9").unwrap();
        let p = match entry.metric {
            Metric::Product(p) => p,
            _ => unreachable!(),
        };
        let c = product_curvature(&p, 0.7).unwrap();
        for (got, want) in c.as_vec4().iter().zip([1.0, 1.0, 1.0, 1.0].iter()) {
            assert!((got - want).abs() < 1e-12);
        }
        let flat = catalog_get("ex10-flat").unwrap();
        let ric = ricci(&flat.metric, 1.3).unwrap();
        for (got, want) in ric.iter().zip([1.0, 1.0, 0.0, 0.0].iter()) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn certificate_residual_vanishes_on_constant_components() {
        let m = diag("ex2");
        let a = solve_connection_a(&m, 0.4).unwrap();
        assert!(a.residual < 1e-10, "residual {:e}", a.residual);
        let skew = a.matrix();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(skew[i][j], -skew[j][i]);
            }
        }
    }
}
