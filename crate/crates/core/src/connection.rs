//! Levi-Civita connection in the adapted orthonormal frame, an independent
//! curvature computation from it, and the covariant derivative norms of the
//! curvature and Ricci tensors.
//!
//! The frame is E_i = X_i / v_i with X_i the action fields and E_4 = d/dt.
//! The connection coefficients gamma\[a\]\[b\]\[c\] = <nabla_{E_a} E_b, E_c>
//! depend only on t, are skew in the last two slots, and vanish for a = 4.

use crate::curvature::{
    assemble_tensor, component_series, product_component_series, CurvatureData,
};
use crate::defaults::{EPS_POS, FD_STEP};
use crate::metrics::{DiagonalMetric, Metric, ProductMetric};
use crate::{Error, Result};

type Gamma = [[[f64; 4]; 4]; 4];
type Tensor4 = [[[[f64; 4]; 4]; 4]; 4];

fn permutation_sign(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

fn gamma_from_values(v: [f64; 3], dv: [f64; 3]) -> Gamma {
    let mut g = [[[0.0; 4]; 4]; 4];
    let vvv = v[0] * v[1] * v[2];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let s = permutation_sign(a, b, c);
                if s != 0.0 {
                    g[a][b][c] = s * (v[b] * v[b] + v[c] * v[c] - v[a] * v[a]) / vvv;
                }
            }
        }
    }
    for i in 0..3 {
        g[i][3][i] = dv[i] / v[i];
        g[i][i][3] = -dv[i] / v[i];
    }
    g
}

fn check_point(domain: (f64, f64), t: f64) -> Result<()> {
    if !(t >= domain.0 - 1e-7 && t <= domain.1 + 1e-7) {
        return Err(Error::Domain(format!(
            "t = {t} outside [{}, {}]",
            domain.0, domain.1
        )));
    }
    Ok(())
}

/// Connection coefficients of a diagonal metric at an interior point.
pub fn christoffels(m: &DiagonalMetric, t: f64) -> Result<Gamma> {
    check_point(m.domain(), t)?;
    let v = m.vals(t);
    if v.iter().any(|&x| !(x > EPS_POS)) {
        return Err(Error::Pole);
    }
    Ok(gamma_from_values(v, m.dvals(t)))
}

fn product_gamma(p: &ProductMetric, t: f64) -> Result<Gamma> {
    check_point(p.domain(), t)?;
    let [f, df, _] = p.sphere_vals(t);
    let [g, dg, _] = p.circle_vals(t);
    if !(f > EPS_POS) || !(g > EPS_POS) {
        return Err(Error::Pole);
    }
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for (i, rate) in [(0, df / f), (1, df / f), (2, dg / g)] {
        gamma[i][3][i] = rate;
        gamma[i][i][3] = -rate;
    }
    Ok(gamma)
}

/// Curvature tensor computed from the connection coefficients alone, with
/// the t-derivative of the coefficients taken by central differences plus
/// one Richardson step. Independent of the closed-form component formulas.
pub fn curvature_from_connection(m: &DiagonalMetric, t: f64) -> Result<Tensor4> {
    let g = christoffels(m, t)?;
    let central = |h: f64| -> Result<Gamma> {
        let gp = christoffels(m, t + h)?;
        let gm = christoffels(m, t - h)?;
        let mut d = [[[0.0; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    d[a][b][c] = (gp[a][b][c] - gm[a][b][c]) / (2.0 * h);
                }
            }
        }
        Ok(d)
    };
    let coarse = central(FD_STEP)?;
    let fine = central(0.5 * FD_STEP)?;
    let mut dg = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                dg[a][b][c] = (4.0 * fine[a][b][c] - coarse[a][b][c]) / 3.0;
            }
        }
    }
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let mut val = 0.0;
                    if a == 3 {
                        val += dg[b][c][d];
                    }
                    if b == 3 {
                        val -= dg[a][c][d];
                    }
                    for mm in 0..4 {
                        val += g[b][c][mm] * g[a][mm][d] - g[a][c][mm] * g[b][mm][d];
                        val -= (g[a][b][mm] - g[b][a][mm]) * g[mm][c][d];
                    }
                    out[a][b][c][d] = -val;
                }
            }
        }
    }
    Ok(out)
}

/// Curvature tensor, its t-derivative, the Ricci eigenvalues, their
/// derivatives, and the connection coefficients, all at one point.
struct PointData {
    gamma: Gamma,
    r: Tensor4,
    dr: Tensor4,
    ric: [f64; 4],
    dric: [f64; 4],
}

fn point_data(m: &Metric, t: f64) -> Result<PointData> {
    match m {
        Metric::Diagonal(d) => {
            let gamma = christoffels(d, t)?;
            let s = component_series(d, t, 1)?;
            let at = |k: usize| CurvatureData {
                kappa: [
                    s.kappa[0].coeff(k),
                    s.kappa[1].coeff(k),
                    s.kappa[2].coeff(k),
                ],
                mixed: [
                    s.mixed[0].coeff(k),
                    s.mixed[1].coeff(k),
                    s.mixed[2].coeff(k),
                ],
                radial: [
                    s.radial[0].coeff(k),
                    s.radial[1].coeff(k),
                    s.radial[2].coeff(k),
                ],
            };
            let c0 = at(0);
            let c1 = at(1);
            let eig = |c: &CurvatureData| {
                [
                    c.kappa[0] + c.kappa[1] + c.radial[0],
                    c.kappa[0] + c.kappa[2] + c.radial[1],
                    c.kappa[1] + c.kappa[2] + c.radial[2],
                    c.radial[0] + c.radial[1] + c.radial[2],
                ]
            };
            Ok(PointData {
                gamma,
                r: assemble_tensor(&c0),
                dr: assemble_tensor(&c1),
                ric: eig(&c0),
                dric: eig(&c1),
            })
        }
        Metric::Product(p) => {
            let gamma = product_gamma(p, t)?;
            let s = product_component_series(p, t, 1)?;
            let at = |k: usize| CurvatureData {
                kappa: [s[0].coeff(k), s[1].coeff(k), s[1].coeff(k)],
                mixed: [0.0; 3],
                radial: [s[2].coeff(k), s[2].coeff(k), s[3].coeff(k)],
            };
            let c0 = at(0);
            let c1 = at(1);
            let eig = |c: &CurvatureData| {
                [
                    c.kappa[0] + c.kappa[1] + c.radial[0],
                    c.kappa[0] + c.kappa[1] + c.radial[0],
                    2.0 * c.kappa[1] + c.radial[2],
                    2.0 * c.radial[0] + c.radial[2],
                ]
            };
            Ok(PointData {
                gamma,
                r: assemble_tensor(&c0),
                dr: assemble_tensor(&c1),
                ric: eig(&c0),
                dric: eig(&c1),
            })
        }
    }
}

/// Norm of the covariant derivative of the Ricci tensor at an interior
/// point.
pub fn nabla_ricci_norm(m: &Metric, t: f64) -> Result<f64> {
    let pd = point_data(m, t)?;
    let mut sum = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let mut val = if a == 3 && b == c { pd.dric[b] } else { 0.0 };
                val -= pd.gamma[a][b][c] * (pd.ric[c] - pd.ric[b]);
                sum += val * val;
            }
        }
    }
    Ok(sum.sqrt())
}

/// Norm of the covariant derivative of the curvature tensor at an interior
/// point.
pub fn nabla_r_norm(m: &Metric, t: f64) -> Result<f64> {
    let pd = point_data(m, t)?;
    let mut sum = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    for e in 0..4 {
                        let mut val = if a == 3 { pd.dr[b][c][d][e] } else { 0.0 };
                        for mm in 0..4 {
                            val -= pd.gamma[a][b][mm] * pd.r[mm][c][d][e]
                                + pd.gamma[a][c][mm] * pd.r[b][mm][d][e]
                                + pd.gamma[a][d][mm] * pd.r[b][c][mm][e]
                                + pd.gamma[a][e][mm] * pd.r[b][c][d][mm];
                        }
                        sum += val * val;
                    }
                }
            }
        }
    }
    Ok(sum.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::ScalarFunction;
    use crate::catalog::catalog_get;
    use crate::curvature::curvature_components;

    fn diag(id: &str) -> DiagonalMetric {
        match catalog_get(id).unwrap().metric {
            Metric::Diagonal(d) => d,
            _ => panic!("expected a diagonal entry"),
        }
    }

    #[test]
    fn cone_over_unit_orbit_is_flat() {
        let m = DiagonalMetric::new(
            [
                ScalarFunction::monomial(1.0, 1),
                ScalarFunction::monomial(1.0, 1),
                ScalarFunction::monomial(1.0, 1),
            ],
            (0.0, 3.0),
        )
        .unwrap();
        let r = curvature_from_connection(&m, 1.0).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        assert!(r[a][b][c][d].abs() < 1e-9, "slot {a}{b}{c}{d}");
                    }
                }
            }
        }
    }

    #[test]
    fn connection_route_matches_component_route() {
        for (id, t) in [("ex8-sphere", 1.2), ("ex2", 0.4), ("tsukada", 1.0)] {
            let m = diag(id);
            let from_gamma = curvature_from_connection(&m, t).unwrap();
            let direct = assemble_tensor(&curvature_components(&m, t).unwrap());
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            let diff = (from_gamma[a][b][c][d] - direct[a][b][c][d]).abs();
                            assert!(diff < 1e-8, "{id} slot {a}{b}{c}{d}: {diff:e}");
                        }
                    }
                }
            }
        }
        let round = curvature_from_connection(&diag("ex8-sphere"), 1.2).unwrap();
        assert!((round[0][1][0][1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn derivative_norms_detect_the_non_symmetric_entry() {
        let m = catalog_get("tsukada").unwrap().metric;
        let got = nabla_ricci_norm(&m, 1.0).unwrap();
        let want = 8.0 * 2.0f64.sqrt() * 1.0f64.cosh();
        assert!((got - want).abs() < 1e-9 * want, "{got} vs {want}");
        assert!(nabla_r_norm(&m, 1.0).unwrap() > 1e-2);
        for id in ["ex5", "ex9"] {
            let m = catalog_get(id).unwrap().metric;
            assert!(nabla_r_norm(&m, 0.8).unwrap() < 1e-9, "{id}");
            assert!(nabla_ricci_norm(&m, 0.8).unwrap() < 1e-9, "{id}");
        }
    }
}
