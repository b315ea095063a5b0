//! Classification of curvature-homogeneous metrics against the catalog:
//! constancy test, component fit modulo frame relabeling and homothety, and
//! the one-parameter family fit. Submodules hold the constant-component
//! constraint systems, the collapse-point Laurent expansions, and the
//! randomized exponential sweep.

pub mod laurent;
pub mod sweep;
pub mod systems;

use crate::catalog::{catalog, CatalogEntry};
use crate::curvature::{
    curvature_components, is_curvature_homogeneous, product_curvature, sample_window, CurvatureData,
};
use crate::defaults::{CH_SAMPLES, CH_TOL};
use crate::metrics::{GroupDiagram, Metric};
use crate::Result;

/// Components below this size count as identically zero when matching two
/// flat candidates.
const FLAT_TOL: f64 = 1e-9;

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[derive(Debug, Clone)]
pub enum Classification {
    /// Components vary across the window; the deviation is the worst
    /// relative spread seen.
    NotCurvatureHomogeneous { max_deviation: f64 },
    /// Components agree with a catalog entry after an optional frame
    /// relabeling, up to the homothety `input = scale * entry`. Family
    /// entries also report the family parameter.
    Match {
        id: String,
        scale: f64,
        family_param: Option<f64>,
        permutation: Option<[usize; 3]>,
    },
    /// Constant components that fit nothing in the catalog.
    UnknownCurvatureHomogeneous { components: Vec<f64> },
}

/// Least-squares factor `mu` with `mu * probe ~ target`, accepted when the
/// fit is within `tol` componentwise. Two all-zero vectors match with
/// factor one.
fn fit_scale(target: &[f64], probe: &[f64], tol: f64) -> Option<f64> {
    let t_max = target.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let p_max = probe.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if t_max <= FLAT_TOL && p_max <= FLAT_TOL {
        return Some(1.0);
    }
    let pp: f64 = probe.iter().map(|v| v * v).sum();
    if pp <= 0.0 {
        return None;
    }
    let mu = target.iter().zip(probe).map(|(a, b)| a * b).sum::<f64>() / pp;
    if mu <= 0.0 {
        return None;
    }
    let err = target
        .iter()
        .zip(probe)
        .fold(0.0f64, |m, (a, b)| m.max((a - mu * b).abs()));
    if err <= tol * (1.0 + t_max) {
        Some(mu)
    } else {
        None
    }
}

/// Unit-radial-curvature components of the one-parameter family indexed by
/// `beta`, in the standard nine-slot order.
fn family_nine(beta: f64) -> [f64; 9] {
    let b2 = beta * beta;
    [
        1.0 - 4.0 / b2,
        4.0 / b2,
        4.0 / b2,
        -2.0 / beta,
        2.0 / beta,
        0.0,
        1.0,
        1.0,
        0.0,
    ]
}

/// Fits the one-parameter family shape: two equal positive radial
/// components, the third zero, and an antisymmetric mixed pair determining
/// the parameter. Returns (scale, parameter, permutation).
fn fit_family(c: &CurvatureData, tol: f64) -> Option<(f64, f64, [usize; 3])> {
    let near = |x: f64, y: f64| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs()));
    for perm in PERMS {
        let cp = c.permuted(perm);
        let r = cp.radial;
        let mm = cp.mixed;
        if !near(r[0], r[1]) || !near(r[2], 0.0) || !near(mm[2], 0.0) || !near(mm[0], -mm[1]) {
            continue;
        }
        let s = 0.5 * (r[0] + r[1]);
        let y = 0.5 * (mm[1] - mm[0]);
        if s <= tol || y <= tol {
            continue;
        }
        let beta = 2.0 * s / y;
        let got = cp.as_vec9();
        let want = family_nine(beta);
        let g_max = got.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let ok = got
            .iter()
            .zip(want.iter())
            .all(|(g, w)| (g - s * w).abs() <= tol * (1.0 + g_max));
        if ok {
            return Some((0.5 * beta / s.sqrt(), beta, perm));
        }
    }
    None
}

fn entry_midpoint(entry: &CatalogEntry) -> Result<f64> {
    let w = sample_window(&entry.metric)?;
    Ok(0.5 * (w.0 + w.1))
}

/// Filters entries by the left-end diagram when one is supplied; an empty
/// filter result falls back to the full candidate list.
fn filter_candidates<'a>(
    mut candidates: Vec<&'a CatalogEntry>,
    diagram: Option<&GroupDiagram>,
) -> Vec<&'a CatalogEntry> {
    if let Some(dg) = diagram {
        let filtered: Vec<&CatalogEntry> = candidates
            .iter()
            .copied()
            .filter(|e| e.end_diagrams[0].as_ref() == Some(dg))
            .collect();
        if !filtered.is_empty() {
            candidates = filtered;
        }
    }
    candidates
}

/// Decides whether a metric is curvature homogeneous and, if so, which
/// catalog entry it matches up to homothety and frame relabeling.
pub fn classify_metric(
    m: &Metric,
    diagram: Option<&GroupDiagram>,
    tol: f64,
) -> Result<Classification> {
    let report = is_curvature_homogeneous(m, CH_SAMPLES, CH_TOL)?;
    if !report.homogeneous {
        return Ok(Classification::NotCurvatureHomogeneous {
            max_deviation: report.max_deviation,
        });
    }
    let mid = 0.5 * (report.window.0 + report.window.1);
    let entries = catalog();
    match m {
        Metric::Diagonal(d) => {
            let c = curvature_components(d, mid)?;
            let candidates = filter_candidates(
                entries
                    .iter()
                    .filter(|e| matches!(e.metric, Metric::Diagonal(_)))
                    .collect(),
                diagram,
            );
            for entry in candidates {
                let Metric::Diagonal(ed) = &entry.metric else {
                    continue;
                };
                let ce = curvature_components(ed, entry_midpoint(entry)?)?.as_vec9();
                for perm in PERMS {
                    let probe = c.permuted(perm).as_vec9();
                    if let Some(mu) = fit_scale(&ce, &probe, tol) {
                        return Ok(Classification::Match {
                            id: entry.id.to_string(),
                            scale: mu.sqrt(),
                            family_param: if entry.family { Some(2.0) } else { None },
                            permutation: Some(perm),
                        });
                    }
                }
            }
            if let Some((scale, beta, perm)) = fit_family(&c, tol) {
                return Ok(Classification::Match {
                    id: "ex5".to_string(),
                    scale,
                    family_param: Some(beta),
                    permutation: Some(perm),
                });
            }
            Ok(Classification::UnknownCurvatureHomogeneous {
                components: c.as_vec9().to_vec(),
            })
        }
        Metric::Product(p) => {
            let c = product_curvature(p, mid)?.as_vec4();
            let candidates = filter_candidates(
                entries
                    .iter()
                    .filter(|e| matches!(e.metric, Metric::Product(_)))
                    .collect(),
                diagram,
            );
            for entry in candidates {
                let Metric::Product(ep) = &entry.metric else {
                    continue;
                };
                let ce = product_curvature(ep, entry_midpoint(entry)?)?.as_vec4();
                if let Some(mu) = fit_scale(&ce, &c, tol) {
                    return Ok(Classification::Match {
                        id: entry.id.to_string(),
                        scale: mu.sqrt(),
                        family_param: None,
                        permutation: None,
                    });
                }
            }
            Ok(Classification::UnknownCurvatureHomogeneous {
                components: c.to_vec(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::ScalarFunction;
    use crate::catalog::{catalog_get, family_member};
    use crate::defaults::MATCH_TOL;
    use crate::metrics::{DiagonalMetric, ProductMetric};

    #[test]
    fn catalog_members_classify_as_themselves() {
        for id in ["ex1", "tsukada", "ex5", "ex9"] {
            let entry = catalog_get(id).unwrap();
            match classify_metric(&entry.metric, None, MATCH_TOL).unwrap() {
                Classification::Match { id: got, scale, .. } => {
                    assert_eq!(got, id);
                    assert!((scale - 1.0).abs() < 1e-6, "{id}: scale {scale}");
                }
                other => panic!("{id}: {other:?}"),
            }
        }
    }

    #[test]
    fn coinciding_local_geometry_resolves_to_the_earliest_entry() {
        // ex6 presents the same local geometry as ex2/ex4 through a
        // different collapse structure; componentwise data cannot separate
        // them, so the match lands on the earliest compatible entry.
        let entry = catalog_get("ex6").unwrap();
        match classify_metric(&entry.metric, None, MATCH_TOL).unwrap() {
            Classification::Match { id, scale, .. } => {
                assert_eq!(id, "ex4");
                assert!(scale > 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn homothety_factor_is_recovered() {
        let entry = catalog_get("tsukada").unwrap();
        let scaled = entry.metric.scaled(2.0).unwrap();
        match classify_metric(&scaled, None, MATCH_TOL).unwrap() {
            Classification::Match {
                id,
                scale,
                permutation,
                ..
            } => {
                assert_eq!(id, "tsukada");
                assert!((scale - 2.0).abs() < 1e-6, "scale {scale}");
                assert_eq!(permutation, Some([0, 1, 2]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn family_member_reports_its_parameter() {
        let member = family_member("ex5", 4.0).unwrap();
        match classify_metric(&member, None, MATCH_TOL).unwrap() {
            Classification::Match {
                id,
                scale,
                family_param,
                ..
            } => {
                assert_eq!(id, "ex5");
                assert!((scale - 2.0).abs() < 1e-6, "scale {scale}");
                assert!((family_param.unwrap() - 4.0).abs() < 1e-6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constant_components_outside_the_catalog_are_reported_unknown() {
        let p = ProductMetric::new(
            ScalarFunction::constant(2.0),
            ScalarFunction::sinh(1.0),
            (0.05, 2.0),
        )
        .unwrap();
        match classify_metric(&Metric::Product(p), None, MATCH_TOL).unwrap() {
            Classification::UnknownCurvatureHomogeneous { components } => {
                assert_eq!(components.len(), 4);
                assert!((components[0] - 0.25).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn varying_components_are_rejected_before_matching() {
        let funcs = [
            ScalarFunction::exp(0.4).add(&ScalarFunction::exp(-0.4)),
            ScalarFunction::exp(0.9)
                .scale(1.3)
                .add(&ScalarFunction::exp(-0.9).scale(0.6)),
            ScalarFunction::exp(0.2)
                .scale(2.1)
                .add(&ScalarFunction::exp(-0.2).scale(0.5)),
        ];
        let m = DiagonalMetric::new(funcs, (0.0, 2.0)).unwrap();
        match classify_metric(&Metric::Diagonal(m), None, MATCH_TOL).unwrap() {
            Classification::NotCurvatureHomogeneous { max_deviation } => {
                assert!(max_deviation > 1e-4);
            }
            other => panic!("{other:?}"),
        }
    }
}
