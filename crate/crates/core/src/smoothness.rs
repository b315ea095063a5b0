//! Endpoint smoothness conditions.
//!
//! At an end of the interval where orbits collapse, the metric extends
//! smoothly over the singular orbit only if the Taylor coefficients of the
//! squared metric functions satisfy parity constraints tied to the group
//! diagram, and the collapsing function has the slice speed as its slope. A
//! slope that is off by an integer factor closes the manifold up as an
//! orbifold instead; anything else is not smooth.

use crate::analytic::ScalarFunction;
use crate::defaults::{COEFF_TOL, ORBIFOLD_INT_TOL, SMOOTH_ORDER};
use crate::metrics::{Group, GroupDiagram, Metric};
use crate::{Error, Result};

/// Which end of the interval to examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Smooth,
    Orbifold,
    NotSmooth,
}

/// One measured smoothness condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionCheck {
    pub id: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothnessReport {
    pub verdict: Verdict,
    /// Cone order when the end closes up as an orbifold.
    pub orbifold_order: Option<u32>,
    pub conditions: Vec<ConditionCheck>,
}

impl SmoothnessReport {
    pub fn failures(&self) -> Vec<&ConditionCheck> {
        self.conditions.iter().filter(|c| !c.pass).collect()
    }
}

fn max_abs(coeffs: &[f64]) -> f64 {
    coeffs
        .iter()
        .fold(0.0f64, |m, c| m.max(c.abs()))
        .max(1e-300)
}

/// Truncated coefficient product of two expansions of equal length.
fn square(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += coeffs[i] * coeffs[j];
        }
    }
    out
}

/// Largest relative magnitude of the selected coefficients.
fn worst(coeffs: &[f64], scale: f64, keep: impl Fn(usize) -> bool) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .filter(|(k, _)| keep(*k))
        .fold(0.0f64, |m, (_, c)| m.max(c.abs() / scale))
}

fn parity_condition(
    id: &str,
    coeffs: &[f64],
    scale: f64,
    keep: impl Fn(usize) -> bool,
) -> ConditionCheck {
    let measured = worst(coeffs, scale, keep);
    ConditionCheck {
        id: id.to_string(),
        measured,
        threshold: COEFF_TOL,
        pass: measured <= COEFF_TOL,
    }
}

fn nearest_integer(x: f64, min: f64) -> Option<f64> {
    let r = x.round();
    if (x - r).abs() <= ORBIFOLD_INT_TOL * x.abs().max(1.0) && r >= min {
        Some(r)
    } else {
        None
    }
}

/// Shared verdict ladder once the parity conditions are settled: the slope
/// must equal the slice speed for a smooth closure; an integer multiple or
/// divisor of it (or an integer slope of its own) closes an orbifold.
fn speed_ladder(
    beta: f64,
    speed: u32,
    parity_ok: bool,
    conditions: &mut Vec<ConditionCheck>,
) -> (Verdict, Option<u32>) {
    let a = speed as f64;
    let speed_pass = (beta - a).abs() <= ORBIFOLD_INT_TOL * a;
    conditions.push(ConditionCheck {
        id: "slice-speed".to_string(),
        measured: beta,
        threshold: a,
        pass: speed_pass,
    });
    if !parity_ok {
        return (Verdict::NotSmooth, None);
    }
    if speed_pass {
        return (Verdict::Smooth, None);
    }
    if let Some(r) = nearest_integer(beta / a, 2.0) {
        return (Verdict::Orbifold, Some(r as u32));
    }
    if beta > 0.0 {
        if let Some(r) = nearest_integer(a / beta, 2.0) {
            return (Verdict::Orbifold, Some(r as u32));
        }
    }
    if let Some(r) = nearest_integer(beta, 1.0) {
        if r != a {
            return (Verdict::Orbifold, Some(r as u32));
        }
    }
    (Verdict::NotSmooth, None)
}

fn collapse_count_condition(found: usize, expected: usize) -> ConditionCheck {
    ConditionCheck {
        id: "collapse-count".to_string(),
        measured: found as f64,
        threshold: expected as f64,
        pass: found == expected,
    }
}

/// Decides whether the metric closes up smoothly over the singular orbit at
/// the given end, for the given group diagram.
pub fn check_smoothness(m: &Metric, end: End, diagram: &GroupDiagram) -> Result<SmoothnessReport> {
    check_smoothness_at_order(m, end, diagram, SMOOTH_ORDER)
}

/// Same decision with an explicit Taylor order; conditions are tested on the
/// coefficients through that order.
pub fn check_smoothness_at_order(
    m: &Metric,
    end: End,
    diagram: &GroupDiagram,
    order: usize,
) -> Result<SmoothnessReport> {
    let (lo, hi) = m.domain();
    let oriented = |f: &ScalarFunction| match end {
        End::Left => f.clone(),
        End::Right => f.reflect(lo + hi),
    };
    match (m, diagram.group) {
        (Metric::Diagonal(d), Group::SU2) => {
            let coeffs: Vec<Vec<f64>> = d
                .functions()
                .iter()
                .map(|f| oriented(f).taylor_at(lo, order))
                .collect();
            let scales: Vec<f64> = coeffs.iter().map(|c| max_abs(c)).collect();
            let collapsed: Vec<usize> = (0..3)
                .filter(|&i| coeffs[i][0].abs() <= COEFF_TOL * scales[i])
                .collect();
            let mut conditions = Vec::new();
            match diagram.singular_codim {
                2 => {
                    conditions.push(collapse_count_condition(collapsed.len(), 1));
                    if collapsed.len() != 1 {
                        return Ok(SmoothnessReport {
                            verdict: Verdict::NotSmooth,
                            orbifold_order: None,
                            conditions,
                        });
                    }
                    let c = collapsed[0];
                    let others: Vec<usize> = (0..3).filter(|&i| i != c).collect();
                    let phi1 = square(&coeffs[c]);
                    let phi2 = square(&coeffs[others[0]]);
                    let phi3 = square(&coeffs[others[1]]);
                    let scale1 = max_abs(&phi1);
                    let scale23 = max_abs(&phi2).max(max_abs(&phi3));
                    conditions.push(parity_condition(
                        "collapsed-square-parity",
                        &phi1,
                        scale1,
                        |k| k % 2 == 1,
                    ));
                    let sum: Vec<f64> = phi2.iter().zip(&phi3).map(|(a, b)| a + b).collect();
                    conditions.push(parity_condition("pair-sum-parity", &sum, scale23, |k| {
                        k % 2 == 1
                    }));
                    // The difference of the squared pair may only carry the
                    // orders 4/a, 4/a + 2, 4/a + 4, ...
                    let start = (4 / diagram.slice_speed) as usize;
                    let diff: Vec<f64> = phi2.iter().zip(&phi3).map(|(a, b)| a - b).collect();
                    conditions.push(parity_condition(
                        "pair-difference-orders",
                        &diff,
                        scale23,
                        |k| k < start || (k - start) % 2 == 1,
                    ));
                    let parity_ok = conditions.iter().all(|c| c.pass);
                    let beta = coeffs[c][1];
                    let (verdict, orbifold_order) =
                        speed_ladder(beta, diagram.slice_speed, parity_ok, &mut conditions);
                    Ok(SmoothnessReport {
                        verdict,
                        orbifold_order,
                        conditions,
                    })
                }
                4 => {
                    conditions.push(collapse_count_condition(collapsed.len(), 3));
                    let mut all_pass = collapsed.len() == 3;
                    for i in 0..3 {
                        let cond = parity_condition(
                            &format!("profile-parity-{}", i + 1),
                            &coeffs[i],
                            scales[i],
                            |k| k % 2 == 0,
                        );
                        all_pass &= cond.pass;
                        conditions.push(cond);
                        let beta = coeffs[i][1];
                        let pass = (beta - 1.0).abs() <= ORBIFOLD_INT_TOL;
                        all_pass &= pass;
                        conditions.push(ConditionCheck {
                            id: format!("slice-speed-{}", i + 1),
                            measured: beta,
                            threshold: 1.0,
                            pass,
                        });
                    }
                    Ok(SmoothnessReport {
                        verdict: if all_pass {
                            Verdict::Smooth
                        } else {
                            Verdict::NotSmooth
                        },
                        orbifold_order: None,
                        conditions,
                    })
                }
                other => Err(Error::Config(format!(
                    "unsupported singular codimension {other} for this action"
                ))),
            }
        }
        (Metric::Product(p), Group::SO3xSO2) => {
            let f = oriented(p.sphere_function()).taylor_at(lo, order);
            let g = oriented(p.circle_function()).taylor_at(lo, order);
            let (fs, gs) = (max_abs(&f), max_abs(&g));
            let f_collapses = f[0].abs() <= COEFF_TOL * fs;
            let g_collapses = g[0].abs() <= COEFF_TOL * gs;
            // Codimension 2 collapses the circle factor, codimension 3 the
            // sphere factor.
            let (want_f, want_g) = match diagram.singular_codim {
                2 => (false, true),
                3 => (true, false),
                other => {
                    return Err(Error::Config(format!(
                        "unsupported singular codimension {other} for this action"
                    )))
                }
            };
            let mut conditions = Vec::new();
            let found = usize::from(f_collapses) + usize::from(g_collapses);
            let expected = usize::from(want_f) + usize::from(want_g);
            let count_ok = f_collapses == want_f && g_collapses == want_g;
            let mut count_cond = collapse_count_condition(found, expected);
            count_cond.pass = count_ok;
            conditions.push(count_cond);
            if !count_ok {
                return Ok(SmoothnessReport {
                    verdict: Verdict::NotSmooth,
                    orbifold_order: None,
                    conditions,
                });
            }
            let (w, w_scale, other, other_scale) = if want_g {
                (&g, gs, &f, fs)
            } else {
                (&f, fs, &g, gs)
            };
            conditions.push(parity_condition("collapsed-parity", w, w_scale, |k| {
                k % 2 == 0
            }));
            conditions.push(parity_condition(
                "transverse-parity",
                other,
                other_scale,
                |k| k % 2 == 1,
            ));
            let parity_ok = conditions.iter().all(|c| c.pass);
            let beta = w[1];
            let (verdict, orbifold_order) =
                speed_ladder(beta, diagram.slice_speed, parity_ok, &mut conditions);
            Ok(SmoothnessReport {
                verdict,
                orbifold_order,
                conditions,
            })
        }
        _ => Err(Error::Config(
            "diagram group does not match the metric shape".to_string(),
        )),
    }
}
