//! Randomized structural laws. These complement the deterministic
//! acceptance suite with generator-driven coverage of the algebraic layer
//! (normal forms, series arithmetic) and the geometric layer (scaling,
//! relabeling, expansion consistency, constancy certificates).

use curvhom_core::analytic::{Basis, ScalarFunction, Term};
use curvhom_core::catalog::{catalog_get, catalog_ids};
use curvhom_core::curvature::{
    component_series, curvature_components, is_curvature_homogeneous, ricci, sample_window,
    solve_connection_a,
};
use curvhom_core::defaults::{CH_SAMPLES, CH_TOL, SERIES_ORDER};
use curvhom_core::metrics::{DiagonalMetric, Metric};
use curvhom_core::series::{LaurentSeries, TaylorSeries};
use curvhom_core::smoothness::{check_smoothness, End, Verdict};
use proptest::prelude::*;

fn term_strategy() -> impl Strategy<Value = Term> {
    (
        -3.0f64..3.0,
        0u32..3,
        0usize..4,
        prop::sample::select(vec![0.5f64, 1.0, 1.5, 2.0, 3.0]),
        prop::bool::ANY,
    )
        .prop_map(|(coeff, power, kind, rate_mag, flip)| {
            let kind = match kind {
                0 => Basis::One,
                1 => Basis::Sin,
                2 => Basis::Cos,
                _ => Basis::Exp,
            };
            let rate = if flip { -rate_mag } else { rate_mag };
            Term {
                coeff,
                power,
                kind,
                rate,
            }
        })
}

fn function_strategy() -> impl Strategy<Value = ScalarFunction> {
    prop::collection::vec(term_strategy(), 1..5).prop_map(ScalarFunction::from_terms)
}

/// Strictly positive function a exp(dt) + b exp(-dt).
fn exp_sum(a: f64, b: f64, d: f64) -> ScalarFunction {
    ScalarFunction::exp(d)
        .scale(a)
        .add(&ScalarFunction::exp(-d).scale(b))
}

fn exp_metric(params: [f64; 9]) -> DiagonalMetric {
    let v = [
        exp_sum(params[0], params[1], params[2]),
        exp_sum(params[3], params[4], params[5]),
        exp_sum(params[6], params[7], params[8]),
    ];
    DiagonalMetric::new(v, (0.0, 2.0)).expect("exponential sums stay positive")
}

fn amplitude() -> impl Strategy<Value = f64> {
    0.3f64..2.5
}

fn rate() -> impl Strategy<Value = f64> {
    0.15f64..1.2
}

fn exp_metric_strategy() -> impl Strategy<Value = DiagonalMetric> {
    [
        amplitude().boxed(),
        amplitude().boxed(),
        rate().boxed(),
        amplitude().boxed(),
        amplitude().boxed(),
        rate().boxed(),
        amplitude().boxed(),
        amplitude().boxed(),
        rate().boxed(),
    ]
    .prop_map(exp_metric)
}

proptest! {
    #[test]
    fn render_parse_round_trip(f in function_strategy()) {
        let text = f.to_string();
        let back = ScalarFunction::parse(&text)
            .unwrap_or_else(|e| panic!("could not re-parse `{text}`: {e}"));
        prop_assert_eq!(f, back);
    }

    #[test]
    fn reflection_is_involutive(f in function_strategy(), c in -2.0f64..2.0) {
        let twice = f.reflect(c).reflect(c);
        for k in 0..9 {
            let t = -1.0 + 0.25 * k as f64;
            let (a, b) = (twice.evaluate(t), f.evaluate(t));
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "{a} vs {b} at t={t}");
        }
    }

    #[test]
    fn reflection_matches_pointwise(f in function_strategy(), c in -2.0f64..2.0) {
        let g = f.reflect(c);
        for k in 0..9 {
            let t = -1.0 + 0.25 * k as f64;
            let (a, b) = (g.evaluate(t), f.evaluate(c - t));
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "{a} vs {b} at t={t}");
        }
    }

    #[test]
    fn rescaling_matches_pointwise(f in function_strategy(), lambda in 0.4f64..3.0) {
        let g = f.rescale_arg(lambda).unwrap();
        for k in 0..9 {
            let t = -1.0 + 0.25 * k as f64;
            let (a, b) = (g.evaluate(t), f.evaluate(t / lambda));
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()), "{a} vs {b} at t={t}");
        }
    }

    #[test]
    fn differentiation_is_linear(f in function_strategy(), g in function_strategy()) {
        let lhs = f.add(&g).differentiate();
        let rhs = f.differentiate().add(&g.differentiate());
        for k in 0..9 {
            let t = -1.0 + 0.25 * k as f64;
            let (a, b) = (lhs.evaluate(t), rhs.evaluate(t));
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn series_product_matches_function_product(
        f in function_strategy(),
        g in function_strategy(),
        base in -1.0f64..1.0,
    ) {
        let sf = TaylorSeries::of(&f, base, 16);
        let sg = TaylorSeries::of(&g, base, 16);
        let prod = sf.mul(&sg);
        for h in [-0.05, -0.01, 0.02, 0.04] {
            let t = base + h;
            let want = f.evaluate(t) * g.evaluate(t);
            let got = prod.evaluate(t);
            prop_assert!((got - want).abs() <= 1e-8 * (1.0 + want.abs()), "{got} vs {want}");
        }
    }

    #[test]
    fn laurent_division_inverts_multiplication(
        lead_a in -2i64..3,
        lead_b in -2i64..3,
        ca in prop::collection::vec(-2.0f64..2.0, 6..9),
        cb0 in prop::sample::select(vec![0.7f64, -1.3, 2.1]),
        cb in prop::collection::vec(-2.0f64..2.0, 5..8),
    ) {
        let a = LaurentSeries { lead: lead_a, coeffs: ca };
        let mut coeffs = vec![cb0];
        coeffs.extend(cb);
        let b = LaurentSeries { lead: lead_b, coeffs };
        let back = a.div(&b).unwrap().mul(&b);
        let hi = back.max_order();
        let mut k = back.lead;
        while k <= hi {
            let (got, want) = (back.coeff(k), a.coeff(k));
            prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()),
                "order {k}: {got} vs {want}");
            k += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scaling_multiplies_components(m in exp_metric_strategy(), lambda in 0.5f64..2.5) {
        let scaled = m.scaled(lambda).unwrap();
        for t in [0.3, 0.9, 1.6] {
            let base = curvature_components(&m, t).unwrap().as_vec9();
            let moved = curvature_components(&scaled, lambda * t).unwrap().as_vec9();
            for i in 0..9 {
                let want = base[i] / (lambda * lambda);
                prop_assert!(
                    (moved[i] - want).abs() <= 1e-9 * (1.0 + want.abs()),
                    "slot {i}: {} vs {want}", moved[i]
                );
            }
        }
    }

    #[test]
    fn relabeling_permutes_components(m in exp_metric_strategy(), p in 0usize..6) {
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let perm = perms[p];
        for t in [0.4, 1.1] {
            let want = curvature_components(&m, t).unwrap().permuted(perm).as_vec9();
            let got = curvature_components(&m.permuted(perm), t).unwrap().as_vec9();
            for i in 0..9 {
                prop_assert!(
                    (got[i] - want[i]).abs() <= 1e-10 * (1.0 + want[i].abs()),
                    "perm {perm:?} slot {i}: {} vs {}", got[i], want[i]
                );
            }
        }
    }

    #[test]
    fn interior_expansion_tracks_components(m in exp_metric_strategy(), h in -0.02f64..0.02) {
        let t0 = 1.0;
        let series = component_series(&m, t0, SERIES_ORDER).unwrap();
        let direct = curvature_components(&m, t0 + h).unwrap();
        for i in 0..3 {
            let triples = [
                (series.kappa[i].evaluate(t0 + h), direct.kappa[i]),
                (series.mixed[i].evaluate(t0 + h), direct.mixed[i]),
                (series.radial[i].evaluate(t0 + h), direct.radial[i]),
            ];
            for (got, want) in triples {
                prop_assert!((got - want).abs() <= 1e-8 * (1.0 + want.abs()),
                    "{got} vs {want} at h={h}");
            }
        }
    }

    #[test]
    fn generic_exponential_metrics_are_not_homogeneous(m in exp_metric_strategy()) {
        let report = is_curvature_homogeneous(&Metric::Diagonal(m), CH_SAMPLES, CH_TOL).unwrap();
        prop_assert!(!report.homogeneous, "deviation {}", report.max_deviation);
    }

    #[test]
    fn constancy_certificate_on_catalog(idx in 0usize..14, frac in 0.2f64..0.8) {
        let ids = catalog_ids();
        let entry = catalog_get(ids[idx]).unwrap();
        if let Metric::Diagonal(d) = entry.metric {
            let window = sample_window(&Metric::Diagonal(d.clone())).unwrap();
            let t = window.0 + frac * (window.1 - window.0);
            let a = solve_connection_a(&d, t).unwrap();
            prop_assert!(a.residual <= 1e-8, "{}: residual {:e}", ids[idx], a.residual);
        }
    }

    #[test]
    fn smoothness_is_scale_invariant(lambda in 0.5f64..3.0, which in 0usize..3) {
        let id = ["ex1", "ex5", "tsukada"][which];
        let entry = catalog_get(id).unwrap();
        let diagram = entry.end_diagrams[0].as_ref().unwrap();
        let scaled = entry.metric.scaled(lambda).unwrap();
        let report = check_smoothness(&scaled, End::Left, diagram).unwrap();
        prop_assert_eq!(report.verdict, Verdict::Smooth, "{} at lambda={}", id, lambda);
    }
}

#[test]
fn einstein_flags_match_ricci() {
    for id in catalog_ids() {
        let entry = catalog_get(id).unwrap();
        let window = sample_window(&entry.metric).unwrap();
        let t = 0.5 * (window.0 + window.1);
        let ric = ricci(&entry.metric, t).unwrap();
        let spread = ric.iter().fold(f64::NEG_INFINITY, |m, r| m.max(*r))
            - ric.iter().fold(f64::INFINITY, |m, r| m.min(*r));
        if entry.einstein {
            assert!(
                spread < 1e-9,
                "{id}: flagged Einstein but Ricci spread is {spread}"
            );
        } else {
            assert!(
                spread > 1e-3,
                "{id}: flagged non-Einstein but Ricci spread is {spread}"
            );
        }
    }
}
