//! Subcommand implementations. Each returns the finished report text plus
//! the exit code its verdict earns; all reports serialize through fixed
//! field orders, so a fixed seed and config give byte-identical output.

use std::fmt::Write as _;

use curvhom_core::catalog as cat;
use curvhom_core::classifier::sweep::{exponential_sweep, SweepConfig};
use curvhom_core::classifier::systems::{get_system, system_ids, RootSearchConfig};
use curvhom_core::classifier::{classify_metric, Classification};
use curvhom_core::connection::{curvature_from_connection, nabla_r_norm, nabla_ricci_norm};
use curvhom_core::curvature::{
    assemble_tensor, curvature_components, is_curvature_homogeneous, product_curvature, ricci,
    sample_window, solve_connection_a,
};
use curvhom_core::defaults::{CH_SAMPLES, CH_TOL};
use curvhom_core::metrics::{GroupDiagram, Metric};
use curvhom_core::smoothness::{check_smoothness, check_smoothness_at_order, End, Verdict};
use curvhom_core::{Error, Result};
use serde::Serialize;

use crate::config::{self, MetricConfig};
use crate::{EndArg, Format, InputArgs, Outcome, EXIT_NEGATIVE, EXIT_POSITIVE};

const DIAGONAL_COLUMNS: &[&str] = &[
    "t",
    "k12",
    "k13",
    "k23",
    "m1",
    "m2",
    "m3",
    "r1",
    "r2",
    "r3",
    "a_residual",
];
const PRODUCT_COLUMNS: &[&str] = &[
    "t",
    "sphere",
    "sphere_circle",
    "sphere_radial",
    "circle_radial",
];
const INVARIANT_COLUMNS: &[&str] = &["t", "nabla_ric", "nabla_r", "ric1", "ric2", "ric3", "ric4"];

/// Componentwise tolerance when comparing found roots to the expected set.
const ROOT_MATCH_TOL: f64 = 1e-6;

// ---------------------------------------------------------------- inputs

/// Echo of the metric source, kept at the top of every report.
#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum InputEcho {
    Catalog(String),
    Config(String),
}

struct Resolved {
    echo: InputEcho,
    scale: Option<f64>,
    metric: Metric,
    ends: [Option<GroupDiagram>; 2],
}

/// Builds the metric named by `--catalog` or `--config`. For catalog
/// entries flagged as one-parameter families `--scale` selects the family
/// member; everywhere else it is the homothety factor.
fn resolve(input: &InputArgs, scale: Option<f64>) -> Result<Resolved> {
    if let Some(s) = scale {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Config(format!(
                "--scale must be a positive number, got {s}"
            )));
        }
    }
    match (&input.catalog, &input.config) {
        (Some(id), None) => {
            let entry = cat::catalog_get(id)?;
            let ends = entry.end_diagrams.clone();
            let metric = match scale {
                Some(s) if entry.family => cat::family_member(id, s)?,
                Some(s) => entry.metric.scaled(s)?,
                None => entry.metric,
            };
            Ok(Resolved {
                echo: InputEcho::Catalog(id.clone()),
                scale,
                metric,
                ends,
            })
        }
        (None, Some(path)) => {
            let cfg = config::load(path)?;
            let mut metric = cfg.to_metric()?;
            if let Some(s) = scale {
                metric = metric.scaled(s)?;
            }
            let diagram = cfg.diagram()?;
            Ok(Resolved {
                echo: InputEcho::Config(path.display().to_string()),
                scale,
                metric,
                ends: [diagram, None],
            })
        }
        _ => Err(Error::Config(
            "exactly one of --catalog or --config is required".to_string(),
        )),
    }
}

// ------------------------------------------------------------ validation

fn validate_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && (1e-14..=1e-2).contains(&tol)) {
        return Err(Error::Config(format!(
            "--tol must lie in [1e-14, 1e-2], got {tol}"
        )));
    }
    Ok(())
}

fn validate_samples(n: usize) -> Result<()> {
    if !(10..=1_000_000).contains(&n) {
        return Err(Error::Config(format!(
            "--samples must lie in [10, 1000000], got {n}"
        )));
    }
    Ok(())
}

fn validate_order(n: usize) -> Result<()> {
    if !(2..=64).contains(&n) {
        return Err(Error::Config(format!(
            "--order must lie in [2, 64], got {n}"
        )));
    }
    Ok(())
}

fn validate_grid(n: usize) -> Result<()> {
    if !(2..=200).contains(&n) {
        return Err(Error::Config(format!(
            "--samples (grid seeds per axis) must lie in [2, 200], got {n}"
        )));
    }
    Ok(())
}

// -------------------------------------------------------------- rendering

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("report serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn csv(columns: &[&str], rows: &[Vec<f64>]) -> String {
    let mut text = columns.join(",");
    text.push('\n');
    for row in rows {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                text.push(',');
            }
            let _ = write!(text, "{v}");
        }
        text.push('\n');
    }
    text
}

#[derive(Serialize)]
struct ProfileReport {
    input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<f64>,
    window: [f64; 2],
    samples: usize,
    columns: &'static [&'static str],
    rows: Vec<Vec<f64>>,
}

fn render_profile(
    r: Resolved,
    window: (f64, f64),
    columns: &'static [&'static str],
    rows: Vec<Vec<f64>>,
    fmt: Format,
) -> Result<Outcome> {
    let text = match fmt {
        Format::Csv => csv(columns, &rows),
        Format::Json => json(&ProfileReport {
            input: r.echo,
            scale: r.scale,
            window: [window.0, window.1],
            samples: rows.len(),
            columns,
            rows,
        })?,
    };
    Ok(Outcome {
        text,
        exit: EXIT_POSITIVE,
    })
}

fn sample_points((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

fn midpoints((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64)
        .collect()
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

// ---------------------------------------------------------------- catalog

#[derive(Serialize)]
struct CatalogRow {
    id: &'static str,
    manifold: &'static str,
    homogeneous: bool,
    einstein: bool,
    family: bool,
    #[serde(flatten)]
    metric: MetricConfig,
}

pub fn catalog() -> Result<Outcome> {
    let rows: Vec<CatalogRow> = cat::catalog()
        .into_iter()
        .map(|e| {
            let diagram = e.end_diagrams[0].as_ref().or(e.end_diagrams[1].as_ref());
            let metric = MetricConfig::of(&e.metric, diagram);
            CatalogRow {
                id: e.id,
                manifold: e.manifold,
                homogeneous: e.homogeneous,
                einstein: e.einstein,
                family: e.family,
                metric,
            }
        })
        .collect();
    Ok(Outcome {
        text: json(&rows)?,
        exit: EXIT_POSITIVE,
    })
}

// ----------------------------------------------------------- profiles

pub fn curvature(
    input: &InputArgs,
    scale: Option<f64>,
    samples: usize,
    fmt: Format,
) -> Result<Outcome> {
    validate_samples(samples)?;
    let r = resolve(input, scale)?;
    let window = sample_window(&r.metric)?;
    let ts = sample_points(window, samples);
    match &r.metric {
        Metric::Diagonal(d) => {
            let mut rows = Vec::with_capacity(samples);
            for &t in &ts {
                let c = curvature_components(d, t)?;
                let cert = solve_connection_a(d, t)?;
                rows.push(vec![
                    t,
                    c.kappa[0],
                    c.kappa[1],
                    c.kappa[2],
                    c.mixed[0],
                    c.mixed[1],
                    c.mixed[2],
                    c.radial[0],
                    c.radial[1],
                    c.radial[2],
                    cert.residual,
                ]);
            }
            render_profile(r, window, DIAGONAL_COLUMNS, rows, fmt)
        }
        Metric::Product(p) => {
            let mut rows = Vec::with_capacity(samples);
            for &t in &ts {
                let c = product_curvature(p, t)?;
                rows.push(vec![
                    t,
                    c.sphere,
                    c.sphere_circle,
                    c.sphere_radial,
                    c.circle_radial,
                ]);
            }
            render_profile(r, window, PRODUCT_COLUMNS, rows, fmt)
        }
    }
}

pub fn invariants(
    input: &InputArgs,
    scale: Option<f64>,
    samples: usize,
    fmt: Format,
) -> Result<Outcome> {
    validate_samples(samples)?;
    let r = resolve(input, scale)?;
    let window = sample_window(&r.metric)?;
    let ts = sample_points(window, samples);
    let mut rows = Vec::with_capacity(samples);
    for &t in &ts {
        let nric = nabla_ricci_norm(&r.metric, t)?;
        let nr = nabla_r_norm(&r.metric, t)?;
        let ric = ricci(&r.metric, t)?;
        rows.push(vec![t, nric, nr, ric[0], ric[1], ric[2], ric[3]]);
    }
    render_profile(r, window, INVARIANT_COLUMNS, rows, fmt)
}

// ----------------------------------------------------------- check-ch

#[derive(Serialize)]
struct ChCliReport {
    input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<f64>,
    samples: usize,
    tol: f64,
    window: [f64; 2],
    verdict: &'static str,
    homogeneous: bool,
    max_deviation: f64,
}

pub fn check_ch(
    input: &InputArgs,
    scale: Option<f64>,
    samples: usize,
    tol: f64,
) -> Result<Outcome> {
    validate_samples(samples)?;
    validate_tol(tol)?;
    let r = resolve(input, scale)?;
    let rep = is_curvature_homogeneous(&r.metric, samples, tol)?;
    let report = ChCliReport {
        input: r.echo,
        scale: r.scale,
        samples,
        tol,
        window: [rep.window.0, rep.window.1],
        verdict: if rep.homogeneous { "CH" } else { "NOT_CH" },
        homogeneous: rep.homogeneous,
        max_deviation: rep.max_deviation,
    };
    Ok(Outcome {
        text: json(&report)?,
        exit: if rep.homogeneous {
            EXIT_POSITIVE
        } else {
            EXIT_NEGATIVE
        },
    })
}

// -------------------------------------------------------- check-smooth

#[derive(Serialize)]
struct ConditionRow {
    id: String,
    measured: f64,
    threshold: f64,
    pass: bool,
}

#[derive(Serialize)]
struct EndReport {
    end: &'static str,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbifold_order: Option<u32>,
    conditions: Vec<ConditionRow>,
}

#[derive(Serialize)]
struct SmoothCliReport {
    input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<f64>,
    order: usize,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbifold_order: Option<u32>,
    ends: Vec<EndReport>,
}

fn verdict_rank(v: Verdict) -> u8 {
    match v {
        Verdict::Smooth => 0,
        Verdict::Orbifold => 1,
        Verdict::NotSmooth => 2,
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Smooth => "SMOOTH",
        Verdict::Orbifold => "ORBIFOLD",
        Verdict::NotSmooth => "NOT_SMOOTH",
    }
}

pub fn check_smooth(
    input: &InputArgs,
    scale: Option<f64>,
    end: Option<EndArg>,
    order: usize,
) -> Result<Outcome> {
    validate_order(order)?;
    let r = resolve(input, scale)?;
    let mut targets: Vec<(End, &'static str, GroupDiagram)> = Vec::new();
    let sides = [(End::Left, "left", 0usize), (End::Right, "right", 1usize)];
    for (which, name, idx) in sides {
        let wanted = match end {
            Some(EndArg::Left) => which == End::Left,
            Some(EndArg::Right) => which == End::Right,
            None => true,
        };
        if !wanted {
            continue;
        }
        match (&r.ends[idx], end) {
            (Some(d), _) => targets.push((which, name, d.clone())),
            (None, Some(_)) => {
                return Err(Error::Config(format!(
                    "no collapse diagram declared at the {name} end"
                )));
            }
            (None, None) => {}
        }
    }
    if targets.is_empty() {
        return Err(Error::Config(
            "no collapse diagram declared; nothing to check".to_string(),
        ));
    }

    let mut ends = Vec::new();
    let mut worst = Verdict::Smooth;
    let mut orbifold_order: Option<u32> = None;
    for (which, name, diagram) in targets {
        let rep = check_smoothness_at_order(&r.metric, which, &diagram, order)?;
        if verdict_rank(rep.verdict) > verdict_rank(worst) {
            worst = rep.verdict;
        }
        if rep.verdict == Verdict::Orbifold {
            orbifold_order = match (orbifold_order, rep.orbifold_order) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            };
        }
        ends.push(EndReport {
            end: name,
            verdict: verdict_name(rep.verdict),
            orbifold_order: rep.orbifold_order,
            conditions: rep
                .conditions
                .into_iter()
                .map(|c| ConditionRow {
                    id: c.id,
                    measured: c.measured,
                    threshold: c.threshold,
                    pass: c.pass,
                })
                .collect(),
        });
    }
    let report = SmoothCliReport {
        input: r.echo,
        scale: r.scale,
        order,
        verdict: verdict_name(worst),
        orbifold_order: if worst == Verdict::Orbifold {
            orbifold_order
        } else {
            None
        },
        ends,
    };
    Ok(Outcome {
        text: json(&report)?,
        exit: if worst == Verdict::NotSmooth {
            EXIT_NEGATIVE
        } else {
            EXIT_POSITIVE
        },
    })
}

// ------------------------------------------------------------ classify

#[derive(Serialize)]
struct MatchRow {
    id: String,
    scale: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    family_param: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    permutation: Option<[usize; 3]>,
}

#[derive(Serialize)]
struct ClassifyReport {
    input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<f64>,
    tol: f64,
    verdict: &'static str,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    best: Option<MatchRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<f64>>,
}

pub fn classify(input: &InputArgs, scale: Option<f64>, tol: f64) -> Result<Outcome> {
    validate_tol(tol)?;
    let r = resolve(input, scale)?;
    let diagram = r.ends[0].as_ref().or(r.ends[1].as_ref());
    let outcome = classify_metric(&r.metric, diagram, tol)?;
    let (verdict, best, max_deviation, components, exit) = match outcome {
        Classification::Match {
            id,
            scale,
            family_param,
            permutation,
        } => (
            "MATCH",
            Some(MatchRow {
                id,
                scale,
                family_param,
                permutation,
            }),
            None,
            None,
            EXIT_POSITIVE,
        ),
        Classification::NotCurvatureHomogeneous { max_deviation } => {
            ("NOT_CH", None, Some(max_deviation), None, EXIT_NEGATIVE)
        }
        Classification::UnknownCurvatureHomogeneous { components } => {
            ("UNKNOWN_CH", None, None, Some(components), EXIT_NEGATIVE)
        }
    };
    let report = ClassifyReport {
        input: r.echo,
        scale: r.scale,
        tol,
        verdict,
        best,
        max_deviation,
        components,
    };
    Ok(Outcome {
        text: json(&report)?,
        exit,
    })
}

// --------------------------------------------------------------- solve

#[derive(Serialize)]
struct RootRow {
    root: Vec<f64>,
    residual: f64,
}

#[derive(Serialize)]
struct SolveReport {
    system: &'static str,
    params: Vec<&'static str>,
    scale_invariant: bool,
    grid_per_axis: usize,
    #[serde(rename = "box")]
    search_box: Vec<[f64; 2]>,
    roots: Vec<RootRow>,
    families: Vec<Vec<f64>>,
    known: Vec<Vec<f64>>,
    matches_known: bool,
}

fn parse_boxes(text: &str, arity: usize) -> Result<Vec<(f64, f64)>> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != arity {
        return Err(Error::Config(format!(
            "--box needs {arity} lo:hi ranges, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|part| {
            let (lo, hi) = part.split_once(':').ok_or_else(|| {
                Error::Config(format!("--box range `{part}` must look like lo:hi"))
            })?;
            let lo: f64 = lo
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad --box bound `{lo}`")))?;
            let hi: f64 = hi
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad --box bound `{hi}`")))?;
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Config(format!(
                    "--box range must have lo < hi, got {lo}:{hi}"
                )));
            }
            Ok((lo, hi))
        })
        .collect()
}

/// Ray systems list every permutation of a root; fold the known set into
/// normalized family representatives (componentwise magnitude over the
/// smallest, sorted descending) before comparing against found families.
fn known_families(known: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for k in known {
        let min = k.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        if !(min > 1e-9) {
            continue;
        }
        let mut ray: Vec<f64> = k.iter().map(|v| v.abs() / min).collect();
        ray.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let dup = out.iter().any(|f| {
            f.len() == ray.len()
                && f.iter()
                    .zip(ray.iter())
                    .all(|(a, b)| (a - b).abs() <= ROOT_MATCH_TOL)
        });
        if !dup {
            out.push(ray);
        }
    }
    out
}

/// Same set test the acceptance checks use: equal counts and every expected
/// point hit componentwise within tolerance.
fn roots_match(found: &[Vec<f64>], known: &[Vec<f64>]) -> bool {
    if found.len() != known.len() {
        return false;
    }
    known.iter().all(|k| {
        found.iter().any(|f| {
            f.len() == k.len()
                && f.iter()
                    .zip(k.iter())
                    .all(|(a, b)| (a - b).abs() <= ROOT_MATCH_TOL)
        })
    })
}

pub fn solve(system: &str, box_spec: Option<&str>, grid: usize) -> Result<Outcome> {
    validate_grid(grid)?;
    let sys = get_system(system)?;
    let boxes = match box_spec {
        Some(text) => Some(parse_boxes(text, sys.arity())?),
        None => None,
    };
    let search_box: Vec<[f64; 2]> = boxes
        .clone()
        .unwrap_or_else(|| sys.default_box())
        .into_iter()
        .map(|(lo, hi)| [lo, hi])
        .collect();
    let found = sys.find_roots(&RootSearchConfig {
        grid_per_axis: grid,
        boxes,
    })?;
    let known = sys.known_roots();
    let families: Vec<Vec<f64>> = found
        .families
        .into_iter()
        .map(|f| f.representative)
        .collect();
    let matches_known = if sys.scale_invariant() {
        roots_match(&families, &known_families(&known))
    } else {
        roots_match(&found.roots, &known)
    };
    let roots: Vec<RootRow> = found
        .roots
        .into_iter()
        .map(|root| {
            let residual = norm2(&sys.residual(&root));
            RootRow { root, residual }
        })
        .collect();
    let report = SolveReport {
        system: sys.id(),
        params: sys.params().to_vec(),
        scale_invariant: sys.scale_invariant(),
        grid_per_axis: grid,
        search_box,
        roots,
        families,
        known,
        matches_known,
    };
    Ok(Outcome {
        text: json(&report)?,
        exit: if matches_known {
            EXIT_POSITIVE
        } else {
            EXIT_NEGATIVE
        },
    })
}

// ----------------------------------------------------------- reproduce

#[derive(Serialize)]
struct Row {
    id: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct ReproduceReport {
    seed: u64,
    draws: usize,
    passed: usize,
    failed: usize,
    rows: Vec<Row>,
}

fn push_row(rows: &mut Vec<Row>, id: String, outcome: Result<(bool, String)>) {
    let (pass, detail) = match outcome {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    rows.push(Row { id, pass, detail });
}

fn ch_row(e: &cat::CatalogEntry) -> Result<(bool, String)> {
    let rep = is_curvature_homogeneous(&e.metric, CH_SAMPLES, CH_TOL)?;
    Ok((
        rep.homogeneous,
        format!("max deviation {:.3e}", rep.max_deviation),
    ))
}

fn smooth_row(e: &cat::CatalogEntry) -> Result<(bool, String)> {
    let mut pass = true;
    let mut parts = Vec::new();
    let sides = [(End::Left, "left", 0usize), (End::Right, "right", 1usize)];
    for (which, name, idx) in sides {
        if let Some(d) = &e.end_diagrams[idx] {
            let rep = check_smoothness(&e.metric, which, d)?;
            if rep.verdict != Verdict::Smooth {
                pass = false;
            }
            parts.push(format!("{name} {}", verdict_name(rep.verdict)));
        }
    }
    Ok((pass, parts.join(", ")))
}

fn oracle_row(e: &cat::CatalogEntry) -> Result<(bool, String)> {
    let Metric::Diagonal(d) = &e.metric else {
        return Ok((true, "not a diagonal metric".to_string()));
    };
    let window = sample_window(&e.metric)?;
    let mut worst = 0.0f64;
    for t in midpoints(window, 10) {
        let direct = assemble_tensor(&curvature_components(d, t)?);
        let from_conn = curvature_from_connection(d, t)?;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        worst = worst.max((direct[i][j][k][l] - from_conn[i][j][k][l]).abs());
                    }
                }
            }
        }
    }
    Ok((
        worst < 1e-8,
        format!("two curvature routes differ by {worst:.3e}"),
    ))
}

fn roots_row(id: &str) -> Result<(bool, String)> {
    let sys = get_system(id)?;
    let found = sys.find_roots(&RootSearchConfig::default())?;
    let known = sys.known_roots();
    let families: Vec<Vec<f64>> = found
        .families
        .iter()
        .map(|f| f.representative.clone())
        .collect();
    let (matches, n_found, n_known) = if sys.scale_invariant() {
        let expected = known_families(&known);
        (
            roots_match(&families, &expected),
            families.len(),
            expected.len(),
        )
    } else {
        (
            roots_match(&found.roots, &known),
            found.roots.len(),
            known.len(),
        )
    };
    Ok((matches, format!("{n_found} found, {n_known} expected")))
}

fn sweep_row(draws: usize, seed: u64) -> Result<(bool, String)> {
    let cfg = SweepConfig {
        draws,
        seed,
        ..SweepConfig::default()
    };
    let out = exponential_sweep(&cfg);
    Ok((
        out.ch_found == 0,
        format!(
            "{} draws, {} curvature homogeneous",
            out.total_draws, out.ch_found
        ),
    ))
}

fn tsukada_components_row() -> Result<(bool, String)> {
    let e = cat::catalog_get("tsukada")?;
    let Metric::Diagonal(d) = &e.metric else {
        return Ok((false, "unexpected metric shape".to_string()));
    };
    let mut worst = 0.0f64;
    for t in [0.25, 0.7, 1.3] {
        let c = curvature_components(d, t)?;
        let expect_kappa = [-1.0, -1.0, 3.0];
        for i in 0..3 {
            worst = worst.max((c.kappa[i] - expect_kappa[i]).abs());
            worst = worst.max(c.mixed[i].abs());
            worst = worst.max((c.radial[i] + 1.0).abs());
        }
        worst = worst.max(((c.kappa[2] - c.kappa[0]) - 4.0).abs());
    }
    Ok((
        worst < 1e-9,
        format!("components off the constant model by {worst:.3e}"),
    ))
}

fn tsukada_ricci_row() -> Result<(bool, String)> {
    let e = cat::catalog_get("tsukada")?;
    let expect = [-3.0, 1.0, 1.0, -3.0];
    let mut worst = 0.0f64;
    for t in [0.25, 0.7, 1.3] {
        let ric = ricci(&e.metric, t)?;
        for i in 0..4 {
            worst = worst.max((ric[i] - expect[i]).abs());
        }
    }
    Ok((
        worst < 1e-9,
        format!("ricci off (-3,1,1,-3) by {worst:.3e}"),
    ))
}

fn tsukada_nabla_r_row() -> Result<(bool, String)> {
    let e = cat::catalog_get("tsukada")?;
    let window = sample_window(&e.metric)?;
    let mut smallest = f64::INFINITY;
    for t in midpoints(window, 3) {
        smallest = smallest.min(nabla_r_norm(&e.metric, t)?);
    }
    Ok((
        smallest > 1e-2,
        format!("|nabla R| at least {smallest:.3e}"),
    ))
}

fn tsukada_nabla_ric_row() -> Result<(bool, String)> {
    let e = cat::catalog_get("tsukada")?;
    let mut worst_rel = 0.0f64;
    let mut vals = Vec::new();
    for t in [0.3, 1.5] {
        let n = nabla_ricci_norm(&e.metric, t)?;
        let model = 8.0 * 2.0f64.sqrt() * t.cosh();
        worst_rel = worst_rel.max((n - model).abs() / model);
        vals.push(n);
    }
    let spread = (vals[1] - vals[0]).abs() / vals[0].max(vals[1]);
    Ok((
        worst_rel < 1e-6 && spread > 0.1,
        format!("matches 8*sqrt(2)*cosh(t) within {worst_rel:.3e}, spread {spread:.3}"),
    ))
}

fn parallel_row(e: &cat::CatalogEntry) -> Result<(bool, String)> {
    let window = sample_window(&e.metric)?;
    let mut worst = 0.0f64;
    for t in midpoints(window, 3) {
        worst = worst.max(nabla_r_norm(&e.metric, t)?);
    }
    Ok((worst < 1e-8, format!("|nabla R| at most {worst:.3e}")))
}

pub fn reproduce(samples: usize, seed: u64) -> Result<Outcome> {
    validate_samples(samples)?;
    let entries = cat::catalog();
    let mut rows: Vec<Row> = Vec::new();

    for e in &entries {
        push_row(&mut rows, format!("ch/{}", e.id), ch_row(e));
    }
    for e in &entries {
        if e.end_diagrams.iter().all(|d| d.is_none()) {
            continue;
        }
        push_row(&mut rows, format!("smooth/{}", e.id), smooth_row(e));
    }
    for e in &entries {
        if matches!(e.metric, Metric::Diagonal(_)) {
            push_row(&mut rows, format!("oracle/{}", e.id), oracle_row(e));
        }
    }
    for id in system_ids() {
        push_row(&mut rows, format!("roots/{id}"), roots_row(id));
    }
    push_row(
        &mut rows,
        "sweep/exponential".to_string(),
        sweep_row(samples, seed),
    );
    push_row(
        &mut rows,
        "discriminator/tsukada-components".to_string(),
        tsukada_components_row(),
    );
    push_row(
        &mut rows,
        "discriminator/tsukada-ricci".to_string(),
        tsukada_ricci_row(),
    );
    push_row(
        &mut rows,
        "discriminator/tsukada-nabla-r".to_string(),
        tsukada_nabla_r_row(),
    );
    push_row(
        &mut rows,
        "discriminator/tsukada-nabla-ric".to_string(),
        tsukada_nabla_ric_row(),
    );
    for e in &entries {
        if e.id == "tsukada" {
            continue;
        }
        push_row(
            &mut rows,
            format!("parallel-curvature/{}", e.id),
            parallel_row(e),
        );
    }

    let passed = rows.iter().filter(|r| r.pass).count();
    let failed = rows.len() - passed;
    let report = ReproduceReport {
        seed,
        draws: samples,
        passed,
        failed,
        rows,
    };
    Ok(Outcome {
        text: json(&report)?,
        exit: if failed == 0 {
            EXIT_POSITIVE
        } else {
            EXIT_NEGATIVE
        },
    })
}
