//! The classification catalog: every curvature-homogeneous metric of the two
//! cohomogeneity-one shapes handled here, as explicit model entries. Each
//! entry records the metric functions, the end diagrams where the manifold
//! closes up, and structural flags. One-parameter families are exposed
//! through `family_member`.

use crate::analytic::ScalarFunction;
use crate::metrics::{DiagonalMetric, GroupDiagram, Metric, ProductMetric};
use crate::{Error, Result};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// One catalog model.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    /// Underlying space when both ends close up, or the standard completion.
    pub manifold: &'static str,
    pub metric: Metric,
    /// Diagrams at the left and right interval ends; `None` for an open end.
    pub end_diagrams: [Option<GroupDiagram>; 2],
    /// Locally homogeneous (every entry except the bundle metric).
    pub homogeneous: bool,
    pub einstein: bool,
    /// Whether `family_member` accepts this id.
    pub family: bool,
}

fn diag(v: [ScalarFunction; 3], domain: (f64, f64)) -> Metric {
    Metric::Diagonal(DiagonalMetric::new(v, domain).expect("catalog entry is admissible"))
}

fn prod(f: ScalarFunction, g: ScalarFunction, domain: (f64, f64)) -> Metric {
    Metric::Product(ProductMetric::new(f, g, domain).expect("catalog entry is admissible"))
}

fn su2(codim: u32, speed: u32) -> Option<GroupDiagram> {
    Some(GroupDiagram::su2(codim, speed).expect("catalog diagram is valid"))
}

fn product_diagram(codim: u32) -> Option<GroupDiagram> {
    Some(GroupDiagram::product(codim).expect("catalog diagram is valid"))
}

/// Interval length used for entries whose natural domain is a half-line.
const OPEN_WINDOW: f64 = 3.0;

/// All catalog entries, in classification order.
pub fn catalog() -> Vec<CatalogEntry> {
    let sqrt2 = 2.0f64.sqrt();
    let sqrt3 = 3.0f64.sqrt();
    vec![
        CatalogEntry {
            id: "ex1",
            manifold: "S^4",
            metric: diag(
                [
                    ScalarFunction::sin(1.0).scale(4.0),
                    ScalarFunction::cos(1.0)
                        .scale(2.0 * sqrt3)
                        .add(&ScalarFunction::sin(1.0).scale(-2.0)),
                    ScalarFunction::cos(1.0)
                        .scale(2.0 * sqrt3)
                        .add(&ScalarFunction::sin(1.0).scale(2.0)),
                ],
                (0.0, PI / 3.0),
            ),
            end_diagrams: [su2(2, 4), su2(2, 4)],
            homogeneous: true,
            einstein: true,
            family: false,
        },
        CatalogEntry {
            id: "ex2",
            manifold: "CP^2",
            metric: diag(
                [
                    ScalarFunction::sin(2.0).scale(2.0),
                    ScalarFunction::cos(1.0)
                        .scale(sqrt2)
                        .add(&ScalarFunction::sin(1.0).scale(-sqrt2)),
                    ScalarFunction::cos(1.0)
                        .scale(sqrt2)
                        .add(&ScalarFunction::sin(1.0).scale(sqrt2)),
                ],
                (0.0, FRAC_PI_4),
            ),
            end_diagrams: [su2(2, 4), su2(2, 2)],
            homogeneous: true,
            einstein: true,
            family: false,
        },
        CatalogEntry {
            id: "tsukada",
            manifold: "plane bundle over RP^2",
            metric: diag(
                [
                    ScalarFunction::exp(1.0)
                        .scale(2.0)
                        .add(&ScalarFunction::exp(-1.0).scale(-2.0)),
                    ScalarFunction::exp(1.0).scale(2.0),
                    ScalarFunction::exp(-1.0).scale(2.0),
                ],
                (0.0, OPEN_WINDOW),
            ),
            end_diagrams: [su2(2, 4), None],
            homogeneous: false,
            einstein: false,
            family: false,
        },
        CatalogEntry {
            id: "ex4",
            manifold: "CP^2",
            metric: diag(
                [
                    ScalarFunction::sin(1.0).scale(2.0),
                    ScalarFunction::cos(2.0).scale(2.0),
                    ScalarFunction::cos(1.0).scale(2.0),
                ],
                (0.0, FRAC_PI_4),
            ),
            end_diagrams: [su2(2, 2), su2(2, 4)],
            homogeneous: true,
            einstein: true,
            family: false,
        },
        CatalogEntry {
            id: "ex5",
            manifold: "S^2 x S^2",
            metric: diag(
                [
                    ScalarFunction::sin(1.0).scale(2.0),
                    ScalarFunction::cos(1.0).scale(2.0),
                    ScalarFunction::constant(2.0),
                ],
                (0.0, FRAC_PI_2),
            ),
            end_diagrams: [su2(2, 2), su2(2, 2)],
            homogeneous: true,
            einstein: true,
            family: true,
        },
        CatalogEntry {
            id: "ex6",
            manifold: "CP^2",
            metric: diag(
                [
                    ScalarFunction::sin(1.0),
                    ScalarFunction::sin(1.0),
                    ScalarFunction::sin(2.0).scale(0.5),
                ],
                (0.0, FRAC_PI_2),
            ),
            end_diagrams: [su2(4, 1), su2(2, 1)],
            homogeneous: true,
            einstein: true,
            family: false,
        },
        CatalogEntry {
            id: "ex7",
            manifold: "CH^2",
            metric: diag(
                [
                    ScalarFunction::sinh(1.0),
                    ScalarFunction::sinh(1.0),
                    ScalarFunction::sinh(2.0).scale(0.5),
                ],
                (0.0, OPEN_WINDOW),
            ),
            end_diagrams: [su2(4, 1), None],
            homogeneous: true,
            einstein: true,
            family: false,
        },
        CatalogEntry {
            id: "ex8-sphere",
            manifold: "S^4",
            metric: diag(
                [
                    ScalarFunction::sin(1.0),
                    ScalarFunction::sin(1.0),
                    ScalarFunction::sin(1.0),
                ],
                (0.0, PI),
            ),
            end_diagrams: [su2(4, 1), su2(4, 1)],
            homogeneous: true,
            einstein: true,
            family: false,
        },
        CatalogEntry {
            id: "ex8-hyperbolic",
            manifold: "H^4",
            metric: diag(
                [
                    ScalarFunction::sinh(1.0),
                    ScalarFunction::sinh(1.0),
                    ScalarFunction::sinh(1.0),
                ],
                (0.0, OPEN_WINDOW),
            ),
            end_diagrams: [su2(4, 1), None],
            homogeneous: true,
            einstein: true,
            family: false,
        },
        CatalogEntry {
            id: "ex8-flat",
            manifold: "R^4",
            metric: diag(
                [
                    ScalarFunction::monomial(1.0, 1),
                    ScalarFunction::monomial(1.0, 1),
                    ScalarFunction::monomial(1.0, 1),
                ],
                (0.0, OPEN_WINDOW),
            ),
            end_diagrams: [su2(4, 1), None],
            homogeneous: true,
            einstein: true,
            family: false,
        },
        CatalogEntry {
            id: "ex9",
            manifold: "S^4",
            metric: prod(
                ScalarFunction::cos(1.0),
                ScalarFunction::sin(1.0),
                (0.0, FRAC_PI_2),
            ),
            end_diagrams: [product_diagram(2), product_diagram(3)],
            homogeneous: true,
            einstein: true,
            family: true,
        },
        CatalogEntry {
            id: "ex10-compact",
            manifold: "S^2 x S^2",
            metric: prod(
                ScalarFunction::constant(1.0),
                ScalarFunction::sin(1.0),
                (0.0, PI),
            ),
            end_diagrams: [product_diagram(2), product_diagram(2)],
            homogeneous: true,
            einstein: true,
            family: true,
        },
        CatalogEntry {
            id: "ex10-flat",
            manifold: "S^2 x R^2",
            metric: prod(
                ScalarFunction::constant(1.0),
                ScalarFunction::monomial(1.0, 1),
                (0.0, OPEN_WINDOW),
            ),
            end_diagrams: [product_diagram(2), None],
            homogeneous: true,
            einstein: false,
            family: true,
        },
        CatalogEntry {
            id: "ex10-hyperbolic",
            manifold: "S^2 x H^2",
            metric: prod(
                ScalarFunction::constant(1.0),
                ScalarFunction::sinh(1.0),
                (0.0, OPEN_WINDOW),
            ),
            end_diagrams: [product_diagram(2), None],
            homogeneous: true,
            einstein: false,
            family: true,
        },
    ]
}

/// Entry ids in catalog order.
pub fn catalog_ids() -> Vec<&'static str> {
    catalog().iter().map(|e| e.id).collect()
}

pub fn catalog_get(id: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Member of a one-parameter catalog family. `beta` controls the orbit size:
/// (beta sin t, beta cos t, beta) for "ex5", circle radius beta sin t for
/// "ex9", and circle radius beta times the model profile for the "ex10"
/// entries.
pub fn family_member(id: &str, beta: f64) -> Result<Metric> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::Config(format!(
            "family parameter must be positive, got {beta}"
        )));
    }
    let metric = match id {
        "ex5" => diag(
            [
                ScalarFunction::sin(1.0).scale(beta),
                ScalarFunction::cos(1.0).scale(beta),
                ScalarFunction::constant(beta),
            ],
            (0.0, FRAC_PI_2),
        ),
        "ex9" => prod(
            ScalarFunction::cos(1.0),
            ScalarFunction::sin(1.0).scale(beta),
            (0.0, FRAC_PI_2),
        ),
        "ex10-compact" => prod(
            ScalarFunction::constant(1.0),
            ScalarFunction::sin(1.0).scale(beta),
            (0.0, PI),
        ),
        "ex10-flat" => prod(
            ScalarFunction::constant(1.0),
            ScalarFunction::monomial(beta, 1),
            (0.0, OPEN_WINDOW),
        ),
        "ex10-hyperbolic" => prod(
            ScalarFunction::constant(1.0),
            ScalarFunction::sinh(1.0).scale(beta),
            (0.0, OPEN_WINDOW),
        ),
        other => {
            return if catalog().iter().any(|e| e.id == other) {
                Err(Error::Config(format!(
                    "catalog entry `{other}` has no one-parameter family"
                )))
            } else {
                Err(Error::UnknownId(other.to_string()))
            }
        }
    };
    Ok(metric)
}
