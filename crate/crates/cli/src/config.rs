//! JSON metric configuration: the same document shape the `catalog` command
//! emits, accepted anywhere a catalog id is.

use curvhom_core::analytic::ScalarFunction;
use curvhom_core::metrics::{DiagonalMetric, GroupDiagram, Metric, ProductMetric};
use curvhom_core::{Error, Result};
use serde::{Deserialize, Serialize};

/// Collapse data at a singular orbit: codimension and slice speed.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DiagramConfig {
    pub codim: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
}

impl DiagramConfig {
    pub fn of(d: &GroupDiagram) -> DiagramConfig {
        DiagramConfig {
            codim: d.singular_codim,
            a: Some(d.slice_speed),
        }
    }
}

/// One metric document. Functions are grammar strings (`4sin(t)`,
/// `2exp(t) - 2exp(-t)`, `t^2`, ...); the optional diagram describes the
/// collapse at the left end of the domain.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MetricConfig {
    Diagonal {
        v1: String,
        v2: String,
        v3: String,
        domain: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        diagram: Option<DiagramConfig>,
    },
    Product {
        sphere: String,
        circle: String,
        domain: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        diagram: Option<DiagramConfig>,
    },
}

impl MetricConfig {
    pub fn to_metric(&self) -> Result<Metric> {
        match self {
            MetricConfig::Diagonal {
                v1, v2, v3, domain, ..
            } => {
                let v = [
                    ScalarFunction::parse(v1)?,
                    ScalarFunction::parse(v2)?,
                    ScalarFunction::parse(v3)?,
                ];
                Ok(Metric::Diagonal(DiagonalMetric::new(
                    v,
                    (domain[0], domain[1]),
                )?))
            }
            MetricConfig::Product {
                sphere,
                circle,
                domain,
                ..
            } => Ok(Metric::Product(ProductMetric::new(
                ScalarFunction::parse(sphere)?,
                ScalarFunction::parse(circle)?,
                (domain[0], domain[1]),
            )?)),
        }
    }

    /// The declared collapse diagram, validated against the metric shape.
    pub fn diagram(&self) -> Result<Option<GroupDiagram>> {
        match self {
            MetricConfig::Diagonal {
                diagram: Some(d), ..
            } => {
                let speed = d.a.unwrap_or(1);
                Ok(Some(GroupDiagram::su2(d.codim, speed)?))
            }
            MetricConfig::Product {
                diagram: Some(d), ..
            } => Ok(Some(GroupDiagram::product(d.codim)?)),
            _ => Ok(None),
        }
    }

    /// Document for an existing metric; `diagram` becomes the left-end entry.
    pub fn of(m: &Metric, diagram: Option<&GroupDiagram>) -> MetricConfig {
        let (lo, hi) = m.domain();
        let diagram = diagram.map(DiagramConfig::of);
        match m {
            Metric::Diagonal(d) => {
                let v = d.functions();
                MetricConfig::Diagonal {
                    v1: v[0].to_string(),
                    v2: v[1].to_string(),
                    v3: v[2].to_string(),
                    domain: [lo, hi],
                    diagram,
                }
            }
            Metric::Product(p) => MetricConfig::Product {
                sphere: p.sphere_function().to_string(),
                circle: p.circle_function().to_string(),
                domain: [lo, hi],
                diagram,
            },
        }
    }
}

/// Reads and validates a config file.
pub fn load(path: &std::path::Path) -> Result<MetricConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("bad metric config {}: {e}", path.display())))
}
