//! Polynomial constraint systems for constant-component ansatz families,
//! frozen root sets, and a seeded Gauss-Newton root search over parameter
//! boxes.
//!
//! Each system fixes an ansatz shape for the three metric functions; its
//! equations state that all curvature components are constant. Systems are
//! listed by opaque id. One system is invariant under a common rescaling of
//! its parameters, so its solutions are rays reported by normalized
//! representatives; all others have isolated roots.

use crate::analytic::ScalarFunction;
use crate::defaults::{
    BOX_AMPLITUDE, BOX_RATE, CLUSTER_RADIUS, EPS_POS, FD_JACOBIAN_STEP, GRID_PER_AXIS,
    NEWTON_MAX_ITERS, NEWTON_TOL, NONCOMPACT_WINDOW, ROOT_ACCEPT_TOL,
};
use crate::metrics::{DiagonalMetric, Metric};
use crate::{Error, Result};

/// Slack on box membership when accepting a converged point.
const BOX_SLACK: f64 = 1e-6;
/// Gauss-Newton is abandoned when an iterate runs off to this magnitude.
const DIVERGENCE_BOUND: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ParamKind {
    Amplitude,
    Rate,
}

/// Search configuration: seeds per axis and optional per-parameter boxes
/// overriding the system defaults.
#[derive(Debug, Clone)]
pub struct RootSearchConfig {
    pub grid_per_axis: usize,
    pub boxes: Option<Vec<(f64, f64)>>,
}

impl Default for RootSearchConfig {
    fn default() -> Self {
        RootSearchConfig {
            grid_per_axis: GRID_PER_AXIS,
            boxes: None,
        }
    }
}

/// A one-parameter ray of solutions, normalized so its smallest component is
/// one and components are sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct RootFamily {
    pub representative: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoundRoots {
    pub roots: Vec<Vec<f64>>,
    pub families: Vec<RootFamily>,
}

pub struct ConstraintSystem {
    id: &'static str,
    params: &'static [&'static str],
    kinds: &'static [ParamKind],
    scale_invariant: bool,
    /// Canonical form sorts the last two parameters ascending (they play
    /// interchangeable roles).
    sort_last_pair: bool,
    eval: EvalFn,
    known: &'static [&'static [f64]],
}

const IDS: [&str; 11] = [
    "5.1-compact",
    "5.1-hyperbolic",
    "5.1-linear",
    "5.2.1",
    "5.2.2",
    "5.3.1",
    "5.3.2",
    "5.4.1",
    "5.4.2",
    "codim4-trig",
    "codim4-mixed",
];

pub fn system_ids() -> Vec<&'static str> {
    IDS.to_vec()
}

/// Equation sets write into a reused buffer; the seeded search calls them in
/// a tight loop.
type EvalFn = fn(&[f64], &mut Vec<f64>);

fn h_quartic(b: f64, c1: f64, c2: f64) -> f64 {
    let b4 = b.powi(4);
    let (p, q) = (c1 * c1, c2 * c2);
    b4 * p * p - 6.0 * b4 * p * q + b4 * q * q
}

fn eval_51_compact(x: &[f64], out: &mut Vec<f64>) {
    let (a, b, c) = (x[0], x[1], x[2]);
    let (b2, c2) = (b * b, c * c);
    out.clear();
    out.extend_from_slice(&[
        b2 * b2 * c2 * c2 - 4.0 * b2 * c2 + 3.0 * a * a,
        b2 * b2 * c2 * c2 - b2 * b2 * c2 + 3.0 * a * a,
        a * (4.0 * c2 - 1.0),
    ]);
}

fn eval_51_hyperbolic(x: &[f64], out: &mut Vec<f64>) {
    let (a, b, c) = (x[0], x[1], x[2]);
    let (b2, c2) = (b * b, c * c);
    out.clear();
    out.extend_from_slice(&[
        b2 * b2 * c2 * c2 + 4.0 * b2 * c2 + 3.0 * a * a,
        b2 * b2 * c2 * c2 - b2 * b2 * c2 + 3.0 * a * a,
    ]);
}

fn eval_51_linear(x: &[f64], out: &mut Vec<f64>) {
    let (a, b, c) = (x[0], x[1], x[2]);
    let (b2, c2) = (b * b, c * c);
    out.clear();
    out.extend_from_slice(&[
        b2 * b2 * c2 * c2 + 4.0 * b2 * c2 + 3.0 * a * a,
        b2 * b2 * c2 * c2 + 3.0 * a * a,
    ]);
}

fn eval_521(x: &[f64], out: &mut Vec<f64>) {
    let (b, c1, c2) = (x[0], x[1], x[2]);
    let h = h_quartic(b, c1, c2);
    let (b2, b4) = (b * b, b.powi(4));
    let (p, q) = (c1 * c1, c2 * c2);
    out.clear();
    out.extend_from_slice(&[
        h + 8.0 * b2 * p + 8.0 * b2 * q - 48.0,
        h - 4.0 * b4 * p + 8.0 * b4 * q + 24.0 * b2 * p - 24.0 * b2 * q - 48.0,
        h + 8.0 * b4 * p - 4.0 * b4 * q - 24.0 * b2 * p + 24.0 * b2 * q - 48.0,
        (p - q) * (p - q) - 2.0 * (p + q) + 1.0,
        p + q - p * q - 1.0,
    ]);
}

fn eval_522(x: &[f64], out: &mut Vec<f64>) {
    let (b1, b2, c) = (x[0], x[1], x[2]);
    let (s, u) = (b1 * b1, b2 * b2);
    let (c2, c4) = (c * c, c.powi(4));
    out.clear();
    out.extend_from_slice(&[
        c4 * (3.0 * s * s - 2.0 * s * u - 9.0 * u * u) - c2 * (s * u + 12.0 * s + 36.0 * u) + 144.0,
        c4 * (s * s + 2.0 * s * u - 3.0 * u * u) - c2 * (s * s + 2.0 * s * u) + 48.0,
        c2 * (s - 3.0 * u) - s + 12.0,
    ]);
}

fn eval_531(x: &[f64], out: &mut Vec<f64>) {
    let (b, c1, c2) = (x[0], x[1], x[2]);
    let h = h_quartic(b, c1, c2);
    let b2 = b * b;
    let (p, q) = (c1 * c1, c2 * c2);
    out.clear();
    out.extend_from_slice(&[
        h - 8.0 * b2 * p - 8.0 * b2 * q - 48.0,
        h - 24.0 * b2 * p + 24.0 * b2 * q - 48.0,
        h + 24.0 * b2 * p - 24.0 * b2 * q - 48.0,
    ]);
}

fn eval_532(x: &[f64], out: &mut Vec<f64>) {
    let (b1, b2, c) = (x[0], x[1], x[2]);
    let (s, u) = (b1 * b1, b2 * b2);
    let (c2, c4) = (c * c, c.powi(4));
    out.clear();
    out.extend_from_slice(&[
        c4 * (s * s - 2.0 * s * u - 3.0 * u * u) + 48.0,
        c2 * (s + 3.0 * u) - 12.0,
    ]);
}

fn eval_541(x: &[f64], out: &mut Vec<f64>) {
    let (b, c1, c2) = (x[0], x[1], x[2]);
    let h = h_quartic(b, c1, c2);
    let (b2, b4) = (b * b, b.powi(4));
    let (p, q) = (c1 * c1, c2 * c2);
    out.clear();
    out.extend_from_slice(&[
        h - 8.0 * b2 * p - 8.0 * b2 * q - 48.0,
        h - 4.0 * b4 * p + 8.0 * b4 * q - 24.0 * b2 * p + 24.0 * b2 * q - 48.0,
        h + 8.0 * b4 * p - 4.0 * b4 * q + 24.0 * b2 * p - 24.0 * b2 * q - 48.0,
    ]);
}

fn eval_542(x: &[f64], out: &mut Vec<f64>) {
    let (b1, b2, c) = (x[0], x[1], x[2]);
    let (s, u) = (b1 * b1, b2 * b2);
    let (c2, c4) = (c * c, c.powi(4));
    out.clear();
    out.extend_from_slice(&[
        c4 * (3.0 * s * s + 2.0 * s * u - 9.0 * u * u) + c2 * (s * u + 12.0 * s - 36.0 * u) + 144.0,
        c2 * (s + 3.0 * u) - s - 12.0,
        c4 * (8.0 * s * u - 12.0 * u * u) + c2 * (s * u - 48.0 * s + 48.0 * u) + 12.0 * s,
    ]);
}

fn eval_codim4_trig(x: &[f64], out: &mut Vec<f64>) {
    let (p, q, r) = (x[0] * x[0], x[1] * x[1], x[2] * x[2]);
    out.clear();
    out.extend_from_slice(&[
        5.0 * (p - q) * r - p * p + q * q,
        5.0 * (r - p) * q + p * p - r * r,
    ]);
}

fn eval_codim4_mixed(x: &[f64], out: &mut Vec<f64>) {
    let (p, q) = (x[0] * x[0], x[1] * x[1]);
    out.clear();
    out.extend_from_slice(&[p - 5.0 * q, 5.0 * p - q, 3.0 * q * q - 3.0 * p * p]);
}

use ParamKind::{Amplitude, Rate};

pub fn get_system(id: &str) -> Result<ConstraintSystem> {
    let sys = match id {
        "5.1-compact" => ConstraintSystem {
            id: "5.1-compact",
            params: &["a", "b", "c"],
            kinds: &[Amplitude, Amplitude, Rate],
            scale_invariant: false,
            sort_last_pair: false,
            eval: eval_51_compact,
            known: &[&[1.0, 2.0, 0.5]],
        },
        "5.1-hyperbolic" => ConstraintSystem {
            id: "5.1-hyperbolic",
            params: &["a", "b", "c"],
            kinds: &[Amplitude, Amplitude, Rate],
            scale_invariant: false,
            sort_last_pair: false,
            eval: eval_51_hyperbolic,
            known: &[],
        },
        "5.1-linear" => ConstraintSystem {
            id: "5.1-linear",
            params: &["a", "b", "c"],
            kinds: &[Amplitude, Amplitude, Rate],
            scale_invariant: false,
            sort_last_pair: false,
            eval: eval_51_linear,
            known: &[],
        },
        "5.2.1" => ConstraintSystem {
            id: "5.2.1",
            params: &["b", "c1", "c2"],
            kinds: &[Amplitude, Rate, Rate],
            scale_invariant: false,
            sort_last_pair: true,
            eval: eval_521,
            known: &[&[2.0, 0.0, 1.0], &[2.0, 1.0, 2.0]],
        },
        "5.2.2" => ConstraintSystem {
            id: "5.2.2",
            params: &["b1", "b2", "c"],
            kinds: &[Amplitude, Amplitude, Rate],
            scale_invariant: false,
            sort_last_pair: false,
            eval: eval_522,
            known: &[
                &[2.8284271247461903, 2.8284271247461903, 0.5],
                &[3.4641016151377544, 2.0, 1.0],
            ],
        },
        "5.3.1" => ConstraintSystem {
            id: "5.3.1",
            params: &["b", "c1", "c2"],
            kinds: &[Amplitude, Rate, Rate],
            scale_invariant: false,
            sort_last_pair: true,
            eval: eval_531,
            known: &[],
        },
        "5.3.2" => ConstraintSystem {
            id: "5.3.2",
            params: &["b1", "b2", "c"],
            kinds: &[Amplitude, Amplitude, Rate],
            scale_invariant: false,
            sort_last_pair: false,
            eval: eval_532,
            known: &[],
        },
        "5.4.1" => ConstraintSystem {
            id: "5.4.1",
            params: &["b", "c1", "c2"],
            kinds: &[Amplitude, Rate, Rate],
            scale_invariant: false,
            sort_last_pair: true,
            eval: eval_541,
            known: &[],
        },
        "5.4.2" => ConstraintSystem {
            id: "5.4.2",
            params: &["b1", "b2", "c"],
            kinds: &[Amplitude, Amplitude, Rate],
            scale_invariant: false,
            sort_last_pair: false,
            eval: eval_542,
            known: &[&[2.0, 2.0, 1.0]],
        },
        "codim4-trig" => ConstraintSystem {
            id: "codim4-trig",
            params: &["b1", "b2", "b3"],
            kinds: &[Amplitude, Amplitude, Amplitude],
            scale_invariant: true,
            sort_last_pair: false,
            eval: eval_codim4_trig,
            known: &[
                &[1.0, 1.0, 1.0],
                &[2.0, 1.0, 1.0],
                &[1.0, 2.0, 1.0],
                &[1.0, 1.0, 2.0],
            ],
        },
        "codim4-mixed" => ConstraintSystem {
            id: "codim4-mixed",
            params: &["b1", "b2"],
            kinds: &[Amplitude, Amplitude],
            scale_invariant: false,
            sort_last_pair: false,
            eval: eval_codim4_mixed,
            known: &[],
        },
        other => return Err(Error::UnknownSystem(other.to_string())),
    };
    Ok(sys)
}

impl ConstraintSystem {
    pub fn id(&self) -> &'static str {
        self.id
    }

    pub fn params(&self) -> &'static [&'static str] {
        self.params
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn scale_invariant(&self) -> bool {
        self.scale_invariant
    }

    pub fn known_roots(&self) -> Vec<Vec<f64>> {
        self.known.iter().map(|r| r.to_vec()).collect()
    }

    /// Equation values at a parameter point.
    pub fn residual(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.arity(), "parameter count mismatch");
        let mut out = Vec::new();
        (self.eval)(x, &mut out);
        out
    }

    /// Per-parameter default search boxes.
    pub fn default_box(&self) -> Vec<(f64, f64)> {
        self.kinds
            .iter()
            .map(|k| match k {
                Amplitude => BOX_AMPLITUDE,
                Rate => BOX_RATE,
            })
            .collect()
    }

    fn canonicalize(&self, x: &[f64]) -> Vec<f64> {
        let mut y: Vec<f64> = x.iter().map(|v| v.abs()).collect();
        if self.sort_last_pair && y[1] > y[2] {
            y.swap(1, 2);
        }
        y
    }

    /// Grid-seeded Gauss-Newton search. Isolated roots come back
    /// canonicalized, de-duplicated, and lexicographically sorted; for the
    /// scale-invariant system the rays come back as normalized family
    /// representatives instead.
    pub fn find_roots(&self, cfg: &RootSearchConfig) -> Result<FoundRoots> {
        if cfg.grid_per_axis < 2 {
            return Err(Error::Config(
                "grid_per_axis must be at least 2".to_string(),
            ));
        }
        let boxes = match &cfg.boxes {
            Some(b) => {
                if b.len() != self.arity() {
                    return Err(Error::Config(format!(
                        "{} boxes supplied for {} parameters",
                        b.len(),
                        self.arity()
                    )));
                }
                b.clone()
            }
            None => self.default_box(),
        };
        if boxes.iter().any(|(lo, hi)| !(lo < hi)) {
            return Err(Error::Config("each box needs lo < hi".to_string()));
        }
        if self.scale_invariant {
            self.search_rays(cfg.grid_per_axis, &boxes)
        } else {
            self.search_isolated(cfg.grid_per_axis, &boxes)
        }
    }

    fn accept(&self, x: &[f64], boxes: &[(f64, f64)]) -> bool {
        if x.iter().any(|v| !v.is_finite()) {
            return false;
        }
        let mut r = Vec::with_capacity(8);
        (self.eval)(x, &mut r);
        let worst = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if worst > ROOT_ACCEPT_TOL {
            return false;
        }
        x.iter()
            .zip(boxes.iter())
            .all(|(v, (lo, hi))| *v >= lo - BOX_SLACK && *v <= hi + BOX_SLACK)
    }

    fn search_isolated(&self, grid: usize, boxes: &[(f64, f64)]) -> Result<FoundRoots> {
        let n = self.arity();
        let mut roots: Vec<Vec<f64>> = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            let seed: Vec<f64> = (0..n)
                .map(|k| {
                    let (lo, hi) = boxes[k];
                    lo + (hi - lo) * (idx[k] as f64 + 0.5) / grid as f64
                })
                .collect();
            let x = gauss_newton(self.eval, &seed);
            if self.accept(&x, boxes) {
                // A root with a flat direction passes the residual gate
                // while a parameter is still drifting; a second round of
                // iterations from the accepted point finishes the job.
                let polished = gauss_newton(self.eval, &x);
                let x = if self.accept(&polished, boxes) {
                    polished
                } else {
                    x
                };
                let y = self.canonicalize(&x);
                let dup = roots.iter().any(|r| linf_dist(r, &y) <= CLUSTER_RADIUS);
                if !dup {
                    roots.push(y);
                }
            }
            if !advance(&mut idx, grid) {
                break;
            }
        }
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(FoundRoots {
            roots,
            families: Vec::new(),
        })
    }

    fn search_rays(&self, grid: usize, boxes: &[(f64, f64)]) -> Result<FoundRoots> {
        // Fix the last parameter at one and search the reduced system; every
        // ray crossing the box has a representative on that slice.
        let n = self.arity();
        let eval = self.eval;
        let fixed = n - 1;
        let full = move |y: &[f64], out: &mut Vec<f64>| {
            let mut buf = [0.0f64; 8];
            buf[..fixed].copy_from_slice(y);
            buf[fixed] = 1.0;
            eval(&buf[..=fixed], out);
        };
        let mut reps: Vec<Vec<f64>> = Vec::new();
        let mut idx = vec![0usize; n - 1];
        loop {
            let seed: Vec<f64> = (0..n - 1)
                .map(|k| {
                    let (lo, hi) = boxes[k];
                    lo + (hi - lo) * (idx[k] as f64 + 0.5) / grid as f64
                })
                .collect();
            let y = gauss_newton_on(&full, &seed);
            let y = {
                let polished = gauss_newton_on(&full, &y);
                let mut px = polished.clone();
                px.push(1.0);
                if self.accept(&px, boxes) {
                    polished
                } else {
                    y
                }
            };
            let mut x = y.clone();
            x.push(1.0);
            if self.accept(&x, boxes) {
                let ray = normalize_ray(&x);
                if let Some(ray) = ray {
                    let dup = reps.iter().any(|r| linf_dist(r, &ray) <= CLUSTER_RADIUS);
                    if !dup {
                        reps.push(ray);
                    }
                }
            }
            if !advance(&mut idx, grid) {
                break;
            }
        }
        reps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(FoundRoots {
            roots: Vec::new(),
            families: reps
                .into_iter()
                .map(|representative| RootFamily { representative })
                .collect(),
        })
    }

    /// Diagonal metric for a parameter point of this system's ansatz shape.
    /// Trigonometric shapes run up to the first collapse; the others use the
    /// standard open window.
    pub fn build_metric(&self, x: &[f64]) -> Result<Metric> {
        if x.len() != self.arity() {
            return Err(Error::Config(format!(
                "{} takes {} parameters, got {}",
                self.id,
                self.arity(),
                x.len()
            )));
        }
        for (v, k) in x.iter().zip(self.kinds.iter()) {
            match k {
                Amplitude if !(*v > 0.0) => {
                    return Err(Error::Config(format!(
                        "{}: amplitudes must be positive",
                        self.id
                    )))
                }
                Rate if *v < 0.0 => {
                    return Err(Error::Config(format!(
                        "{}: rates must be nonnegative",
                        self.id
                    )))
                }
                _ => {}
            }
        }
        let sin = |rate: f64, amp: f64| ScalarFunction::sin(rate).scale(amp);
        let cos = |rate: f64, amp: f64| ScalarFunction::cos(rate).scale(amp);
        let sinh = |rate: f64, amp: f64| ScalarFunction::sinh(rate).scale(amp);
        let cosh = |rate: f64, amp: f64| ScalarFunction::cosh(rate).scale(amp);
        let v: [ScalarFunction; 3] = match self.id {
            "5.1-compact" => [sin(1.0, x[0]), cos(x[2], x[1]), cos(x[2], x[1])],
            "5.1-hyperbolic" => [sinh(1.0, x[0]), cosh(x[2], x[1]), cosh(x[2], x[1])],
            "5.1-linear" => [
                ScalarFunction::monomial(x[0], 1),
                cosh(x[2], x[1]),
                cosh(x[2], x[1]),
            ],
            "5.2.1" => [sin(1.0, 2.0), cos(x[1], x[0]), cos(x[2], x[0])],
            "5.2.2" => [
                sin(1.0, 4.0),
                cos(x[2], x[0]).add(&sin(x[2], x[1])),
                cos(x[2], x[0]).sub(&sin(x[2], x[1])),
            ],
            "5.3.1" => [
                ScalarFunction::monomial(2.0, 1),
                cosh(x[1], x[0]),
                cosh(x[2], x[0]),
            ],
            "5.3.2" => [
                ScalarFunction::monomial(4.0, 1),
                cosh(x[2], x[0]).add(&sinh(x[2], x[1])),
                cosh(x[2], x[0]).sub(&sinh(x[2], x[1])),
            ],
            "5.4.1" => [sinh(1.0, 2.0), cosh(x[1], x[0]), cosh(x[2], x[0])],
            "5.4.2" => [
                sinh(1.0, 4.0),
                cosh(x[2], x[0]).add(&sinh(x[2], x[1])),
                cosh(x[2], x[0]).sub(&sinh(x[2], x[1])),
            ],
            "codim4-trig" => [
                sin(x[0], 1.0 / x[0]),
                sin(x[1], 1.0 / x[1]),
                sin(x[2], 1.0 / x[2]),
            ],
            "codim4-mixed" => {
                let (r1, r2) = (x[0].sqrt(), x[1].sqrt());
                [
                    sinh(r1, 1.0 / r1),
                    sinh(r2, 1.0 / r2),
                    ScalarFunction::monomial(1.0, 1),
                ]
            }
            _ => unreachable!("every id constructs an ansatz"),
        };
        let t_hi = first_zero(&v).unwrap_or(NONCOMPACT_WINDOW);
        let metric = DiagonalMetric::new(v, (0.0, t_hi))?;
        Ok(Metric::Diagonal(metric))
    }
}

/// Odometer increment over an n-dimensional grid; false once exhausted.
fn advance(idx: &mut [usize], grid: usize) -> bool {
    for slot in idx.iter_mut() {
        *slot += 1;
        if *slot < grid {
            return true;
        }
        *slot = 0;
    }
    false
}

fn linf_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

fn normalize_ray(x: &[f64]) -> Option<Vec<f64>> {
    let min = x.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if !(min > 1e-9) {
        return None;
    }
    let mut ray: Vec<f64> = x.iter().map(|v| v.abs() / min).collect();
    ray.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Some(ray)
}

fn norm2(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn gauss_newton(eval: EvalFn, seed: &[f64]) -> Vec<f64> {
    gauss_newton_on(&|x: &[f64], out: &mut Vec<f64>| eval(x, out), seed)
}

/// Gauss-Newton with a centered-difference Jacobian. Returns the last
/// iterate; the caller decides acceptance. Work buffers live across
/// iterations, keeping the grid search off the allocator.
fn gauss_newton_on<F: Fn(&[f64], &mut Vec<f64>)>(eval: &F, seed: &[f64]) -> Vec<f64> {
    let n = seed.len();
    let mut x = seed.to_vec();
    let mut xp = seed.to_vec();
    let mut r = Vec::new();
    let mut rp = Vec::new();
    let mut rm = Vec::new();
    let mut jac = Vec::new();
    let mut jtj = vec![0.0; n * n];
    let mut rhs = vec![0.0; n];
    let mut d = vec![0.0; n];
    for _ in 0..NEWTON_MAX_ITERS {
        eval(&x, &mut r);
        let rn = norm2(&r);
        if rn < NEWTON_TOL || !rn.is_finite() {
            break;
        }
        let m = r.len();
        // Centered-difference Jacobian columns.
        jac.resize(m * n, 0.0);
        for j in 0..n {
            let h = FD_JACOBIAN_STEP * (1.0 + x[j].abs());
            xp.copy_from_slice(&x);
            xp[j] = x[j] + h;
            eval(&xp, &mut rp);
            xp[j] = x[j] - h;
            eval(&xp, &mut rm);
            for i in 0..m {
                jac[i * n + j] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..m {
                    acc += jac[k * n + i] * jac[k * n + j];
                }
                jtj[i * n + j] = acc;
            }
            let mut acc = 0.0;
            for k in 0..m {
                acc += jac[k * n + i] * r[k];
            }
            rhs[i] = -acc;
        }
        // Jacobi-equilibrated normal equations with a tiny relative ridge.
        // Near a root with a flat direction the raw normal matrix mixes
        // scales badly enough that a pivot threshold keyed to the largest
        // entry mistakes a well-determined step for a singular system.
        for i in 0..n {
            d[i] = if jtj[i * n + i] > 0.0 {
                jtj[i * n + i].sqrt()
            } else {
                1.0
            };
        }
        for i in 0..n {
            for j in 0..n {
                jtj[i * n + j] /= d[i] * d[j];
            }
            jtj[i * n + i] += 1e-12;
            rhs[i] /= d[i];
        }
        if !solve_in_place(&mut jtj, &mut rhs, n) {
            break;
        }
        let mut step_sq = 0.0;
        for j in 0..n {
            let s = rhs[j] / d[j];
            x[j] += s;
            step_sq += s * s;
        }
        if x.iter()
            .any(|v| !v.is_finite() || v.abs() > DIVERGENCE_BOUND)
        {
            break;
        }
        if step_sq.sqrt() < 1e-14 {
            break;
        }
    }
    x
}

/// In-place Gaussian elimination with partial pivoting; `a` is row-major
/// n-by-n and the solution replaces `b`. The input arrives equilibrated and
/// ridged, so only an exactly zero (or non-finite) pivot counts as singular.
fn solve_in_place(a: &mut [f64], b: &mut [f64], n: usize) -> bool {
    for col in 0..n {
        let mut piv = col;
        for row in col + 1..n {
            if a[row * n + col].abs() > a[piv * n + col].abs() {
                piv = row;
            }
        }
        if !(a[piv * n + col].abs() > 0.0) {
            return false;
        }
        if piv != col {
            for k in col..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        for row in col + 1..n {
            let f = a[row * n + col] / a[col * n + col];
            if f == 0.0 {
                continue;
            }
            for k in col + 1..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            b[row] -= f * b[col];
        }
    }
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row * n + k] * b[k];
        }
        let p = a[row * n + row];
        if !p.is_finite() || p == 0.0 {
            return false;
        }
        b[row] = acc / p;
    }
    true
}

/// Earliest zero of any of the functions on (0, 20], located by a coarse
/// scan plus bisection.
fn first_zero(fs: &[ScalarFunction; 3]) -> Option<f64> {
    const GRID: usize = 4096;
    const T_MAX: f64 = 20.0;
    const T_MIN: f64 = 1e-6;
    let mut best: Option<f64> = None;
    for f in fs.iter() {
        let mut prev_t = T_MIN;
        let mut prev = f.evaluate(T_MIN);
        for k in 1..=GRID {
            let t = T_MIN + (T_MAX - T_MIN) * k as f64 / GRID as f64;
            let val = f.evaluate(t);
            if prev > EPS_POS && val <= EPS_POS {
                let (mut a, mut b) = (prev_t, t);
                for _ in 0..80 {
                    let mid = 0.5 * (a + b);
                    if f.evaluate(mid) > EPS_POS {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                let z = 0.5 * (a + b);
                best = Some(best.map_or(z, |cur: f64| cur.min(z)));
                break;
            }
            prev_t = t;
            prev = val;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::is_curvature_homogeneous;

    #[test]
    fn id_list_is_frozen() {
        let ids = system_ids();
        assert_eq!(ids.len(), 11);
        assert!(get_system("nope").is_err());
        for id in ids {
            let sys = get_system(id).unwrap();
            assert_eq!(sys.id(), id);
            assert_eq!(sys.default_box().len(), sys.arity());
        }
    }

    #[test]
    fn known_roots_solve_their_systems() {
        for id in system_ids() {
            let sys = get_system(id).unwrap();
            for root in sys.known_roots() {
                let worst = sys
                    .residual(&root)
                    .iter()
                    .fold(0.0f64, |m, v| m.max(v.abs()));
                assert!(worst < 1e-12, "{id}: {worst:e} at {root:?}");
            }
        }
    }

    #[test]
    fn built_ansatz_metrics_are_curvature_homogeneous() {
        for (id, root) in [
            ("5.1-compact", vec![1.0, 2.0, 0.5]),
            ("5.2.2", vec![2.0 * 3.0f64.sqrt(), 2.0, 1.0]),
            ("codim4-trig", vec![2.0, 1.0, 1.0]),
        ] {
            let sys = get_system(id).unwrap();
            let m = sys.build_metric(&root).unwrap();
            let report = is_curvature_homogeneous(&m, 60, 1e-8).unwrap();
            assert!(
                report.homogeneous,
                "{id}: deviation {}",
                report.max_deviation
            );
        }
    }

    #[test]
    fn custom_box_search_recovers_the_compact_root() {
        let sys = get_system("5.1-compact").unwrap();
        let cfg = RootSearchConfig {
            grid_per_axis: 10,
            boxes: Some(vec![(0.5, 2.0), (1.0, 3.0), (0.2, 1.0)]),
        };
        let found = sys.find_roots(&cfg).unwrap();
        assert_eq!(found.roots.len(), 1);
        let r = &found.roots[0];
        assert!((r[0] - 1.0).abs() < 1e-8);
        assert!((r[1] - 2.0).abs() < 1e-8);
        assert!((r[2] - 0.5).abs() < 1e-8);
        let mismatched = RootSearchConfig {
            grid_per_axis: 10,
            boxes: Some(vec![(0.5, 2.0)]),
        };
        assert!(sys.find_roots(&mismatched).is_err());
    }

    #[test]
    fn mixed_codim4_search_is_empty() {
        let sys = get_system("codim4-mixed").unwrap();
        let found = sys.find_roots(&RootSearchConfig::default()).unwrap();
        assert!(found.roots.is_empty());
        assert!(found.families.is_empty());
    }
}
