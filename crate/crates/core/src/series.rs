//! Truncated Taylor and Laurent series with coefficient arithmetic.
//!
//! These back the interior expansions of curvature components and the
//! pole-order analysis at collapsing endpoints. Coefficients come from exact
//! differentiation of [`crate::analytic::ScalarFunction`]s, so the only error
//! sources are round-off and truncation.

use crate::defaults::EPS_DIV;
use crate::error::{Error, Result};

/// Polynomial jet `sum_k coeffs[k] (t - base)^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    pub base: f64,
    pub coeffs: Vec<f64>,
}

impl TaylorSeries {
    pub fn new(base: f64, coeffs: Vec<f64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant coefficient"
        );
        TaylorSeries { base, coeffs }
    }

    /// Expansion of an exact scalar function.
    pub fn of(f: &crate::analytic::ScalarFunction, base: f64, order: usize) -> Self {
        TaylorSeries {
            base,
            coeffs: f.taylor_at(base, order),
        }
    }

    /// Truncation order (highest retained power).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `(t - base)^k`, zero beyond the truncation.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    fn check_base(&self, other: &TaylorSeries) {
        assert!(
            self.base == other.base,
            "series arithmetic requires a common expansion point"
        );
    }

    pub fn add(&self, other: &TaylorSeries) -> TaylorSeries {
        self.check_base(other);
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeffs[k] + other.coeffs[k]).collect();
        TaylorSeries {
            base: self.base,
            coeffs,
        }
    }

    pub fn sub(&self, other: &TaylorSeries) -> TaylorSeries {
        self.check_base(other);
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeffs[k] - other.coeffs[k]).collect();
        TaylorSeries {
            base: self.base,
            coeffs,
        }
    }

    pub fn neg(&self) -> TaylorSeries {
        self.scale(-1.0)
    }

    pub fn scale(&self, c: f64) -> TaylorSeries {
        TaylorSeries {
            base: self.base,
            coeffs: self.coeffs.iter().map(|a| c * a).collect(),
        }
    }

    /// Cauchy product truncated to the shorter operand's order.
    pub fn mul(&self, other: &TaylorSeries) -> TaylorSeries {
        self.check_base(other);
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for k in 0..n {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.coeffs[j] * other.coeffs[k - j];
            }
            coeffs[k] = acc;
        }
        TaylorSeries {
            base: self.base,
            coeffs,
        }
    }

    /// Series division; fails when the divisor's constant term is negligible
    /// relative to its largest coefficient (a pole, not a jet).
    pub fn div(&self, other: &TaylorSeries) -> Result<TaylorSeries> {
        self.check_base(other);
        let scale = other.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let b0 = other.coeffs[0];
        if scale == 0.0 || b0.abs() < EPS_DIV * scale {
            return Err(Error::DivisionByZeroSeries);
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for j in 0..k {
                acc -= coeffs[j] * other.coeffs[k - j];
            }
            coeffs[k] = acc / b0;
        }
        Ok(TaylorSeries {
            base: self.base,
            coeffs,
        })
    }

    /// Termwise derivative (order drops by one).
    pub fn derivative(&self) -> TaylorSeries {
        if self.coeffs.len() == 1 {
            return TaylorSeries {
                base: self.base,
                coeffs: vec![0.0],
            };
        }
        let coeffs = (1..self.coeffs.len())
            .map(|k| k as f64 * self.coeffs[k])
            .collect();
        TaylorSeries {
            base: self.base,
            coeffs,
        }
    }

    /// Horner evaluation in `h = t - base`.
    pub fn evaluate(&self, t: f64) -> f64 {
        let h = t - self.base;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * h + c)
    }

    pub fn truncate(&self, order: usize) -> TaylorSeries {
        let n = (order + 1).min(self.coeffs.len());
        TaylorSeries {
            base: self.base,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }
}

/// Finite Laurent expansion `sum_k coeffs[k] h^(lead + k)` around a point,
/// in the local coordinate `h`. An empty coefficient list is the zero series.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    pub lead: i64,
    pub coeffs: Vec<f64>,
}

impl LaurentSeries {
    pub fn zero() -> Self {
        LaurentSeries {
            lead: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Converts a jet into a Laurent series by stripping leading
    /// coefficients that are negligible relative to the largest one.
    pub fn from_taylor(ts: &TaylorSeries, tol: f64) -> Self {
        let scale = ts.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return Self::zero();
        }
        match ts.coeffs.iter().position(|c| c.abs() > tol * scale) {
            None => Self::zero(),
            Some(i) => LaurentSeries {
                lead: i as i64,
                coeffs: ts.coeffs[i..].to_vec(),
            },
        }
    }

    /// Coefficient of `h^order`.
    pub fn coeff(&self, order: i64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let idx = order - self.lead;
        if idx < 0 {
            return 0.0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0.0)
    }

    /// Highest order retained (inclusive).
    pub fn max_order(&self) -> i64 {
        self.lead + self.coeffs.len() as i64 - 1
    }

    pub fn neg(&self) -> LaurentSeries {
        self.scale(-1.0)
    }

    pub fn scale(&self, c: f64) -> LaurentSeries {
        LaurentSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|a| c * a).collect(),
        }
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lead = self.lead.min(other.lead);
        let hi = self.max_order().min(other.max_order());
        if hi < lead {
            return Self::zero();
        }
        let coeffs = (lead..=hi)
            .map(|k| self.coeff(k) + other.coeff(k))
            .collect();
        LaurentSeries { lead, coeffs }
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    /// Product; the result keeps orders up to the smaller of the operands'
    /// reliable ranges.
    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Orders above lead + n are contaminated by truncation of either factor.
        let reliable_a = self.coeffs.len();
        let reliable_b = other.coeffs.len();
        let n = reliable_a.min(reliable_b);
        let mut coeffs = vec![0.0; n];
        for k in 0..n {
            let mut acc = 0.0;
            for j in 0..=k.min(reliable_a - 1) {
                if k - j < reliable_b {
                    acc += self.coeffs[j] * other.coeffs[k - j];
                }
            }
            coeffs[k] = acc;
        }
        LaurentSeries {
            lead: self.lead + other.lead,
            coeffs,
        }
    }

    /// Quotient; fails on a zero divisor.
    pub fn div(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        if other.is_zero() {
            return Err(Error::DivisionByZeroSeries);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let b0 = other.coeffs[0];
        let mut coeffs = vec![0.0; n];
        for k in 0..n {
            let mut acc = if k < self.coeffs.len() {
                self.coeffs[k]
            } else {
                0.0
            };
            for j in 0..k {
                if k - j < other.coeffs.len() {
                    acc -= coeffs[j] * other.coeffs[k - j];
                }
            }
            coeffs[k] = acc / b0;
        }
        Ok(LaurentSeries {
            lead: self.lead - other.lead,
            coeffs,
        })
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: i64) -> LaurentSeries {
        if self.is_zero() || order < self.lead {
            return Self::zero();
        }
        let keep = (order - self.lead + 1) as usize;
        LaurentSeries {
            lead: self.lead,
            coeffs: self.coeffs[..keep.min(self.coeffs.len())].to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::ScalarFunction;
    use approx::assert_relative_eq;

    #[test]
    fn geometric_series_division() {
        // 1 / (1 - h) = 1 + h + h^2 + ...
        let one = TaylorSeries::new(0.0, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let denom = TaylorSeries::new(0.0, vec![1.0, -1.0, 0.0, 0.0, 0.0, 0.0]);
        let q = one.div(&denom).unwrap();
        for c in &q.coeffs {
            assert_relative_eq!(c, &1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn division_by_pole_is_rejected() {
        let one = TaylorSeries::new(0.0, vec![1.0, 0.0, 0.0]);
        let vanishing = TaylorSeries::new(0.0, vec![0.0, 1.0, 0.0]);
        assert_eq!(one.div(&vanishing), Err(Error::DivisionByZeroSeries));
    }

    #[test]
    fn product_matches_pointwise() {
        let f = ScalarFunction::sin(1.0);
        let g = ScalarFunction::exp(0.5);
        let base = 0.6;
        let sf = TaylorSeries::of(&f, base, 14);
        let sg = TaylorSeries::of(&g, base, 14);
        let prod = sf.mul(&sg);
        let t = base + 0.05;
        assert_relative_eq!(
            prod.evaluate(t),
            f.evaluate(t) * g.evaluate(t),
            epsilon = 1e-12
        );
    }

    #[test]
    fn derivative_matches_exact() {
        let f = ScalarFunction::cos(2.0);
        let s = TaylorSeries::of(&f, 0.3, 12);
        let ds = s.derivative();
        let exact = f.differentiate();
        assert_relative_eq!(ds.evaluate(0.33), exact.evaluate(0.33), epsilon = 1e-10);
    }

    #[test]
    fn laurent_quotient_sin_over_t_cubed() {
        // sin(h) / h^3 = h^-2 - 1/6 + h^2/120 - ...
        let sin = TaylorSeries::of(&ScalarFunction::sin(1.0), 0.0, 12);
        let cube = TaylorSeries::new(0.0, {
            let mut c = vec![0.0; 13];
            c[3] = 1.0;
            c
        });
        let num = LaurentSeries::from_taylor(&sin, 1e-14);
        let den = LaurentSeries::from_taylor(&cube, 1e-14);
        assert_eq!(num.lead, 1);
        assert_eq!(den.lead, 3);
        let q = num.div(&den).unwrap();
        assert_eq!(q.lead, -2);
        assert_relative_eq!(q.coeff(-2), 1.0, epsilon = 1e-14);
        assert_relative_eq!(q.coeff(-1), 0.0, epsilon = 1e-14);
        assert_relative_eq!(q.coeff(0), -1.0 / 6.0, epsilon = 1e-14);
        assert_relative_eq!(q.coeff(2), 1.0 / 120.0, epsilon = 1e-14);
    }

    #[test]
    fn laurent_addition_aligns_orders() {
        let a = LaurentSeries {
            lead: -2,
            coeffs: vec![1.0, 0.0, 3.0, 0.0, 5.0],
        };
        let b = LaurentSeries {
            lead: 0,
            coeffs: vec![2.0, 7.0, 1.0],
        };
        let s = a.add(&b);
        assert_eq!(s.lead, -2);
        assert_relative_eq!(s.coeff(-2), 1.0);
        assert_relative_eq!(s.coeff(0), 5.0);
        assert_relative_eq!(s.coeff(1), 7.0);
        // Orders beyond the shorter operand's reach are dropped.
        assert_eq!(s.max_order(), 2);
    }
}
