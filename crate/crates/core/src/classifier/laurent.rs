//! Laurent expansion of curvature components at a collapse point, for the
//! mixed cone/trig/exponential family. Near a zero of one metric function
//! several components blow up; their pole parts are exact rational data in
//! the family parameters and the expansion makes them directly inspectable.

use crate::analytic::ScalarFunction;
use crate::metrics::DiagonalMetric;
use crate::series::{LaurentSeries, TaylorSeries};
use crate::{Error, Result};

/// Stripping tolerance when converting jets to Laurent data.
const LEAD_TOL: f64 = 1e-12;
/// Extra working orders carried so truncation losses stay above `order`.
const ORDER_MARGIN: usize = 8;
const DOMAIN_SLACK: f64 = 1e-7;

/// Parameters of the family `(a1 t, a2 sin(d2 t) + b2 cos(d2 t),
/// a3 exp(d3 t) + b3 exp(-d3 t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedFamilyParams {
    pub a1: f64,
    pub a2: f64,
    pub b2: f64,
    pub d2: f64,
    pub a3: f64,
    pub b3: f64,
    pub d3: f64,
}

/// Builds the family metric on a window from the cone point up to ninety
/// percent of the trigonometric function's first zero.
pub fn mixed_family(p: &MixedFamilyParams) -> Result<DiagonalMetric> {
    let ok = p.a1 > 0.0
        && p.d2 > 0.0
        && p.b2 > 0.0
        && p.a3 >= 0.0
        && p.b3 >= 0.0
        && p.a3 + p.b3 > 0.0
        && [p.a1, p.a2, p.b2, p.d2, p.a3, p.b3, p.d3]
            .iter()
            .all(|v| v.is_finite());
    if !ok {
        return Err(Error::Config(
            "mixed family needs a1 > 0, d2 > 0, b2 > 0 and a nonzero nonnegative exponential pair"
                .to_string(),
        ));
    }
    let v1 = ScalarFunction::monomial(p.a1, 1);
    let v2 = ScalarFunction::sin(p.d2)
        .scale(p.a2)
        .add(&ScalarFunction::cos(p.d2).scale(p.b2));
    let v3 = ScalarFunction::exp(p.d3)
        .scale(p.a3)
        .add(&ScalarFunction::exp(-p.d3).scale(p.b3));
    // a2 sin + b2 cos first vanishes at (pi - atan2(b2, a2)) / d2.
    let zero = (std::f64::consts::PI - p.b2.atan2(p.a2)) / p.d2;
    DiagonalMetric::new([v1, v2, v3], (0.0, 0.9 * zero))
}

/// Laurent expansions of the nine curvature components around a point,
/// indexed like the pointwise component arrays.
#[derive(Debug, Clone)]
pub struct LaurentProfile {
    pub kappa: [LaurentSeries; 3],
    pub mixed: [LaurentSeries; 3],
    pub radial: [LaurentSeries; 3],
}

/// Expands all curvature components at `t0` (typically a window endpoint
/// where a function collapses). Supports simple zeros only: each metric
/// function must have vanishing order zero or one there.
pub fn component_laurent(m: &DiagonalMetric, t0: f64, order: usize) -> Result<LaurentProfile> {
    let (lo, hi) = m.domain();
    if !(t0 >= lo - DOMAIN_SLACK && t0 <= hi + DOMAIN_SLACK) {
        return Err(Error::Domain(format!(
            "expansion point {t0} outside [{lo}, {hi}]"
        )));
    }
    let work = order + ORDER_MARGIN;
    let len = work + 1;
    let fs = m.functions();
    let mut v = Vec::with_capacity(3);
    let mut dv = Vec::with_capacity(3);
    let mut ddv = Vec::with_capacity(3);
    for f in fs.iter() {
        let d1 = f.differentiate();
        let d2 = d1.differentiate();
        let vs = LaurentSeries::from_taylor(&TaylorSeries::of(f, t0, work), LEAD_TOL);
        if vs.is_zero() || vs.lead < 0 || vs.lead > 1 {
            return Err(Error::PoleOrder);
        }
        v.push(vs);
        dv.push(LaurentSeries::from_taylor(
            &TaylorSeries::of(&d1, t0, work),
            LEAD_TOL,
        ));
        ddv.push(LaurentSeries::from_taylor(
            &TaylorSeries::of(&d2, t0, work),
            LEAD_TOL,
        ));
    }
    let konst = |c: f64| LaurentSeries {
        lead: 0,
        coeffs: {
            let mut cs = vec![0.0; len];
            cs[0] = c;
            cs
        },
    };
    let sq = |a: &LaurentSeries| a.mul(a);
    let kap = |i: usize, j: usize, k: usize| -> Result<LaurentSeries> {
        let (vi2, vj2, vk2) = (sq(&v[i]), sq(&v[j]), sq(&v[k]));
        let t1 = konst(2.0).div(&vi2)?;
        let t2 = konst(2.0).div(&vj2)?;
        let t3 = vk2.scale(3.0).div(&vi2.mul(&vj2))?;
        let ratio = v[i].div(&v[j])?.sub(&v[j].div(&v[i])?);
        let t4 = sq(&ratio).div(&vk2)?;
        let t5 = dv[i].div(&v[i])?.mul(&dv[j].div(&v[j])?);
        Ok(t1.add(&t2).sub(&t3).add(&t4).sub(&t5))
    };
    let mix = |i: usize, j: usize, k: usize| -> Result<LaurentSeries> {
        let vijk = v[i].mul(&v[j]).mul(&v[k]);
        let (vi2, vj2, vk2) = (sq(&v[i]), sq(&v[j]), sq(&v[k]));
        let t1 = dv[k].scale(2.0).div(&v[i].mul(&v[j]))?;
        let n1 = vi2.add(&vk2).sub(&vj2);
        let t2 = dv[i].div(&v[i])?.mul(&n1.div(&vijk)?);
        let n2 = vj2.add(&vk2).sub(&vi2);
        let t3 = dv[j].div(&v[j])?.mul(&n2.div(&vijk)?);
        Ok(t2.add(&t3).sub(&t1))
    };
    let rad = |i: usize| -> Result<LaurentSeries> { Ok(ddv[i].div(&v[i])?.neg()) };
    let cut = |s: LaurentSeries| s.truncate(order as i64);
    Ok(LaurentProfile {
        kappa: [cut(kap(0, 1, 2)?), cut(kap(0, 2, 1)?), cut(kap(1, 2, 0)?)],
        mixed: [cut(mix(1, 2, 0)?), cut(mix(2, 0, 1)?), cut(mix(0, 1, 2)?)],
        radial: [cut(rad(0)?), cut(rad(1)?), cut(rad(2)?)],
    })
}
