//! Asymptotic variance `σ²_{F,p}` of the integrated empirical quantile.
//!
//! Three routes:
//!
//! * [`sigma2_double_integral`]: `∫∫_{[x_p,∞)²} (F(x∧y) − F(x)F(y)) dx dy`,
//!   evaluated from the cdf alone;
//! * [`sigma2_tail_variance`]: `Var((X − x_p)₊)` from quantile integrals;
//! * [`sigma2_plugin`]: the sample variance of `(Xᵢ − x̂_p)₊`.
//!
//! The first two never share an integrand, so each checks the other.

use serde::Serialize;

use crate::distributions::{Model, T_MAX};
use crate::empirical::EmpiricalDistribution;
use crate::error::{check_open_unit, Error, Result};
use crate::numeric::{adaptive_simpson, integrate_tail, KahanSum, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceMethod {
    DoubleIntegral,
    TailVariance,
    PlugIn,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceReport {
    pub sigma2: f64,
    pub method: VarianceMethod,
    pub p: f64,
    pub x_p: f64,
}

fn require_finite_variance<M: Model + ?Sized>(m: &M) -> Result<()> {
    if m.moment_class().finite_upper_second {
        Ok(())
    } else {
        Err(Error::Moment(
            "variance needs a finite upper second moment".into(),
        ))
    }
}

/// Double integral over the quadrant above `x_p`.
///
/// By symmetry the integral is `2 ∫_{x_p}^∞ (1 − F(y)) ∫_{x_p}^y F(x) dx dy`.
/// Both axes are mapped with `x = x_p + c(e^r − 1)` where `c` is the
/// distance from `x_p` to the `(1+p)/2` quantile, so the outer integrand
/// decays exponentially in `r` whenever the variance is finite.
pub fn sigma2_double_integral<M: Model + ?Sized>(f: &M, p: f64) -> Result<VarianceReport> {
    check_open_unit("p", p)?;
    require_finite_variance(f)?;
    let x_p = f.quantile(p);
    let mut scale = f.quantile(0.5 * (1.0 + p)) - x_p;
    if !(scale > 0.0 && scale.is_finite()) {
        scale = 1.0;
    }
    let map = |r: f64| x_p + scale * r.exp_m1();
    let jac = |r: f64| scale * r.exp();

    let inner = |r: f64| adaptive_simpson(&|s: f64| f.cdf(map(s)) * jac(s), 0.0, r, 1e-13);
    let outer = |r: f64| {
        let tail = f.sf(map(r));
        if tail == 0.0 {
            0.0
        } else {
            tail * jac(r) * inner(r)
        }
    };

    let hi = f.support().1;
    let half = if hi.is_finite() {
        let r_max = ((hi - x_p) / scale).ln_1p();
        adaptive_simpson(&outer, 0.0, r_max, DEFAULT_TOL)
    } else {
        integrate_tail(&outer, 0.0, T_MAX, DEFAULT_TOL)
    };
    Ok(VarianceReport {
        sigma2: (2.0 * half).max(0.0),
        method: VarianceMethod::DoubleIntegral,
        p,
        x_p,
    })
}

/// `E[(X − x_p)₊²] − E[(X − x_p)₊]²` with `E[(X − x_p)₊^k] = ∫_p^1 (F⁻¹(u) − x_p)^k du`.
pub fn sigma2_tail_variance<M: Model + ?Sized>(f: &M, p: f64) -> Result<VarianceReport> {
    check_open_unit("p", p)?;
    require_finite_variance(f)?;
    let x_p = f.quantile(p);
    let t0 = -(-p).ln_1p();
    let moment = |k: i32| {
        let g = |t: f64| {
            let s = (-t).exp();
            if s == 0.0 {
                0.0
            } else {
                (f.upper_quantile(s) - x_p).max(0.0).powi(k) * s
            }
        };
        integrate_tail(&g, t0, T_MAX, DEFAULT_TOL * 0.1)
    };
    let m1 = moment(1);
    let m2 = moment(2);
    Ok(VarianceReport {
        sigma2: (m2 - m1 * m1).max(0.0),
        method: VarianceMethod::TailVariance,
        p,
        x_p,
    })
}

/// Sample variance (denominator `n − 1`) of `(Xᵢ − x̂_p)₊`.
pub fn sigma2_plugin(emp: &EmpiricalDistribution, p: f64) -> Result<VarianceReport> {
    check_open_unit("p", p)?;
    let n = emp.len();
    if n < 2 {
        return Err(Error::SampleSize { needed: 2, got: n });
    }
    let x_p = emp.quantile(p);
    let excess = |v: &f64| (v - x_p).max(0.0);
    let mean = emp.sorted_values().iter().map(excess).collect::<KahanSum>().value() / n as f64;
    let ss = emp
        .sorted_values()
        .iter()
        .map(|v| (excess(v) - mean).powi(2))
        .collect::<KahanSum>()
        .value();
    Ok(VarianceReport {
        sigma2: ss / (n - 1) as f64,
        method: VarianceMethod::PlugIn,
        p,
        x_p,
    })
}
