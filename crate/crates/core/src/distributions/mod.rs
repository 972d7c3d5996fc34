//! Distribution models.
//!
//! Every model exposes its cdf, survival function and generalized inverse
//! `F⁻¹(u) = inf{x : F(x) ≥ u}`. Integrated quantiles, cdf integrals and
//! partial moments have quadrature defaults built only from those three
//! functions; families with closed forms override them. No density is ever
//! required.

mod families;
mod spec;

pub use families::{Exponential, Lomax, Normal, Uniform};
pub use spec::parse_dist_spec;

use serde::Serialize;

use crate::empirical::EmpiricalDistribution;
use crate::error::{check_open_unit, Error, Result};
use crate::numeric::{integrate, integrate_tail, UniformStream, DEFAULT_TOL};

/// Largest `t` used in `e^{-t}` / `e^{t}` substitutions.
pub(crate) const T_MAX: f64 = 700.0;

/// Which one-sided moments are finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MomentClass {
    /// `E[(X⁺)] < ∞`
    pub finite_upper_first: bool,
    /// `E[(X⁺)²] < ∞`
    pub finite_upper_second: bool,
    /// `E[(X⁻)] < ∞`
    pub finite_lower_first: bool,
    /// `E[(X⁻)²] < ∞`
    pub finite_lower_second: bool,
}

impl MomentClass {
    pub const ALL_FINITE: MomentClass = MomentClass {
        finite_upper_first: true,
        finite_upper_second: true,
        finite_lower_first: true,
        finite_lower_second: true,
    };
}

/// A distribution on the real line.
///
/// `quantile` expects `u` in (0, 1); callers that cannot guarantee that go
/// through [`Model::checked_quantile`].
pub trait Model: Send + Sync {
    fn cdf(&self, x: f64) -> f64;

    /// `1 − F(x)`; families override this to stay accurate in the right tail.
    fn sf(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }

    fn quantile(&self, u: f64) -> f64;

    /// `F⁻¹(1 − s)` without rounding `1 − s`.
    fn upper_quantile(&self, s: f64) -> f64 {
        self.quantile(1.0 - s)
    }

    fn moment_class(&self) -> MomentClass;

    /// Closed hull of the support; endpoints may be infinite.
    fn support(&self) -> (f64, f64);

    fn is_continuous_at(&self, _x: f64) -> bool {
        true
    }

    /// `∫_p^1 F⁻¹(u) du` with no moment check.
    fn upper_integral(&self, p: f64) -> f64 {
        quad_upper_integral(self, p)
    }

    /// `∫_0^p F⁻¹(u) du` with no moment check.
    fn lower_integral(&self, p: f64) -> f64 {
        quad_lower_integral(self, p)
    }

    /// Signed `∫_a^b (level − F(x)) dx`.
    fn level_gap_integral(&self, a: f64, b: f64, level: f64) -> f64 {
        quad_level_gap_integral(self, a, b, level)
    }

    /// `E[(X − y)₊] = ∫_y^∞ (1 − F(x)) dx`.
    fn upper_partial_moment(&self, y: f64) -> f64 {
        quad_upper_partial_moment(self, y)
    }

    fn checked_quantile(&self, u: f64) -> Result<f64> {
        check_open_unit("u", u)?;
        Ok(self.quantile(u))
    }

    fn integrated_upper_quantile(&self, p: f64) -> Result<f64> {
        check_open_unit("p", p)?;
        if !self.moment_class().finite_upper_first {
            return Err(Error::Moment(
                "upper integrated quantile needs a finite upper first moment".into(),
            ));
        }
        Ok(self.upper_integral(p))
    }

    fn integrated_lower_quantile(&self, p: f64) -> Result<f64> {
        check_open_unit("p", p)?;
        if !self.moment_class().finite_lower_first {
            return Err(Error::Moment(
                "lower integrated quantile needs a finite lower first moment".into(),
            ));
        }
        Ok(self.lower_integral(p))
    }

    /// Inverse-transform sample of size `n` from `UniformStream::new(seed)`.
    fn sample(&self, seed: u64, n: usize) -> Vec<f64> {
        self.sample_from(UniformStream::new(seed), n)
    }

    fn sample_from(&self, stream: UniformStream, n: usize) -> Vec<f64> {
        stream.take(n).map(|u| self.quantile(u)).collect()
    }
}

fn kinks<M: Model + ?Sized>(m: &M) -> Vec<f64> {
    let (lo, hi) = m.support();
    [lo, hi].into_iter().filter(|x| x.is_finite()).collect()
}

/// `∫_p^1 F⁻¹(u) du` by adaptive Simpson after `u = 1 − e^{−t}`.
pub fn quad_upper_integral<M: Model + ?Sized>(m: &M, p: f64) -> f64 {
    let t0 = -(-p).ln_1p();
    let f = |t: f64| {
        let s = (-t).exp();
        if s == 0.0 {
            0.0
        } else {
            m.upper_quantile(s) * s
        }
    };
    integrate_tail(&f, t0, T_MAX, DEFAULT_TOL)
}

/// `∫_0^p F⁻¹(u) du` by adaptive Simpson after `u = e^{−t}`.
pub fn quad_lower_integral<M: Model + ?Sized>(m: &M, p: f64) -> f64 {
    let t0 = -p.ln();
    let f = |t: f64| {
        let u = (-t).exp();
        if u == 0.0 {
            0.0
        } else {
            m.quantile(u) * u
        }
    };
    integrate_tail(&f, t0, T_MAX, DEFAULT_TOL)
}

fn quad_level_gap_integral<M: Model + ?Sized>(m: &M, a: f64, b: f64, level: f64) -> f64 {
    let f = |x: f64| {
        let c = m.cdf(x);
        if c < 0.5 {
            level - c
        } else {
            m.sf(x) - (1.0 - level)
        }
    };
    integrate(&f, a, b, &kinks(m), DEFAULT_TOL)
}

fn quad_upper_partial_moment<M: Model + ?Sized>(m: &M, y: f64) -> f64 {
    let (lo, hi) = m.support();
    if y >= hi {
        return 0.0;
    }
    let (start, below) = if y < lo { (lo, lo - y) } else { (y, 0.0) };
    let sf = |x: f64| m.sf(x);
    if hi.is_finite() {
        return below + integrate(&sf, start, hi, &kinks(m), DEFAULT_TOL);
    }
    // x = start + scale·(e^r − 1)
    let scale = start.abs().max(1.0);
    let f = |r: f64| {
        let g = scale * r.exp();
        m.sf(start + g - scale) * g
    };
    below + integrate_tail(&f, 0.0, T_MAX, DEFAULT_TOL)
}

/// Tag for [`QuantileModel`] variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Lomax,
    Exponential,
    Uniform,
    Normal,
    Empirical,
}

/// Closed set of supported models.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantileModel {
    Lomax(Lomax),
    Exponential(Exponential),
    Uniform(Uniform),
    Normal(Normal),
    Empirical(EmpiricalDistribution),
}

impl QuantileModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            QuantileModel::Lomax(_) => ModelKind::Lomax,
            QuantileModel::Exponential(_) => ModelKind::Exponential,
            QuantileModel::Uniform(_) => ModelKind::Uniform,
            QuantileModel::Normal(_) => ModelKind::Normal,
            QuantileModel::Empirical(_) => ModelKind::Empirical,
        }
    }

    /// Parameters in spec-string order; the sorted sample for `Empirical`.
    pub fn params(&self) -> Vec<f64> {
        match self {
            QuantileModel::Lomax(d) => vec![d.alpha(), d.scale()],
            QuantileModel::Exponential(d) => vec![d.rate()],
            QuantileModel::Uniform(d) => vec![d.low(), d.high()],
            QuantileModel::Normal(d) => vec![d.mean(), d.sd()],
            QuantileModel::Empirical(e) => e.sorted_values().to_vec(),
        }
    }

    fn inner(&self) -> &dyn Model {
        match self {
            QuantileModel::Lomax(d) => d,
            QuantileModel::Exponential(d) => d,
            QuantileModel::Uniform(d) => d,
            QuantileModel::Normal(d) => d,
            QuantileModel::Empirical(e) => e,
        }
    }
}

impl std::fmt::Display for QuantileModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuantileModel::Lomax(d) => write!(f, "lomax:{},{}", d.alpha(), d.scale()),
            QuantileModel::Exponential(d) => write!(f, "exp:{}", d.rate()),
            QuantileModel::Uniform(d) => write!(f, "uniform:{},{}", d.low(), d.high()),
            QuantileModel::Normal(d) => write!(f, "normal:{},{}", d.mean(), d.sd()),
            QuantileModel::Empirical(e) => write!(f, "empirical(n={})", e.len()),
        }
    }
}

impl From<EmpiricalDistribution> for QuantileModel {
    fn from(e: EmpiricalDistribution) -> Self {
        QuantileModel::Empirical(e)
    }
}

impl Model for QuantileModel {
    fn cdf(&self, x: f64) -> f64 {
        self.inner().cdf(x)
    }
    fn sf(&self, x: f64) -> f64 {
        self.inner().sf(x)
    }
    fn quantile(&self, u: f64) -> f64 {
        self.inner().quantile(u)
    }
    fn upper_quantile(&self, s: f64) -> f64 {
        self.inner().upper_quantile(s)
    }
    fn moment_class(&self) -> MomentClass {
        self.inner().moment_class()
    }
    fn support(&self) -> (f64, f64) {
        self.inner().support()
    }
    fn is_continuous_at(&self, x: f64) -> bool {
        self.inner().is_continuous_at(x)
    }
    fn upper_integral(&self, p: f64) -> f64 {
        self.inner().upper_integral(p)
    }
    fn lower_integral(&self, p: f64) -> f64 {
        self.inner().lower_integral(p)
    }
    fn level_gap_integral(&self, a: f64, b: f64, level: f64) -> f64 {
        self.inner().level_gap_integral(a, b, level)
    }
    fn upper_partial_moment(&self, y: f64) -> f64 {
        self.inner().upper_partial_moment(y)
    }
    fn checked_quantile(&self, u: f64) -> Result<f64> {
        self.inner().checked_quantile(u)
    }
}
