use serde::Serialize;

use super::{MomentClass, Model};
use crate::error::{Error, Result};
use crate::numeric::normal;

fn param_error(name: &str, position: usize, value: f64, reason: &str) -> Error {
    Error::Parameter {
        name: name.to_string(),
        position,
        value: value.to_string(),
        reason: reason.to_string(),
    }
}

fn positive(name: &str, position: usize, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(param_error(name, position, value, "must be finite and > 0"))
    }
}

fn finite(name: &str, position: usize, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(param_error(name, position, value, "must be finite"))
    }
}

/// Lomax (Pareto type II) with cdf `1 − (1 + x/λ)^{−α}` on `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lomax {
    alpha: f64,
    scale: f64,
}

impl Lomax {
    pub fn new(alpha: f64, scale: f64) -> Result<Self> {
        Ok(Self {
            alpha: positive("alpha", 1, alpha)?,
            scale: positive("lambda", 2, scale)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `λ/(α − 1)` when α > 1.
    pub fn mean(&self) -> Option<f64> {
        (self.alpha > 1.0).then(|| self.scale / (self.alpha - 1.0))
    }
}

impl Model for Lomax {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.alpha * (x / self.scale).ln_1p()).exp_m1()
        }
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.alpha * (x / self.scale).ln_1p()).exp()
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        self.scale * (-(-u).ln_1p() / self.alpha).exp_m1()
    }

    fn upper_quantile(&self, s: f64) -> f64 {
        self.scale * (-s.ln() / self.alpha).exp_m1()
    }

    fn moment_class(&self) -> MomentClass {
        MomentClass {
            finite_upper_first: self.alpha > 1.0,
            finite_upper_second: self.alpha > 2.0,
            finite_lower_first: true,
            finite_lower_second: true,
        }
    }

    fn support(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    fn upper_integral(&self, p: f64) -> f64 {
        let (a, s) = (self.alpha, 1.0 - p);
        if a <= 1.0 {
            return f64::INFINITY;
        }
        self.scale * (a / (a - 1.0) * s.powf(1.0 - 1.0 / a) - s)
    }

    fn lower_integral(&self, p: f64) -> f64 {
        let a = self.alpha;
        let log_s = (-p).ln_1p();
        if a == 1.0 {
            return self.scale * (-log_s - p);
        }
        // 1 − s^{1−1/α} = −expm1((1 − 1/α) ln s)
        let head = -((1.0 - 1.0 / a) * log_s).exp_m1();
        self.scale * (a / (a - 1.0) * head - p)
    }
}

/// Exponential with the given rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exponential {
    rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Result<Self> {
        Ok(Self {
            rate: positive("rate", 1, rate)?,
        })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

impl Model for Exponential {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.rate * x).exp_m1()
        }
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.rate * x).exp()
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        -(-u).ln_1p() / self.rate
    }

    fn upper_quantile(&self, s: f64) -> f64 {
        -s.ln() / self.rate
    }

    fn moment_class(&self) -> MomentClass {
        MomentClass::ALL_FINITE
    }

    fn support(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    fn upper_integral(&self, p: f64) -> f64 {
        let s = 1.0 - p;
        s * (1.0 - (-p).ln_1p()) / self.rate
    }

    fn lower_integral(&self, p: f64) -> f64 {
        let s = 1.0 - p;
        (s * (-p).ln_1p() + p) / self.rate
    }
}

/// Uniform on `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Uniform {
    low: f64,
    high: f64,
}

impl Uniform {
    pub fn new(low: f64, high: f64) -> Result<Self> {
        let low = finite("a", 1, low)?;
        let high = finite("b", 2, high)?;
        if high <= low {
            return Err(param_error("b", 2, high, "must exceed a"));
        }
        Ok(Self { low, high })
    }

    pub fn low(&self) -> f64 {
        self.low
    }

    pub fn high(&self) -> f64 {
        self.high
    }
}

impl Model for Uniform {
    fn cdf(&self, x: f64) -> f64 {
        ((x - self.low) / (self.high - self.low)).clamp(0.0, 1.0)
    }

    fn sf(&self, x: f64) -> f64 {
        ((self.high - x) / (self.high - self.low)).clamp(0.0, 1.0)
    }

    fn quantile(&self, u: f64) -> f64 {
        self.low + (self.high - self.low) * u
    }

    fn upper_quantile(&self, s: f64) -> f64 {
        self.high - (self.high - self.low) * s
    }

    fn moment_class(&self) -> MomentClass {
        MomentClass::ALL_FINITE
    }

    fn support(&self) -> (f64, f64) {
        (self.low, self.high)
    }

    fn upper_integral(&self, p: f64) -> f64 {
        let s = 1.0 - p;
        self.low * s + (self.high - self.low) * s * (1.0 + p) / 2.0
    }

    fn lower_integral(&self, p: f64) -> f64 {
        self.low * p + (self.high - self.low) * p * p / 2.0
    }
}

/// Normal with mean and standard deviation. Integrated quantiles use the
/// quadrature defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normal {
    mean: f64,
    sd: f64,
}

impl Normal {
    pub fn new(mean: f64, sd: f64) -> Result<Self> {
        Ok(Self {
            mean: finite("mu", 1, mean)?,
            sd: positive("sigma", 2, sd)?,
        })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sd(&self) -> f64 {
        self.sd
    }
}

impl Model for Normal {
    fn cdf(&self, x: f64) -> f64 {
        normal::cdf((x - self.mean) / self.sd)
    }

    fn sf(&self, x: f64) -> f64 {
        normal::sf((x - self.mean) / self.sd)
    }

    fn quantile(&self, u: f64) -> f64 {
        self.mean + self.sd * normal::inv_cdf(u)
    }

    fn upper_quantile(&self, s: f64) -> f64 {
        self.mean + self.sd * normal::inv_sf(s)
    }

    fn moment_class(&self) -> MomentClass {
        MomentClass::ALL_FINITE
    }

    fn support(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect_quantile<M: Model>(m: &M, u: f64, mut lo: f64, mut hi: f64) -> f64 {
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if m.cdf(mid) >= u {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(Lomax::new(10.0, 1.0).unwrap().cdf(0.0), 0.0);
        assert!((Lomax::new(2.0, 1.0).unwrap().cdf(1.0) - 0.75).abs() < 1e-15);
        assert!((Uniform::new(0.0, 1.0).unwrap().cdf(0.3) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn quantile_examples() {
        assert!((Lomax::new(2.0, 1.0).unwrap().quantile(0.75) - 1.0).abs() < 1e-14);
        let e = Exponential::new(1.0).unwrap();
        assert!((e.quantile(1.0 - (-1.0f64).exp()) - 1.0).abs() < 1e-14);
        let n = Normal::new(0.0, 1.0).unwrap();
        let oracle = bisect_quantile(&n, 0.975, -10.0, 10.0);
        assert!((oracle - 1.959964).abs() < 1e-6);
        assert!((n.quantile(0.975) - oracle).abs() < 1e-10);
    }

    #[test]
    fn integrated_upper_examples() {
        let l = Lomax::new(2.0, 1.0).unwrap();
        assert!((l.upper_integral(0.75) - 0.75).abs() < 1e-14);
        let u = Uniform::new(0.0, 1.0).unwrap();
        assert!((u.upper_integral(0.5) - 0.375).abs() < 1e-15);
        let e = Exponential::new(1.0).unwrap();
        // quadrature of −ln(1 − u) over (0.9, 1) in the tail variable
        let oracle = crate::numeric::integrate_tail(
            &|t: f64| t * (-t).exp(),
            -(0.1f64).ln(),
            700.0,
            1e-13,
        );
        assert!((oracle - 0.1 * (1.0 + 10f64.ln())).abs() < 1e-10);
        assert!((e.upper_integral(0.9) - oracle).abs() < 1e-10);
    }

    #[test]
    fn normal_integrated_quantiles_match_density_identity() {
        // ∫_p^1 Φ⁻¹ = φ(Φ⁻¹(p)), ∫_0^p Φ⁻¹ = −φ(Φ⁻¹(p))
        let n = Normal::new(0.5, 2.0).unwrap();
        for i in 1..20 {
            let p = i as f64 / 20.0;
            let z = normal::inv_cdf(p);
            let up = 0.5 * (1.0 - p) + 2.0 * normal::pdf(z);
            let lo = 0.5 * p - 2.0 * normal::pdf(z);
            assert!((n.upper_integral(p) - up).abs() < 1e-9, "p={p}");
            assert!((n.lower_integral(p) - lo).abs() < 1e-9, "p={p}");
        }
    }

    #[test]
    fn moment_classes() {
        let mc = Lomax::new(0.5, 1.0).unwrap().moment_class();
        assert!(!mc.finite_upper_first && !mc.finite_upper_second);
        assert!(mc.finite_lower_first && mc.finite_lower_second);
        assert_eq!(Lomax::new(10.0, 1.0).unwrap().moment_class(), MomentClass::ALL_FINITE);
        let mc = Lomax::new(1.5, 1.0).unwrap().moment_class();
        assert!(mc.finite_upper_first && !mc.finite_upper_second);
        assert_eq!(Normal::new(0.0, 1.0).unwrap().moment_class(), MomentClass::ALL_FINITE);
    }

    #[test]
    fn lower_plus_upper_is_mean() {
        let l = Lomax::new(2.0, 1.0).unwrap();
        for &p in &[0.1, 0.5, 0.9] {
            assert!((l.lower_integral(p) + l.upper_integral(p) - 1.0).abs() < 1e-12);
        }
        let l = Lomax::new(1.0, 1.0).unwrap();
        assert!(l.lower_integral(0.5).is_finite());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Lomax::new(0.0, 1.0).is_err());
        assert!(Lomax::new(1.0, -1.0).is_err());
        assert!(Exponential::new(f64::NAN).is_err());
        assert!(Uniform::new(1.0, 1.0).is_err());
        assert!(Normal::new(0.0, 0.0).is_err());
        assert!(Normal::new(f64::INFINITY, 1.0).is_err());
    }
}
