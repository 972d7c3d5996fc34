//! Empirical cdf and quantile of a sample, with exact integrated quantiles.
//!
//! All integrals of `F_n` and `F_n⁻¹` are finite sums over order
//! statistics; nothing here uses quadrature.

use crate::distributions::{MomentClass, Model};
use crate::error::{check_open_unit, Error, Result};
use crate::numeric::KahanSum;

/// Sorted copy of a finite, nonempty sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Validates and sorts `sample`.
    pub fn new(sample: &[f64]) -> Result<Self> {
        Self::from_vec(sample.to_vec())
    }

    pub fn from_vec(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::SampleSize { needed: 1, got: 0 });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data {
                index,
                reason: format!("non-finite value {}", values[index]),
            });
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(Self { sorted: values })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Order statistics `x₍₁₎ ≤ … ≤ x₍ₙ₎`.
    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted
    }

    /// `#{i : xᵢ ≤ x}`.
    pub fn count_le(&self, x: f64) -> usize {
        self.sorted.partition_point(|&v| v <= x)
    }

    /// `F_n(x)`.
    pub fn empirical_cdf(&self, x: f64) -> f64 {
        self.count_le(x) as f64 / self.len() as f64
    }

    /// `x₍⌈nu⌉₎` for `u` in (0, 1].
    pub fn empirical_quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u <= 1.0) {
            return Err(Error::Domain {
                name: "u",
                value: u,
                expected: "(0, 1]",
            });
        }
        Ok(self.order_stat(ceil_index(self.len(), u)))
    }

    /// `∫_p^1 F_n⁻¹(u) du = x₍ₖ₎(k/n − p) + (1/n) Σ_{i>k} x₍ᵢ₎` with
    /// `k = ⌈np⌉`.
    pub fn integrated_empirical_quantile(&self, p: f64) -> Result<f64> {
        check_open_unit("p", p)?;
        Ok(self.upper_sum(p))
    }

    /// `(1/(1−p)) ∫_p^1 F_n⁻¹(u) du`.
    pub fn empirical_es(&self, p: f64) -> Result<f64> {
        Ok(self.integrated_empirical_quantile(p)? / (1.0 - p))
    }

    /// 1-based order statistic.
    fn order_stat(&self, k: usize) -> f64 {
        self.sorted[k - 1]
    }

    fn upper_sum(&self, p: f64) -> f64 {
        let n = self.len();
        let nf = n as f64;
        let k = ceil_index(n, p);
        let head = self.order_stat(k) * (k as f64 / nf - p).max(0.0);
        let tail: KahanSum = self.sorted[k..].iter().copied().collect();
        head + tail.value() / nf
    }

    fn lower_sum(&self, p: f64) -> f64 {
        let n = self.len();
        let nf = n as f64;
        let k = ceil_index(n, p);
        let body: KahanSum = self.sorted[..k - 1].iter().copied().collect();
        body.value() / nf + self.order_stat(k) * (p - (k - 1) as f64 / nf).max(0.0)
    }

    /// Exact `∫_a^b (level − F_n(x)) dx` for `a ≤ b`, summed step by step so
    /// each term carries the sign of `level − F_n` on its step.
    fn step_gap_integral(&self, a: f64, b: f64, level: f64) -> f64 {
        let n = self.len();
        let nf = n as f64;
        let mut acc = KahanSum::new();
        let mut i = self.count_le(a);
        let mut x = a;
        while i < n && self.sorted[i] < b {
            let v = self.sorted[i];
            acc.add((level - i as f64 / nf) * (v - x));
            x = v;
            while i < n && self.sorted[i] == v {
                i += 1;
            }
        }
        acc.add((level - i as f64 / nf) * (b - x));
        acc.value()
    }
}

/// Smallest `k ≥ 1` with `k ≥ n·u`, clamped to `n`.
///
/// `u` is read as the shortest decimal that round-trips to the same `f64`
/// and the comparison is done in exact integer arithmetic, so `u = 0.3`
/// with `n = 10` gives `k = 3` and `u = 0.5 + 1e-9` with `n = 4` gives 3.
pub fn ceil_index(n: usize, u: f64) -> usize {
    let k = decimal_ceil(n, u).unwrap_or_else(|| binary_ceil(n, u));
    k.clamp(1, n)
}

fn decimal_ceil(n: usize, u: f64) -> Option<usize> {
    if !(u > 0.0 && u <= 1.0) {
        return None;
    }
    let text = format!("{u:e}");
    let (mantissa, exponent) = text.split_once('e')?;
    let exponent: i32 = exponent.parse().ok()?;
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: u128 = format!("{int_part}{frac_part}").parse().ok()?;
    // u = digits · 10^(exponent − len(frac))
    let shift = exponent - frac_part.len() as i32;
    if shift >= 0 {
        let value = digits.checked_mul(10u128.checked_pow(shift as u32)?)?;
        return usize::try_from((n as u128).checked_mul(value)?).ok();
    }
    let den = 10u128.checked_pow((-shift) as u32)?;
    let num = (n as u128).checked_mul(digits)?;
    usize::try_from(num.div_ceil(den)).ok()
}

fn binary_ceil(n: usize, u: f64) -> usize {
    let nf = n as f64;
    let prod = nf * u;
    let err = nf.mul_add(u, -prod);
    let c = prod.ceil();
    let k = if c == prod && err > 0.0 { c + 1.0 } else { c };
    if k.is_finite() && k > 0.0 {
        k as usize
    } else {
        1
    }
}

impl Model for EmpiricalDistribution {
    fn cdf(&self, x: f64) -> f64 {
        self.empirical_cdf(x)
    }

    fn sf(&self, x: f64) -> f64 {
        (self.len() - self.count_le(x)) as f64 / self.len() as f64
    }

    fn quantile(&self, u: f64) -> f64 {
        self.order_stat(ceil_index(self.len(), u))
    }

    fn moment_class(&self) -> MomentClass {
        MomentClass::ALL_FINITE
    }

    fn support(&self) -> (f64, f64) {
        (self.sorted[0], self.sorted[self.len() - 1])
    }

    /// Any sample point carries an atom.
    fn is_continuous_at(&self, x: f64) -> bool {
        self.sorted.binary_search_by(|v| v.total_cmp(&x)).is_err()
    }

    fn upper_integral(&self, p: f64) -> f64 {
        self.upper_sum(p)
    }

    fn lower_integral(&self, p: f64) -> f64 {
        self.lower_sum(p)
    }

    fn level_gap_integral(&self, a: f64, b: f64, level: f64) -> f64 {
        if b < a {
            -self.step_gap_integral(b, a, level)
        } else {
            self.step_gap_integral(a, b, level)
        }
    }

    fn upper_partial_moment(&self, y: f64) -> f64 {
        let start = self.count_le(y);
        let acc: KahanSum = self.sorted[start..].iter().map(|&v| v - y).collect();
        acc.value() / self.len() as f64
    }

    fn checked_quantile(&self, u: f64) -> Result<f64> {
        self.empirical_quantile(u)
    }
}
