//! Confidence intervals for integrated quantiles and the Monte Carlo
//! harnesses that check the asymptotics behind them.
//!
//! The central identity, for a sample `X₁..Xₙ` from `F` and `x_p = F⁻¹(p)`:
//!
//! `√n ∫_p^1 (F⁻¹ − F_n⁻¹) du = n^{−1/2} Σ Yᵢ + √n Γ_p(F, F_n)`
//!
//! with `Yᵢ = E[(X − x_p)₊] − (Xᵢ − x_p)₊`. The first term is an iid sum;
//! the second is bounded by `(F⁻¹(p) − F_n⁻¹(p))(F_n(x_p) − F(x_p))`.
//!
//! Replication `r` of every harness draws from a stream keyed by a hash of
//! `(seed, n, r)`; replications run in parallel and reduce in index order.

use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::Model;
use crate::empirical::EmpiricalDistribution;
use crate::error::{check_open_unit, Error, Result};
use crate::gap::{gamma_star, GapReport};
use crate::numeric::{derive_seed, normal, KahanSum, UniformStream};
use crate::variance::{sigma2_plugin, sigma2_tail_variance, VarianceMethod};

pub const SMALL_SAMPLE_WARNING: &str = "small-sample: CLT approximation unreliable";
pub const ZERO_VARIANCE_WARNING: &str = "degenerate sample: zero variance, zero-width interval";

const SMALL_SAMPLE: usize = 30;
const COVERAGE_TAG: u64 = 0xC0;
const REMAINDER_TAG: u64 = 0xD1;
const CONSISTENCY_TAG: u64 = 0xE2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InferenceResult {
    pub estimate: f64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub level: f64,
    pub n: usize,
    pub warnings: Vec<String>,
}

impl InferenceResult {
    /// `estimate ± z_{(1+level)/2} · std_error`.
    pub fn normal(estimate: f64, std_error: f64, level: f64, n: usize, mut warnings: Vec<String>) -> Self {
        let half = normal::inv_cdf(0.5 * (1.0 + level)) * std_error;
        if std_error == 0.0 && !warnings.iter().any(|w| w == ZERO_VARIANCE_WARNING) {
            warnings.push(ZERO_VARIANCE_WARNING.to_string());
        }
        Self {
            estimate,
            std_error,
            ci_low: estimate - half,
            ci_high: estimate + half,
            level,
            n,
            warnings,
        }
    }

    pub fn width(&self) -> f64 {
        self.ci_high - self.ci_low
    }

    pub fn covers(&self, value: f64) -> bool {
        self.ci_low <= value && value <= self.ci_high
    }
}

/// Where the standard error of the ES estimate comes from.
#[derive(Clone, Copy)]
pub enum VarianceSource<'a> {
    PlugIn,
    Analytic(&'a dyn Model),
}

impl std::fmt::Debug for VarianceSource<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VarianceSource::PlugIn => f.write_str("PlugIn"),
            VarianceSource::Analytic(_) => f.write_str("Analytic"),
        }
    }
}

/// `Γ*_p(F, F_n)` with the sandwich bound attached.
pub fn remainder_gamma<F: Model + ?Sized>(f: &F, sample: &[f64], p: f64) -> Result<GapReport> {
    if !f.moment_class().finite_upper_first {
        return Err(Error::Moment("F must have a finite upper first moment".into()));
    }
    let emp = EmpiricalDistribution::new(sample)?;
    gamma_star(f, &emp, p)
}

/// Normal interval for `ES_p` from a sample.
pub fn es_confidence_interval(
    sample: &[f64],
    p: f64,
    level: f64,
    variance: VarianceSource<'_>,
) -> Result<InferenceResult> {
    let emp = EmpiricalDistribution::new(sample)?;
    es_interval_for(&emp, p, level, variance)
}

fn es_interval_for(
    emp: &EmpiricalDistribution,
    p: f64,
    level: f64,
    variance: VarianceSource<'_>,
) -> Result<InferenceResult> {
    check_open_unit("p", p)?;
    check_open_unit("level", level)?;
    let n = emp.len();
    let mut warnings = Vec::new();
    if n < SMALL_SAMPLE {
        warnings.push(SMALL_SAMPLE_WARNING.to_string());
    }
    let sigma2 = match variance {
        VarianceSource::PlugIn if n < 2 => 0.0,
        VarianceSource::PlugIn => sigma2_plugin(emp, p)?.sigma2,
        VarianceSource::Analytic(model) => sigma2_tail_variance(model, p)?.sigma2,
    };
    let estimate = emp.empirical_es(p)?;
    let se = sigma2.sqrt() / ((1.0 - p) * (n as f64).sqrt());
    Ok(InferenceResult::normal(estimate, se, level, n, warnings))
}

/// Settings for a coverage study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageSettings {
    pub n: usize,
    pub reps: usize,
    pub p: f64,
    pub level: f64,
    pub seed: u64,
    pub variance: VarianceMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub coverage: f64,
    pub reps: usize,
    pub n: usize,
    pub p: f64,
    pub level: f64,
    pub mean_width: f64,
    pub seed: u64,
    pub variance: VarianceMethod,
    pub true_es: f64,
}

/// One replication of a coverage study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Replication {
    pub index: usize,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub covered: bool,
}

fn replication_sample<M: Model + ?Sized>(model: &M, seed: u64, path: &[u64], n: usize) -> EmpiricalDistribution {
    let stream = UniformStream::new(derive_seed(seed, path));
    EmpiricalDistribution::from_vec(model.sample_from(stream, n))
        .expect("inverse-transform samples are finite")
}

/// Coverage of the analytic-variance ES interval.
pub fn mc_coverage_study<M: Model + ?Sized>(
    model: &M,
    n: usize,
    reps: usize,
    p: f64,
    level: f64,
    seed: u64,
) -> Result<CoverageReport> {
    let settings = CoverageSettings {
        n,
        reps,
        p,
        level,
        seed,
        variance: VarianceMethod::TailVariance,
    };
    Ok(mc_coverage_detailed(model, &settings)?.0)
}

/// Coverage study returning the per-replication rows as well.
///
/// `settings.variance` is `TailVariance` for the analytic standard error or
/// `PlugIn` for the per-sample estimate.
pub fn mc_coverage_detailed<M: Model + ?Sized>(
    model: &M,
    settings: &CoverageSettings,
) -> Result<(CoverageReport, Vec<Replication>)> {
    let CoverageSettings { n, reps, p, level, seed, variance } = *settings;
    check_open_unit("p", p)?;
    check_open_unit("level", level)?;
    if !model.moment_class().finite_upper_second {
        return Err(Error::Moment(
            "coverage study needs a finite upper second moment".into(),
        ));
    }
    if reps < 100 {
        return Err(Error::SampleSize { needed: 100, got: reps });
    }
    if n < 2 {
        return Err(Error::SampleSize { needed: 2, got: n });
    }
    if variance == VarianceMethod::DoubleIntegral {
        return Err(Error::Domain {
            name: "variance",
            value: f64::NAN,
            expected: "TailVariance or PlugIn",
        });
    }
    let true_es = model.upper_integral(p) / (1.0 - p);
    let analytic: Option<f64> = match variance {
        VarianceMethod::PlugIn => None,
        _ => Some(sigma2_tail_variance(model, p)?.sigma2),
    };
    let scale = (1.0 - p) * (n as f64).sqrt();

    let rows: Vec<Replication> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let emp = replication_sample(model, seed, &[COVERAGE_TAG, n as u64, r as u64], n);
            let sigma2 = analytic.unwrap_or_else(|| {
                sigma2_plugin(&emp, p).map(|v| v.sigma2).unwrap_or(0.0)
            });
            let estimate = emp.upper_integral(p) / (1.0 - p);
            let ci = InferenceResult::normal(estimate, sigma2.sqrt() / scale, level, n, Vec::new());
            Replication {
                index: r,
                estimate,
                ci_low: ci.ci_low,
                ci_high: ci.ci_high,
                covered: ci.covers(true_es),
            }
        })
        .collect();

    let covered = rows.iter().filter(|r| r.covered).count();
    let widths: KahanSum = rows.iter().map(|r| r.ci_high - r.ci_low).collect();
    let report = CoverageReport {
        coverage: covered as f64 / reps as f64,
        reps,
        n,
        p,
        level,
        mean_width: widths.value() / reps as f64,
        seed,
        variance,
        true_es,
    };
    Ok((report, rows))
}

/// Median of a statistic at one sample size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MedianRow {
    pub n: usize,
    pub median: f64,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let m = values.len();
    if m % 2 == 1 {
        values[m / 2]
    } else {
        0.5 * (values[m / 2 - 1] + values[m / 2])
    }
}

fn check_harness<M: Model + ?Sized>(model: &M, n_list: &[usize], reps: usize, p: f64) -> Result<()> {
    check_open_unit("p", p)?;
    if !model.moment_class().finite_upper_first {
        return Err(Error::Moment("model must have a finite upper first moment".into()));
    }
    let x_p = model.quantile(p);
    if !model.is_continuous_at(x_p) {
        return Err(Error::Domain {
            name: "x_p",
            value: x_p,
            expected: "a continuity point of F",
        });
    }
    if reps == 0 {
        return Err(Error::SampleSize { needed: 1, got: 0 });
    }
    if let Some(&n) = n_list.iter().find(|&&n| n == 0) {
        return Err(Error::SampleSize { needed: 1, got: n });
    }
    Ok(())
}

fn median_over_reps<M, S>(model: &M, n_list: &[usize], reps: usize, seed: u64, tag: u64, stat: S) -> Vec<MedianRow>
where
    M: Model + ?Sized,
    S: Fn(&EmpiricalDistribution) -> f64 + Sync,
{
    n_list
        .iter()
        .map(|&n| {
            let mut values: Vec<f64> = (0..reps)
                .into_par_iter()
                .map(|r| stat(&replication_sample(model, seed, &[tag, n as u64, r as u64], n)))
                .collect();
            MedianRow {
                n,
                median: median(&mut values),
            }
        })
        .collect()
}

/// Median over replications of `√n · Γ_p(F, F_n)` for each `n`.
pub fn mc_remainder_decay<M: Model + ?Sized>(
    model: &M,
    n_list: &[usize],
    reps: usize,
    p: f64,
    seed: u64,
) -> Result<Vec<MedianRow>> {
    check_harness(model, n_list, reps, p)?;
    Ok(median_over_reps(model, n_list, reps, seed, REMAINDER_TAG, |emp| {
        let gap = gamma_star(model, emp, p).expect("p validated").value;
        (emp.len() as f64).sqrt() * gap
    }))
}

/// Median over replications of `|∫_p^1 F_n⁻¹ − ∫_p^1 F⁻¹|` for each `n`.
pub fn consistency_check<M: Model + ?Sized>(
    model: &M,
    n_list: &[usize],
    reps: usize,
    p: f64,
    seed: u64,
) -> Result<Vec<MedianRow>> {
    check_harness(model, n_list, reps, p)?;
    let truth = model.upper_integral(p);
    Ok(median_over_reps(model, n_list, reps, seed, CONSISTENCY_TAG, |emp| {
        (emp.upper_integral(p) - truth).abs()
    }))
}

/// Both sides of the decomposition for one sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decomposition {
    /// `√n ∫_p^1 (F⁻¹ − F_n⁻¹) du`
    pub scaled_difference: f64,
    /// `n^{−1/2} Σ Yᵢ`
    pub linear_term: f64,
    /// `√n Γ_p(F, F_n)`
    pub remainder: f64,
}

impl Decomposition {
    pub fn residual(&self) -> f64 {
        self.scaled_difference - (self.linear_term + self.remainder)
    }
}

pub fn decomposition_terms<F: Model + ?Sized>(f: &F, sample: &[f64], p: f64) -> Result<Decomposition> {
    check_open_unit("p", p)?;
    if !f.moment_class().finite_upper_first {
        return Err(Error::Moment("F must have a finite upper first moment".into()));
    }
    let emp = EmpiricalDistribution::new(sample)?;
    let n = emp.len() as f64;
    let root_n = n.sqrt();
    let x_p = f.quantile(p);
    let truth = f.upper_integral(p);
    let mean_excess = truth - (1.0 - p) * x_p;
    let y_sum: KahanSum = sample.iter().map(|&x| mean_excess - (x - x_p).max(0.0)).collect();
    Ok(Decomposition {
        scaled_difference: root_n * (truth - emp.upper_integral(p)),
        linear_term: y_sum.value() / root_n,
        remainder: root_n * gamma_star(f, &emp, p)?.value,
    })
}
