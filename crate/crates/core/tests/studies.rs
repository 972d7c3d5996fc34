//! Monte Carlo harnesses at the sizes they are meant to be run at.

use intquant::distributions::{Exponential, Lomax, Uniform};
use intquant::inference::{
    consistency_check, mc_coverage_detailed, mc_coverage_study, mc_remainder_decay, median, CoverageSettings,
};
use intquant::numeric::{derive_seed, UniformStream};
use intquant::variance::{sigma2_plugin, sigma2_tail_variance, VarianceMethod};
use intquant::{EmpiricalDistribution, Model};

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

#[test]
fn coverage_bands() {
    let m = Lomax::new(3.0, 1.0).unwrap();
    let r = mc_coverage_study(&m, 2000, 2000, 0.9, 0.95, 7).unwrap();
    assert!((0.93..=0.97).contains(&r.coverage), "{r:?}");
    let r = mc_coverage_study(&m, 2000, 2000, 0.9, 0.5, 7).unwrap();
    assert!((0.47..=0.53).contains(&r.coverage), "{r:?}");
}

#[test]
fn plugin_coverage_close_to_analytic() {
    let m = Lomax::new(3.0, 1.0).unwrap();
    let settings = |variance| CoverageSettings { n: 2000, reps: 2000, p: 0.9, level: 0.95, seed: 7, variance };
    let analytic = mc_coverage_detailed(&m, &settings(VarianceMethod::TailVariance)).unwrap().0;
    let plugin = mc_coverage_detailed(&m, &settings(VarianceMethod::PlugIn)).unwrap().0;
    let gap = (analytic.coverage - plugin.coverage).abs();
    assert!(
        gap <= 0.025,
        "plug-in {} vs analytic {}: {:.1} points apart",
        plugin.coverage,
        analytic.coverage,
        100.0 * gap
    );
}

#[test]
fn coverage_is_independent_of_thread_count() {
    let m = Lomax::new(3.0, 1.0).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let s = CoverageSettings { n: 300, reps: 200, p: 0.9, level: 0.95, seed: 3, variance: VarianceMethod::PlugIn };
                mc_coverage_detailed(&m, &s).unwrap()
            })
    };
    assert_eq!(run(1), run(8));
}

#[test]
fn remainder_decays() {
    let u = Uniform::new(0.0, 1.0).unwrap();
    let rows = mc_remainder_decay(&u, &[250, 1000, 4000], 500, 0.9, 1).unwrap();
    let medians: Vec<f64> = rows.iter().map(|r| r.median).collect();
    assert!(strictly_decreasing(&medians), "{medians:?}");
    assert!(medians[2] < medians[0] / 2.0);
    assert_eq!(rows, mc_remainder_decay(&u, &[250, 1000, 4000], 500, 0.9, 1).unwrap());
}

#[test]
fn consistency_errors_shrink() {
    let lomax = Lomax::new(2.0, 1.0).unwrap();
    assert!((lomax.integrated_upper_quantile(0.75).unwrap() - 0.75).abs() < 1e-12);
    let rows = consistency_check(&lomax, &[100, 1000, 10000], 200, 0.75, 5).unwrap();
    assert!(strictly_decreasing(&rows.iter().map(|r| r.median).collect::<Vec<_>>()), "{rows:?}");

    let e = Exponential::new(1.0).unwrap();
    assert!((e.integrated_upper_quantile(0.9).unwrap() - 0.330_258_509_299_404_6).abs() < 1e-12);
    let rows = consistency_check(&e, &[100, 1000, 10000], 200, 0.9, 5).unwrap();
    assert!(strictly_decreasing(&rows.iter().map(|r| r.median).collect::<Vec<_>>()), "{rows:?}");
}

#[test]
fn plugin_variance_is_consistent() {
    let m = Lomax::new(5.0, 1.0).unwrap();
    let truth = sigma2_tail_variance(&m, 0.5).unwrap().sigma2;
    let error_at = |n: usize| {
        let mut errs: Vec<f64> = (0..50u64)
            .map(|r| {
                let sample = m.sample_from(UniformStream::new(derive_seed(17, &[n as u64, r])), n);
                let e = EmpiricalDistribution::from_vec(sample).unwrap();
                (sigma2_plugin(&e, 0.5).unwrap().sigma2 - truth).abs()
            })
            .collect();
        median(&mut errs)
    };
    assert!(error_at(10_000) < error_at(100));
}
