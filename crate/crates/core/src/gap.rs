//! Difference and gap functionals between two distributions.
//!
//! * `Δ_{p,z}(F,G) = ∫_p^1 (F⁻¹ − G⁻¹) du − ∫_z^∞ (G − F) dx`
//! * `Γ_p(F,G) = Δ_{p,F⁻¹(p)}(F,G)`
//! * `Γ*_p(F,G) = ∫_{F⁻¹(p)}^{G⁻¹(p)} (p − G(x)) dx`
//!
//! `Γ*` is a finite-interval integral and exists for any pair of cdfs.
//! `Δ` is evaluated as `Γ*_p − ∫_z^{F⁻¹(p)} (G − F) dx`, so no
//! semi-infinite integral is ever truncated. `Γ` is evaluated from its
//! definition (integrated quantiles minus the cdf-side tail integral), which
//! keeps it an independent check on `Γ*` for finite-mean pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::Model;
use crate::error::{check_open_unit, Error, Result};

/// Value of a functional with its two-sided bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    pub value: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// Whether the continuity precondition of the bound holds.
    pub bounds_applicable: bool,
    pub p: f64,
    /// Cut point for `Δ`; `None` for the gap forms.
    pub z: Option<f64>,
}

impl GapReport {
    /// `lower − tol ≤ value ≤ upper + tol`.
    pub fn within_bounds(&self, tol: f64) -> bool {
        self.lower_bound - tol <= self.value && self.value <= self.upper_bound + tol
    }
}

fn require_finite_mean<M: Model + ?Sized>(m: &M, which: &str) -> Result<()> {
    if m.moment_class().finite_upper_first {
        Ok(())
    } else {
        Err(Error::Moment(format!(
            "{which} must have a finite upper first moment"
        )))
    }
}

/// `Γ*_p(F,G)` with the bound `0 ≤ Γ* ≤ (F⁻¹(p) − G⁻¹(p))(G(x_p) − F(x_p))`,
/// which applies when `F` is continuous at `x_p = F⁻¹(p)`.
pub fn gamma_star<F, G>(f: &F, g: &G, p: f64) -> Result<GapReport>
where
    F: Model + ?Sized,
    G: Model + ?Sized,
{
    check_open_unit("p", p)?;
    let xf = f.quantile(p);
    let xg = g.quantile(p);
    Ok(GapReport {
        value: g.level_gap_integral(xf, xg, p),
        lower_bound: 0.0,
        upper_bound: (xf - xg) * (g.cdf(xf) - f.cdf(xf)),
        bounds_applicable: f.is_continuous_at(xf),
        p,
        z: None,
    })
}

/// `Γ_p(F,G)` from its definition; both models need finite upper means.
pub fn gamma<F, G>(f: &F, g: &G, p: f64) -> Result<GapReport>
where
    F: Model + ?Sized,
    G: Model + ?Sized,
{
    check_open_unit("p", p)?;
    require_finite_mean(f, "F")?;
    require_finite_mean(g, "G")?;
    let xf = f.quantile(p);
    let xg = g.quantile(p);
    let quantile_side = f.upper_integral(p) - g.upper_integral(p);
    // ∫_{x_F}^∞ (G − F) dx = E_F[(X − x_F)₊] − E_G[(X − x_F)₊]
    let cdf_side = f.upper_partial_moment(xf) - g.upper_partial_moment(xf);
    Ok(GapReport {
        value: quantile_side - cdf_side,
        lower_bound: 0.0,
        upper_bound: (xf - xg) * (g.cdf(xf) - f.cdf(xf)),
        bounds_applicable: f.is_continuous_at(xf),
        p,
        z: None,
    })
}

/// `Δ_{p,z}(F,G)` with `(F(z) − p)(F⁻¹(p) − z) ≤ Δ ≤ (G(z) − p)(z − G⁻¹(p))`.
pub fn delta<F, G>(f: &F, g: &G, p: f64, z: f64) -> Result<GapReport>
where
    F: Model + ?Sized,
    G: Model + ?Sized,
{
    check_open_unit("p", p)?;
    if !z.is_finite() {
        return Err(Error::Domain {
            name: "z",
            value: z,
            expected: "finite reals",
        });
    }
    require_finite_mean(f, "F")?;
    require_finite_mean(g, "G")?;
    let xf = f.quantile(p);
    let xg = g.quantile(p);
    let star = g.level_gap_integral(xf, xg, p);
    // ∫_z^{x_F} (G − F) = ∫ (p − F) − ∫ (p − G)
    let shift = f.level_gap_integral(z, xf, p) - g.level_gap_integral(z, xf, p);
    Ok(GapReport {
        value: star - shift,
        lower_bound: (f.cdf(z) - p) * (xf - z),
        upper_bound: (g.cdf(z) - p) * (z - xg),
        bounds_applicable: true,
        p,
        z: Some(z),
    })
}

fn check_lomax_shapes(alpha1: f64, alpha2: f64) -> Result<()> {
    for (i, (name, a)) in [("alpha1", alpha1), ("alpha2", alpha2)].into_iter().enumerate() {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Parameter {
                name: name.into(),
                position: i + 1,
                value: a.to_string(),
                reason: "must be finite and > 0".into(),
            });
        }
    }
    Ok(())
}

/// Closed-form `Γ_p` (equivalently `Γ*_p`) for `Lomax(α₁,1)` against
/// `Lomax(α₂,1)`:
///
/// `(1−p)^{(α₁−1)/α₁} + α₂/(1−α₂)·(1−p)^{(α₂−1)/α₂} − 1/(1−α₂)·(1−p)^{(α₂−1)/α₁}`
///
/// The expression is singular at `α₂ = 1`; that line is an error here.
pub fn lomax_gamma_closed_form(alpha1: f64, alpha2: f64, p: f64) -> Result<f64> {
    check_lomax_shapes(alpha1, alpha2)?;
    check_open_unit("p", p)?;
    if alpha2 == 1.0 {
        return Err(Error::Singularity("alpha2 = 1 in the Lomax gap closed form".into()));
    }
    let ln_s = (-p).ln_1p();
    let t1 = ((alpha1 - 1.0) / alpha1 * ln_s).exp();
    let t2 = alpha2 / (1.0 - alpha2) * ((alpha2 - 1.0) / alpha2 * ln_s).exp();
    let t3 = ((alpha2 - 1.0) / alpha1 * ln_s).exp() / (1.0 - alpha2);
    Ok(t1 + t2 - t3)
}

/// Closed-form `Δ_{p,z}` for `Lomax(α₁,1)` against `Lomax(α₂,1)`, both with
/// finite means, at `z ≥ 0`.
pub fn lomax_delta_closed_form(alpha1: f64, alpha2: f64, p: f64, z: f64) -> Result<f64> {
    check_lomax_shapes(alpha1, alpha2)?;
    check_open_unit("p", p)?;
    if alpha1 <= 1.0 || alpha2 <= 1.0 {
        return Err(Error::Moment(
            "Lomax difference closed form needs alpha1, alpha2 > 1".into(),
        ));
    }
    if !(z.is_finite() && z >= 0.0) {
        return Err(Error::Domain {
            name: "z",
            value: z,
            expected: "[0, ∞)",
        });
    }
    let ln_s = (-p).ln_1p();
    let ln_z = z.ln_1p();
    let term = |a: f64| {
        a / (a - 1.0) * ((1.0 - 1.0 / a) * ln_s).exp() - ((1.0 - a) * ln_z).exp() / (a - 1.0)
    };
    Ok(term(alpha1) - term(alpha2))
}

/// One point of a curve or surface; failures are kept as rows.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub p: f64,
    pub z: Option<f64>,
    pub outcome: Result<GapReport>,
}

// negated so NaN fails too
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn strictly_increasing(name: &'static str, grid: &[f64]) -> Result<()> {
    match grid.windows(2).find(|w| !(w[1] > w[0])) {
        Some(w) => Err(Error::Domain {
            name,
            value: w[1],
            expected: "a strictly increasing grid",
        }),
        None => Ok(()),
    }
}

/// `p ↦ Γ*_p(F,G)` over `p_grid`, in grid order.
pub fn gamma_curve<F, G>(f: &F, g: &G, p_grid: &[f64]) -> Result<Vec<GridRow>>
where
    F: Model + ?Sized,
    G: Model + ?Sized,
{
    strictly_increasing("p_grid", p_grid)?;
    Ok(p_grid
        .par_iter()
        .map(|&p| GridRow {
            p,
            z: None,
            outcome: gamma_star(f, g, p),
        })
        .collect())
}

/// `(p, z) ↦ Δ_{p,z}(F,G)`, rows ordered with `p` outer and `z` inner.
pub fn delta_surface<F, G>(f: &F, g: &G, p_grid: &[f64], z_grid: &[f64]) -> Result<Vec<GridRow>>
where
    F: Model + ?Sized,
    G: Model + ?Sized,
{
    require_finite_mean(f, "F")?;
    require_finite_mean(g, "G")?;
    let points: Vec<(f64, f64)> = p_grid
        .iter()
        .flat_map(|&p| z_grid.iter().map(move |&z| (p, z)))
        .collect();
    Ok(points
        .par_iter()
        .map(|&(p, z)| GridRow {
            p,
            z: Some(z),
            outcome: delta(f, g, p, z),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{parse_dist_spec, Lomax};
    use crate::empirical::EmpiricalDistribution;

    fn lomax(a: f64) -> Lomax {
        Lomax::new(a, 1.0).unwrap()
    }

    #[test]
    fn delta_of_identical_models_is_zero() {
        for spec in ["lomax:10,1", "exp:1", "normal:0,1", "uniform:0,2"] {
            let m = parse_dist_spec(spec).unwrap();
            for &(p, z) in &[(0.1, 0.0), (0.5, 1.3), (0.9, -0.5)] {
                let r = delta(&m, &m, p, z).unwrap();
                assert!(r.value.abs() < 1e-12, "{spec}: {}", r.value);
                assert!(r.within_bounds(0.0));
            }
        }
    }

    #[test]
    fn delta_matches_lomax_closed_form() {
        let r = delta(&lomax(10.0), &lomax(8.0), 0.9, 0.5).unwrap();
        let c = lomax_delta_closed_form(10.0, 8.0, 0.9, 0.5).unwrap();
        assert!((r.value - c).abs() < 1e-8, "{} vs {c}", r.value);
        assert!(r.within_bounds(1e-12));
    }

    #[test]
    fn delta_is_antisymmetric() {
        let f = lomax(10.0);
        let g = lomax(8.0);
        let a = delta(&f, &g, 0.9, 0.5).unwrap().value;
        let b = delta(&g, &f, 0.9, 0.5).unwrap().value;
        assert!((a + b).abs() < 1e-10);
    }

    #[test]
    fn gamma_examples() {
        let m = lomax(4.0);
        for p in [0.1, 0.5, 0.9] {
            assert!(gamma(&m, &m, p).unwrap().value.abs() < 1e-10);
        }
        let r = gamma(&lomax(10.0), &lomax(8.0), 0.5).unwrap();
        let c = lomax_gamma_closed_form(10.0, 8.0, 0.5).unwrap();
        assert!((r.value - c).abs() < 1e-8);
        assert!(r.bounds_applicable && r.within_bounds(1e-12));
    }

    #[test]
    fn gamma_zero_when_quantiles_coincide() {
        // Exp(1) and Uniform(0, 2 ln 2) share the median ln 2.
        let f = parse_dist_spec("exp:1").unwrap();
        let g = parse_dist_spec(&format!("uniform:0,{}", 2.0 * 2f64.ln())).unwrap();
        let r = gamma(&f, &g, 0.5).unwrap();
        assert!(r.value.abs() < 1e-10, "{}", r.value);
        assert!(r.upper_bound.abs() < 1e-15);
    }

    #[test]
    fn gamma_star_examples() {
        let r = gamma_star(&lomax(0.5), &lomax(0.3), 0.5).unwrap();
        let c = lomax_gamma_closed_form(0.5, 0.3, 0.5).unwrap();
        assert!((r.value - c).abs() < 1e-8, "{} vs {c}", r.value);
        let m = lomax(0.7);
        assert_eq!(gamma_star(&m, &m, 0.4).unwrap().value, 0.0);
        let a = gamma_star(&lomax(10.0), &lomax(8.0), 0.5).unwrap().value;
        let b = gamma(&lomax(10.0), &lomax(8.0), 0.5).unwrap().value;
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn moment_and_domain_errors() {
        assert!(matches!(gamma(&lomax(0.5), &lomax(2.0), 0.5), Err(Error::Moment(_))));
        assert!(matches!(delta(&lomax(2.0), &lomax(0.9), 0.5, 1.0), Err(Error::Moment(_))));
        assert!(gamma_star(&lomax(0.5), &lomax(0.2), 0.5).is_ok());
        assert!(matches!(gamma_star(&lomax(2.0), &lomax(2.0), 1.0), Err(Error::Domain { .. })));
        assert!(matches!(
            lomax_gamma_closed_form(2.0, 1.0, 0.5),
            Err(Error::Singularity(_))
        ));
        assert!(matches!(
            lomax_delta_closed_form(0.9, 2.0, 0.5, 0.0),
            Err(Error::Moment(_))
        ));
    }

    #[test]
    fn closed_forms_vanish_for_equal_shapes() {
        for a in [0.3, 2.0, 7.5] {
            for p in [0.1, 0.5, 0.99] {
                assert!(lomax_gamma_closed_form(a, a, p).unwrap().abs() < 1e-12);
            }
        }
        for a in [1.5, 9.0] {
            assert_eq!(lomax_delta_closed_form(a, a, 0.3, 2.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn delta_nonnegative_on_f_quantile() {
        let f = lomax(10.0);
        let z = f.quantile(0.5);
        assert!(lomax_delta_closed_form(10.0, 12.0, 0.5, z).unwrap() >= 0.0);
        assert!(delta(&f, &lomax(12.0), 0.5, z).unwrap().value >= -1e-12);
    }

    #[test]
    fn empirical_gamma_star_is_exact_and_flags_atoms() {
        let f = parse_dist_spec("uniform:0,1").unwrap();
        let g = EmpiricalDistribution::new(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        // x_F = 0.5, G⁻¹(0.5) = 0.2, ∫_{0.2}^{0.5} (G − 0.5) = 0.1·0 + 0.1·0.25 + 0.1·0.5
        let r = gamma_star(&f, &g, 0.5).unwrap();
        assert!((r.value - 0.075).abs() < 1e-15);
        assert!(r.bounds_applicable && r.within_bounds(0.0));
        let r = gamma_star(&g, &f, 0.5).unwrap();
        assert!(!r.bounds_applicable);
    }

    #[test]
    fn curves_and_surfaces() {
        let f = lomax(10.0);
        let grid: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
        let rows = gamma_curve(&f, &f, &grid).unwrap();
        assert_eq!(rows.len(), 99);
        assert!(rows.iter().all(|r| r.outcome.as_ref().unwrap().value == 0.0));

        let rows = gamma_curve(&f, &lomax(6.0), &grid).unwrap();
        assert!(rows.iter().all(|r| r.outcome.as_ref().unwrap().value >= 0.0));
        assert!(gamma_curve(&f, &f, &[0.5, 0.4]).is_err());

        let bad = gamma_curve(&f, &f, &[0.5, 1.5]).unwrap();
        assert!(bad[0].outcome.is_ok() && bad[1].outcome.is_err());

        let surf = delta_surface(&f, &f, &[0.2, 0.5, 0.8], &[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(surf.len(), 9);
        assert_eq!((surf[1].p, surf[1].z), (0.2, Some(0.5)));
        assert!(surf.iter().all(|r| r.outcome.as_ref().unwrap().value.abs() < 1e-12));
        assert!(delta_surface(&lomax(0.5), &f, &[0.5], &[0.0]).is_err());
    }
}
