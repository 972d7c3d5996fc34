//! Integrated quantiles, Expected Shortfall and distortion risk measures.
//!
//! The crate evaluates `∫_p^1 F⁻¹(u) du` for parametric and empirical
//! distributions, the gap functionals that compare a quantile-side integral
//! with a cdf-side one together with their two-sided bounds, the asymptotic
//! variance of the plug-in estimator, and confidence intervals built on it.
//!
//! ```
//! use intquant::distributions::{parse_dist_spec, Model};
//!
//! let f = parse_dist_spec("lomax:2,1").unwrap();
//! let es = f.integrated_upper_quantile(0.75).unwrap() / 0.25;
//! assert!((es - 3.0).abs() < 1e-12);
//! ```

pub mod distributions;
pub mod empirical;
pub mod error;
pub mod gap;
pub mod inference;
pub mod numeric;
pub mod riskmeasures;
pub mod variance;

pub use distributions::{parse_dist_spec, Model, ModelKind, MomentClass, QuantileModel};
pub use empirical::EmpiricalDistribution;
pub use error::{Error, Result};
