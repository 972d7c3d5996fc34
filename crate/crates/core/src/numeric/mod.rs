//! Numerical building blocks shared by the statistical modules.

pub mod normal;
pub mod quad;
pub mod rng;
pub mod sum;

pub use quad::{adaptive_simpson, integrate, integrate_tail, GaussLegendre, DEFAULT_TOL};
pub use rng::{derive_seed, UniformStream};
pub use sum::{kahan_sum, KahanSum};
