//! Standard normal distribution functions.

use libm::erfc;
use std::f64::consts::{PI, SQRT_2};

pub fn pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Φ(x), evaluated through erfc so both tails keep full relative accuracy.
pub fn cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// 1 − Φ(x).
pub fn sf(x: f64) -> f64 {
    0.5 * erfc(x / SQRT_2)
}
