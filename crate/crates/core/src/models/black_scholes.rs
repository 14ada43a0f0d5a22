use super::{check_finite, check_normalization, JumpMeasure, LevyMeasureMoments, LevyModel, ModelSpec};
use crate::error::{Error, Result};
use crate::strip::Strip;
use num_complex::Complex64;

/// Geometric Brownian motion: `Ψ(z) = −iz(1 − iz)σ²/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlackScholes {
    sigma: f64,
}

impl BlackScholes {
    pub fn new(sigma: f64) -> Result<Self> {
        check_finite("sigma", sigma)?;
        if sigma <= 0.0 {
            return Err(Error::Config(format!(
                "black-scholes needs sigma > 0 (got {sigma}); a model without diffusion or jumps has no density"
            )));
        }
        let m = BlackScholes { sigma };
        check_normalization(&m)?;
        Ok(m)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl LevyModel for BlackScholes {
    fn kind(&self) -> &'static str {
        "black-scholes"
    }

    fn exponent(&self, z: Complex64) -> Complex64 {
        let iz = Complex64::i() * z;
        -iz * (1.0 - iz) * (0.5 * self.sigma * self.sigma)
    }

    fn moment_strip(&self) -> Strip {
        Strip::ALL
    }

    fn diffusion_sigma(&self) -> f64 {
        self.sigma
    }

    fn parameters(&self) -> Vec<(&'static str, f64)> {
        vec![("sigma", self.sigma)]
    }

    fn with_parameter(&self, name: &str, value: f64) -> Result<ModelSpec> {
        match name {
            "sigma" => Ok(ModelSpec::new(BlackScholes::new(value)?)),
            _ => Err(ModelSpec::new(*self).unknown_parameter(name)),
        }
    }

    fn exponent_derivative(&self, name: &str, z: Complex64) -> Option<Complex64> {
        let iz = Complex64::i() * z;
        (name == "sigma").then(|| -iz * (1.0 - iz) * self.sigma)
    }

    fn jump_measure(&self) -> Option<JumpMeasure> {
        Some(JumpMeasure::gaussian(0.0, 0.0, 0.0))
    }

    fn tilted_levy_moments(&self, _tilt: f64, v: f64) -> Result<LevyMeasureMoments> {
        Ok(LevyMeasureMoments {
            v,
            small_jump_second_moment: 0.0,
            large_jump_exp_moment: 0.0,
        })
    }
}
