use super::{check_finite, check_normalization, LevyMeasureMoments, LevyModel, ModelSpec};
use crate::error::{Error, Result};
use crate::strip::Strip;
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

type ExponentFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
type MomentsFn = Arc<dyn Fn(f64) -> Result<LevyMeasureMoments> + Send + Sync>;

/// A model given by a user-supplied characteristic exponent.
///
/// The caller is responsible for the strip; normalization `Ψ(0) = Ψ(−i) = 0` is checked.
#[derive(Clone)]
pub struct CustomModel {
    name: String,
    sigma: f64,
    strip: Strip,
    exponent: ExponentFn,
    moments: MomentsFn,
}

impl CustomModel {
    pub fn new<P, M>(name: &str, sigma: f64, strip: Strip, exponent: P, moments: M) -> Result<Self>
    where
        P: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        M: Fn(f64) -> Result<LevyMeasureMoments> + Send + Sync + 'static,
    {
        check_finite("sigma", sigma)?;
        if sigma < 0.0 {
            return Err(Error::Config(format!("custom model needs sigma >= 0 (got {sigma})")));
        }
        if !(strip.contains(0.0) && strip.contains(1.0)) {
            return Err(Error::Config(format!(
                "custom model strip ({}, {}) must contain [0, 1]",
                strip.lo, strip.hi
            )));
        }
        let m = CustomModel {
            name: name.to_string(),
            sigma,
            strip,
            exponent: Arc::new(exponent),
            moments: Arc::new(moments),
        };
        check_normalization(&m)?;
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for CustomModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomModel")
            .field("name", &self.name)
            .field("sigma", &self.sigma)
            .field("strip", &self.strip)
            .finish_non_exhaustive()
    }
}

impl LevyModel for CustomModel {
    fn kind(&self) -> &'static str {
        "custom"
    }

    fn exponent(&self, z: Complex64) -> Complex64 {
        (self.exponent)(z)
    }

    fn moment_strip(&self) -> Strip {
        self.strip
    }

    fn diffusion_sigma(&self) -> f64 {
        self.sigma
    }

    fn parameters(&self) -> Vec<(&'static str, f64)> {
        Vec::new()
    }

    fn with_parameter(&self, name: &str, _value: f64) -> Result<ModelSpec> {
        Err(ModelSpec::new(self.clone()).unknown_parameter(name))
    }

    fn tilted_levy_moments(&self, tilt: f64, v: f64) -> Result<LevyMeasureMoments> {
        if tilt != 0.0 {
            return Err(Error::Unsupported(
                "tilted Lévy-measure moments of a custom model".into(),
            ));
        }
        (self.moments)(v)
    }
}
