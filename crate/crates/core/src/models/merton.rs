use super::{check_finite, check_normalization, JumpMeasure, LevyMeasureMoments, LevyModel, ModelSpec};
use crate::error::{Error, Result};
use crate::strip::Strip;
use num_complex::Complex64;

/// Merton jump diffusion: Brownian motion plus compound Poisson N(μ_J, σ_J²) jumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merton {
    sigma: f64,
    mu_j: f64,
    sigma_j: f64,
    lambda: f64,
}

impl Merton {
    pub fn new(sigma: f64, mu_j: f64, sigma_j: f64, lambda: f64) -> Result<Self> {
        for (n, v) in [("sigma", sigma), ("muj", mu_j), ("sigmaj", sigma_j), ("lambda", lambda)] {
            check_finite(n, v)?;
        }
        if sigma < 0.0 || sigma_j < 0.0 || lambda < 0.0 {
            return Err(Error::Config(format!(
                "merton needs sigma, sigmaj, lambda >= 0 (got {sigma}, {sigma_j}, {lambda})"
            )));
        }
        if sigma == 0.0 && lambda == 0.0 {
            return Err(Error::Config(
                "merton with sigma = 0 and lambda = 0 is deterministic and has no density".into(),
            ));
        }
        let m = Merton {
            sigma,
            mu_j,
            sigma_j,
            lambda,
        };
        check_normalization(&m)?;
        Ok(m)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn mu_j(&self) -> f64 {
        self.mu_j
    }

    pub fn sigma_j(&self) -> f64 {
        self.sigma_j
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn mean_jump_factor(&self) -> f64 {
        (self.mu_j + 0.5 * self.sigma_j * self.sigma_j).exp()
    }

    /// `E[e^{izY}]` for a single jump.
    fn jump_cf(&self, z: Complex64) -> Complex64 {
        let iz = Complex64::i() * z;
        (iz * self.mu_j - 0.5 * z * z * self.sigma_j * self.sigma_j).exp()
    }
}

impl LevyModel for Merton {
    fn kind(&self) -> &'static str {
        "merton"
    }

    fn exponent(&self, z: Complex64) -> Complex64 {
        let iz = Complex64::i() * z;
        let k = self.mean_jump_factor();
        -iz * (1.0 - iz) * (0.5 * self.sigma * self.sigma)
            + self.lambda * (self.jump_cf(z) - 1.0)
            - iz * self.lambda * (k - 1.0)
    }

    fn moment_strip(&self) -> Strip {
        Strip::ALL
    }

    fn diffusion_sigma(&self) -> f64 {
        self.sigma
    }

    fn parameters(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("sigma", self.sigma),
            ("muj", self.mu_j),
            ("sigmaj", self.sigma_j),
            ("lambda", self.lambda),
        ]
    }

    fn with_parameter(&self, name: &str, value: f64) -> Result<ModelSpec> {
        let mut m = *self;
        match name {
            "sigma" => m.sigma = value,
            "muj" => m.mu_j = value,
            "sigmaj" => m.sigma_j = value,
            "lambda" => m.lambda = value,
            _ => return Err(ModelSpec::new(*self).unknown_parameter(name)),
        }
        Merton::new(m.sigma, m.mu_j, m.sigma_j, m.lambda).map(ModelSpec::new)
    }

    fn exponent_derivative(&self, name: &str, z: Complex64) -> Option<Complex64> {
        let iz = Complex64::i() * z;
        let k = self.mean_jump_factor();
        let cf = self.jump_cf(z);
        match name {
            "sigma" => Some(-iz * (1.0 - iz) * self.sigma),
            "muj" => Some(self.lambda * iz * (cf - k)),
            "sigmaj" => Some(-self.lambda * self.sigma_j * (z * z * cf + iz * k)),
            "lambda" => Some(cf - 1.0 - iz * (k - 1.0)),
            _ => None,
        }
    }

    fn jump_measure(&self) -> Option<JumpMeasure> {
        Some(JumpMeasure::gaussian(self.lambda, self.mu_j, self.sigma_j))
    }

    fn tilted_levy_moments(&self, tilt: f64, v: f64) -> Result<LevyMeasureMoments> {
        JumpMeasure::gaussian(self.lambda, self.mu_j, self.sigma_j)
            .tilt(tilt)
            .moments(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table2() -> Merton {
        Merton::new(0.1, -0.005, 0.1, 1.0).unwrap()
    }

    #[test]
    fn matches_characteristic_function_termwise() {
        // E[e^{izX_1}] = exp{ iz[-σ²/2 - λ(k-1)] - z²σ²/2 + λ(e^{izμ - z²s²/2} - 1) }
        let m = table2();
        for u in [-7.5, -1.0, 0.3, 2.0, 40.0] {
            let z = Complex64::new(u, 0.0);
            let iz = Complex64::i() * z;
            let k = (-0.005f64 + 0.005).exp();
            let direct = iz * (-0.005 - (k - 1.0)) - z * z * 0.005
                + ((iz * -0.005) - z * z * 0.005).exp()
                - 1.0;
            let got = m.exponent(z);
            assert!((got - direct).norm() <= 1e-14 * direct.norm().max(1.0), "u={u}");
        }
    }

    #[test]
    fn parameter_derivatives_match_finite_differences() {
        let spec = ModelSpec::new(table2());
        for name in ["sigma", "muj", "sigmaj", "lambda"] {
            let theta = spec.parameter(name).unwrap();
            let h = 1e-6 * theta.abs();
            let up = spec.with_parameter(name, theta + h).unwrap();
            let down = spec.with_parameter(name, theta - h).unwrap();
            for (u, v) in [(0.7, 1.5), (-3.0, 1.5), (12.0, -0.5), (0.0, 2.0)] {
                let z = Complex64::new(u, v);
                let fd = (up.exponent(z) - down.exponent(z)) / (2.0 * h);
                let an = spec.exponent_derivative(name, z).unwrap();
                assert!((fd - an).norm() <= 1e-6 * an.norm().max(1e-3), "{name} at {z}");
            }
        }
    }

    #[test]
    fn trivial_derivative_values() {
        let m = table2();
        assert_eq!(m.exponent_derivative("lambda", Complex64::new(0.0, 0.0)).unwrap().norm(), 0.0);
        assert!(m.exponent_derivative("muj", Complex64::new(0.0, -1.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(Merton::new(0.0, 0.1, 0.1, 0.0).is_err());
        assert!(Merton::new(0.1, 0.1, -0.1, 1.0).is_err());
        assert!(Merton::new(0.0, 0.1, 0.1, 1.0).is_ok());
    }
}
