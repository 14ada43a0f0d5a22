use super::{check_finite, check_normalization, LevyMeasureMoments, LevyModel, ModelSpec};
use crate::error::{Error, Result};
use crate::quad;
use crate::strip::Strip;
use num_complex::Complex64;

/// Variance Gamma with volatility ρ, variance rate ν and drift θ:
///
/// `Ψ(z) = (1/ν)[iz ln(1 − θν − ρ²ν/2) − ln(1 − izθν + z²ρ²ν/2)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceGamma {
    rho: f64,
    nu: f64,
    theta: f64,
}

impl VarianceGamma {
    pub fn new(rho: f64, nu: f64, theta: f64) -> Result<Self> {
        for (n, v) in [("vg_rho", rho), ("vg_nu", nu), ("vg_theta", theta)] {
            check_finite(n, v)?;
        }
        if rho <= 0.0 || nu <= 0.0 {
            return Err(Error::Config(format!(
                "variance-gamma needs vg_rho > 0 and vg_nu > 0 (got {rho}, {nu})"
            )));
        }
        let omega = 1.0 - theta * nu - 0.5 * rho * rho * nu;
        if omega <= 0.0 {
            return Err(Error::Config(format!(
                "variance-gamma needs 1 - vg_theta*vg_nu - vg_rho^2*vg_nu/2 > 0 (got {omega}); \
                 E[e^X] is infinite"
            )));
        }
        let m = VarianceGamma { rho, nu, theta };
        check_normalization(&m)?;
        Ok(m)
    }

    fn omega(&self) -> f64 {
        1.0 - self.theta * self.nu - 0.5 * self.rho * self.rho * self.nu
    }

    fn log_argument(&self, z: Complex64) -> Complex64 {
        let iz = Complex64::i() * z;
        1.0 - iz * self.theta * self.nu + z * z * (0.5 * self.rho * self.rho * self.nu)
    }

    /// Lévy density `e^{Ay − B|y|}/(ν|y|)`: returns `(A, B)`.
    fn density_rates(&self) -> (f64, f64) {
        let r2 = self.rho * self.rho;
        let a = self.theta / r2;
        let b = (self.theta * self.theta + 2.0 * r2 / self.nu).sqrt() / r2;
        (a, b)
    }
}

/// `∫_0^1 t e^{−ct} dt`
fn first_moment_unit(c: f64) -> f64 {
    if c.abs() < 1e-4 {
        0.5 - c / 3.0 + c * c / 8.0 - c * c * c / 30.0
    } else {
        (1.0 - (1.0 + c) * (-c).exp()) / (c * c)
    }
}

impl LevyModel for VarianceGamma {
    fn kind(&self) -> &'static str {
        "variance-gamma"
    }

    fn exponent(&self, z: Complex64) -> Complex64 {
        let iz = Complex64::i() * z;
        (iz * self.omega().ln() - self.log_argument(z).ln()) / self.nu
    }

    fn moment_strip(&self) -> Strip {
        // 1 − wθν − w²ρ²ν/2 > 0
        let r2n = self.rho * self.rho * self.nu;
        let disc = (self.theta * self.theta * self.nu * self.nu + 2.0 * r2n).sqrt();
        Strip::new((-self.theta * self.nu - disc) / r2n, (-self.theta * self.nu + disc) / r2n)
    }

    fn diffusion_sigma(&self) -> f64 {
        0.0
    }

    fn parameters(&self) -> Vec<(&'static str, f64)> {
        vec![("vg_rho", self.rho), ("vg_nu", self.nu), ("vg_theta", self.theta)]
    }

    fn with_parameter(&self, name: &str, value: f64) -> Result<ModelSpec> {
        let mut m = *self;
        match name {
            "vg_rho" => m.rho = value,
            "vg_nu" => m.nu = value,
            "vg_theta" => m.theta = value,
            _ => return Err(ModelSpec::new(*self).unknown_parameter(name)),
        }
        VarianceGamma::new(m.rho, m.nu, m.theta).map(ModelSpec::new)
    }

    fn exponent_derivative(&self, name: &str, z: Complex64) -> Option<Complex64> {
        let iz = Complex64::i() * z;
        let arg = self.log_argument(z);
        let omega = self.omega();
        match name {
            "vg_rho" => {
                let rn = self.rho * self.nu;
                Some((iz * (-rn / omega) - z * z * rn / arg) / self.nu)
            }
            "vg_theta" => Some(-iz / omega + iz / arg),
            _ => None,
        }
    }

    fn tilted_levy_moments(&self, tilt: f64, v: f64) -> Result<LevyMeasureMoments> {
        let (a, b) = self.density_rates();
        let a = a + tilt;
        // Decay rates of the positive and negative half-lines.
        let (cp, cn) = (b - a, b + a);
        if cp - v <= 0.0 || cn + v <= 0.0 || cp <= 0.0 || cn <= 0.0 {
            return Err(Error::Domain(format!(
                "variance-gamma large-jump moment ∫_(|y|>1) (e^(vy)+1) e^({tilt}y) ν(dy) is infinite at v = {v}"
            )));
        }
        let m2 = (first_moment_unit(cp) + first_moment_unit(cn)) / self.nu;
        let tail = |c: f64| quad::integrate_from_one(32, 1e-16, |t| (-c * t).exp() / t);
        let large = (tail(cp - v) + tail(cp) + tail(cn + v) + tail(cn)) / self.nu;
        Ok(LevyMeasureMoments {
            v,
            small_jump_second_moment: m2,
            large_jump_exp_moment: large,
        })
    }
}
