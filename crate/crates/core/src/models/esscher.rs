use super::{JumpMeasure, LevyMeasureMoments, LevyModel, ModelSpec};
use crate::error::{Error, Result};
use crate::strip::Strip;
use num_complex::Complex64;

/// A model seen under the dual measure `dQ̃/dQ = e^{X_T}`.
///
/// `Ψ̃(z) = Ψ(z − i)`: same diffusion, jump measure `e^y ν(dy)`. The discounted stock
/// is not a martingale here (the numéraire is the stock), so only `Ψ̃(0) = 0` holds.
#[derive(Debug, Clone)]
pub struct EsscherDual {
    inner: ModelSpec,
}

impl EsscherDual {
    pub fn new(inner: ModelSpec) -> Result<Self> {
        inner.moment_strip().check(1.0, "the dual-measure density e^X")?;
        let dual = EsscherDual { inner };
        let at_zero = dual.exponent(Complex64::new(0.0, 0.0));
        if at_zero.norm() > super::MARTINGALE_TOLERANCE {
            return Err(Error::Domain(format!(
                "dual exponent at 0 is {at_zero}; the original model is not a martingale"
            )));
        }
        Ok(dual)
    }

    pub fn inner(&self) -> &ModelSpec {
        &self.inner
    }
}

impl LevyModel for EsscherDual {
    fn kind(&self) -> &'static str {
        "esscher-dual"
    }

    fn exponent(&self, z: Complex64) -> Complex64 {
        self.inner.exponent(z - Complex64::i())
    }

    fn moment_strip(&self) -> Strip {
        self.inner.moment_strip().shift(-1.0)
    }

    fn diffusion_sigma(&self) -> f64 {
        self.inner.diffusion_sigma()
    }

    fn parameters(&self) -> Vec<(&'static str, f64)> {
        self.inner.parameters()
    }

    fn with_parameter(&self, name: &str, value: f64) -> Result<ModelSpec> {
        EsscherDual::new(self.inner.with_parameter(name, value)?).map(ModelSpec::new)
    }

    fn exponent_derivative(&self, name: &str, z: Complex64) -> Option<Complex64> {
        self.inner.exponent_derivative(name, z - Complex64::i())
    }

    fn jump_measure(&self) -> Option<JumpMeasure> {
        self.inner.jump_measure().map(|m| m.tilt(1.0))
    }

    fn tilted_levy_moments(&self, tilt: f64, v: f64) -> Result<LevyMeasureMoments> {
        self.inner.tilted_levy_moments(tilt + 1.0, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{esscher_dual, BlackScholes, Merton, VarianceGamma};
    use std::f64::consts::PI;

    #[test]
    fn dual_normalizes_at_zero_and_shifts() {
        let m = ModelSpec::new(Merton::new(0.1, -0.005, 0.1, 1.0).unwrap());
        let d = esscher_dual(&m).unwrap();
        assert!(d.exponent(Complex64::new(0.0, 0.0)).norm() < 1e-15);
        for (u, v) in [(0.3, 0.5), (-4.0, 2.0), (17.0, -0.2)] {
            let z = Complex64::new(u, v);
            let a = d.exponent(z);
            let b = m.exponent(z - Complex64::i());
            assert!((a - b).norm() <= 1e-13 * b.norm().max(1e-300));
        }
    }

    #[test]
    fn black_scholes_dual_density_is_tilted() {
        // Under Q: N(-σ²τ/2, σ²τ); under Q̃: N(+σ²τ/2, σ²τ).
        let (s, tau) = (0.1, 1.0);
        let var = s * s * tau;
        let bs = ModelSpec::new(BlackScholes::new(s).unwrap());
        let d = esscher_dual(&bs).unwrap();
        let gauss = |x: f64, m: f64| (-(x - m).powi(2) / (2.0 * var)).exp() / (2.0 * PI * var).sqrt();
        for k in 0..21 {
            let x = -0.5 + 0.05 * k as f64;
            assert!((gauss(x, 0.5 * var) - x.exp() * gauss(x, -0.5 * var)).abs() < 1e-10);
        }
        // The dual exponent is the Gaussian exponent with mean +σ²/2.
        let z = Complex64::new(3.0, 0.0);
        let iz = Complex64::i() * z;
        let expected = iz * 0.5 * var - 0.5 * var * z * z;
        assert!((d.exponent(z) - expected).norm() < 1e-15);
    }

    #[test]
    fn merton_dual_is_reparameterized_merton() {
        let (s, mu, sj, lam) = (0.1, -0.005, 0.1, 1.0);
        let m = ModelSpec::new(Merton::new(s, mu, sj, lam).unwrap());
        let d = esscher_dual(&m).unwrap();
        let jm = d.jump_measure().unwrap();
        let lam_dual = lam * (mu + 0.5 * sj * sj).exp();
        assert!((jm.intensity - lam_dual).abs() < 1e-15);
        // Ψ̃ and a Merton with (λ̃, μ+s², s) differ only by a linear drift term.
        let re = Merton::new(s, mu + sj * sj, sj, lam_dual).unwrap();
        let drift = |z: Complex64| (d.exponent(z) - re.exponent(z)) / (Complex64::i() * z);
        let c0 = drift(Complex64::new(1.0, 0.0));
        for u in [0.5, 2.0, -7.0, 30.0] {
            assert!((drift(Complex64::new(u, 0.0)) - c0).norm() < 1e-12);
        }
    }

    #[test]
    fn strip_shifts_by_one() {
        let vg = ModelSpec::new(VarianceGamma::new(0.2, 1.0, -0.15).unwrap());
        let d = esscher_dual(&vg).unwrap();
        assert!((d.moment_strip().hi - (vg.moment_strip().hi - 1.0)).abs() < 1e-15);
    }
}
