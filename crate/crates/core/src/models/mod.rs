//! Exponential Lévy models.
//!
//! Every model is described by its characteristic exponent Ψ, normalized so that
//! `E[exp(izX_t)] = exp(tΨ(z))` and `Ψ(-i) = 0` (the discounted stock is a
//! martingale). Models live behind the [`LevyModel`] trait and are selected by
//! name through a [`ModelRegistry`].

mod black_scholes;
mod custom;
mod esscher;
mod jumps;
mod merton;
mod variance_gamma;

pub use black_scholes::BlackScholes;
pub use custom::CustomModel;
pub use esscher::EsscherDual;
pub use jumps::{JumpMeasure, JumpShape};
pub use merton::Merton;
pub use variance_gamma::VarianceGamma;

use crate::error::{Error, Result};
use crate::strip::Strip;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

/// Tolerance on `|Ψ(-i)|` accepted at construction.
pub const MARTINGALE_TOLERANCE: f64 = 1e-10;

/// Relative step of the central-difference fallback for parameter derivatives.
pub const PARAM_FD_RELATIVE_STEP: f64 = 1e-6;

/// Lévy-measure integrals entering the growth bound on `|Ψ(-z)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyMeasureMoments {
    /// Shift `v` at which `large_jump_exp_moment` was evaluated.
    pub v: f64,
    /// `∫_{|y|≤1} y² ν(dy)`
    pub small_jump_second_moment: f64,
    /// `∫_{|y|>1} (e^{vy} + 1) ν(dy)`
    pub large_jump_exp_moment: f64,
}

/// A Lévy model for the log-return `X` of `S_t = S_0 exp(rt + X_t)`.
pub trait LevyModel: Send + Sync + fmt::Debug {
    fn kind(&self) -> &'static str;

    /// Ψ(z) with no strip check; callers go through [`char_exponent`].
    fn exponent(&self, z: Complex64) -> Complex64;

    /// Open interval of real `v` with `E[exp(vX_1)] < ∞`.
    fn moment_strip(&self) -> Strip;

    /// Volatility σ of the Brownian part.
    fn diffusion_sigma(&self) -> f64;

    /// Named parameters, in a stable order.
    fn parameters(&self) -> Vec<(&'static str, f64)>;

    /// Same model with one parameter replaced.
    fn with_parameter(&self, name: &str, value: f64) -> Result<ModelSpec>;

    /// Closed-form `∂Ψ(z)/∂θ`, when the model has one for `name`.
    fn exponent_derivative(&self, _name: &str, _z: Complex64) -> Option<Complex64> {
        None
    }

    /// The jump measure, when it is available in a form that can be integrated against.
    fn jump_measure(&self) -> Option<JumpMeasure> {
        None
    }

    /// Moments of the tilted measure `e^{ty} ν(dy)`.
    fn tilted_levy_moments(&self, tilt: f64, v: f64) -> Result<LevyMeasureMoments>;

    fn levy_moments(&self, v: f64) -> Result<LevyMeasureMoments> {
        self.tilted_levy_moments(0.0, v)
    }

    /// Jump part `Ψ_J(z) = Ψ(z) + iz(1 - iz)σ²/2`.
    fn jump_exponent(&self, z: Complex64) -> Complex64 {
        let s2 = self.diffusion_sigma().powi(2);
        let iz = Complex64::i() * z;
        self.exponent(z) + iz * (1.0 - iz) * (0.5 * s2)
    }
}

/// Shared handle to a model.
#[derive(Clone)]
pub struct ModelSpec(Arc<dyn LevyModel>);

impl ModelSpec {
    pub fn new<M: LevyModel + 'static>(model: M) -> Self {
        ModelSpec(Arc::new(model))
    }

    pub fn parameter(&self, name: &str) -> Result<f64> {
        self.parameters()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| self.unknown_parameter(name))
    }

    pub(crate) fn unknown_parameter(&self, name: &str) -> Error {
        let names: Vec<&str> = self.parameters().iter().map(|(n, _)| *n).collect();
        Error::UnknownParameter {
            name: name.to_string(),
            available: if names.is_empty() {
                "(none)".to_string()
            } else {
                names.join(", ")
            },
        }
    }
}

impl Deref for ModelSpec {
    type Target = dyn LevyModel;
    fn deref(&self) -> &Self::Target {
        self.0.as_ref()
    }
}

impl fmt::Debug for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Ψ(z), rejecting `z` outside the strip where `E[exp(izX_1)]` is finite.
pub fn char_exponent(model: &ModelSpec, z: Complex64) -> Result<Complex64> {
    // |exp(izX)| = exp(-Im(z)·X)
    model
        .moment_strip()
        .check(-z.im, &format!("the {} characteristic exponent (at -Im z)", model.kind()))?;
    Ok(model.exponent(z))
}

/// `∂Ψ(z)/∂θ` for a named model parameter: closed form when available, otherwise a
/// central difference with relative step [`PARAM_FD_RELATIVE_STEP`].
pub fn psi_param_derivative(model: &ModelSpec, param: &str, z: Complex64) -> Result<Complex64> {
    let theta = model.parameter(param)?;
    if let Some(d) = model.exponent_derivative(param, z) {
        return Ok(d);
    }
    let h = PARAM_FD_RELATIVE_STEP * theta.abs().max(1e-3);
    let up = model.with_parameter(param, theta + h)?;
    let down = model.with_parameter(param, theta - h)?;
    Ok((up.exponent(z) - down.exponent(z)) / (2.0 * h))
}

/// Upper bound on `|Ψ(-z)|` over `z ∈ iv + ℝ` with `|z| = z_modulus`:
///
/// `(|z|²+|z|)σ²/2 + (|z|² e^{|v|} + |z| e) m₂/2 + L(v) + |z| L(1)`
///
/// with `m₂ = ∫_{|y|≤1} y² ν(dy)` and `L(w) = ∫_{|y|>1} (e^{wy}+1) ν(dy)`. The
/// `|z|`-terms come from the compensator `iz I(-i)` of the martingale drift.
pub fn psi_growth_bound(model: &ModelSpec, v: f64, z_modulus: f64) -> Result<f64> {
    let m = model.levy_moments(v)?;
    let at_one = model.levy_moments(1.0)?;
    if !m.large_jump_exp_moment.is_finite() || !at_one.large_jump_exp_moment.is_finite() {
        return Err(Error::Domain(format!(
            "large-jump exponential moment of the {} model is infinite at v = {v}",
            model.kind()
        )));
    }
    let r = z_modulus.abs();
    let s2 = model.diffusion_sigma().powi(2);
    let m2 = m.small_jump_second_moment;
    Ok((r * r + r) * 0.5 * s2
        + 0.5 * m2 * (r * r * v.abs().exp() + r * std::f64::consts::E)
        + m.large_jump_exp_moment
        + r * at_one.large_jump_exp_moment)
}

/// The model under the dual martingale measure `dQ̃/dQ = exp(X_T)`: `Ψ̃(z) = Ψ(z - i)`.
pub fn esscher_dual(model: &ModelSpec) -> Result<ModelSpec> {
    EsscherDual::new(model.clone()).map(ModelSpec::new)
}

type Builder = Box<dyn Fn(&BTreeMap<String, f64>) -> Result<ModelSpec> + Send + Sync>;

/// Name → constructor map for models configured at runtime.
pub struct ModelRegistry {
    builders: BTreeMap<String, Builder>,
    aliases: BTreeMap<String, String>,
}

impl ModelRegistry {
    pub fn empty() -> Self {
        ModelRegistry {
            builders: BTreeMap::new(),
            aliases: BTreeMap::new(),
        }
    }

    /// Registry with the built-in Black-Scholes, Merton and Variance Gamma models.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register("black-scholes", |p| {
            Ok(ModelSpec::new(BlackScholes::new(require(p, "sigma")?)?))
        });
        reg.register("merton", |p| {
            Ok(ModelSpec::new(Merton::new(
                require(p, "sigma")?,
                require(p, "muj")?,
                require(p, "sigmaj")?,
                require(p, "lambda")?,
            )?))
        });
        reg.register("variance-gamma", |p| {
            Ok(ModelSpec::new(VarianceGamma::new(
                require(p, "vg_rho")?,
                require(p, "vg_nu")?,
                require(p, "vg_theta")?,
            )?))
        });
        reg.alias("bs", "black-scholes");
        reg.alias("blackscholes", "black-scholes");
        reg.alias("vg", "variance-gamma");
        reg.alias("variancegamma", "variance-gamma");
        reg
    }

    pub fn register<F>(&mut self, name: &str, builder: F)
    where
        F: Fn(&BTreeMap<String, f64>) -> Result<ModelSpec> + Send + Sync + 'static,
    {
        self.builders.insert(name.to_string(), Box::new(builder));
    }

    pub fn alias(&mut self, alias: &str, target: &str) {
        self.aliases.insert(alias.to_string(), target.to_string());
    }

    pub fn names(&self) -> Vec<&str> {
        self.builders.keys().map(String::as_str).collect()
    }

    pub fn build(&self, kind: &str, params: &BTreeMap<String, f64>) -> Result<ModelSpec> {
        let key = kind.to_ascii_lowercase().replace('_', "-");
        let key = self.aliases.get(&key).cloned().unwrap_or(key);
        let builder = self.builders.get(&key).ok_or_else(|| {
            Error::Config(format!(
                "unknown model kind `{kind}`; registered: {}",
                self.names().join(", ")
            ))
        })?;
        builder(params)
    }
}

fn require(params: &BTreeMap<String, f64>, key: &str) -> Result<f64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::Config(format!("missing model parameter `model.{key}`")))
}

pub(crate) fn check_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("parameter {name} = {value} is not finite")))
    }
}

/// Construction-time martingale and normalization check shared by all models.
pub(crate) fn check_normalization(model: &dyn LevyModel) -> Result<()> {
    let at_minus_i = model.exponent(Complex64::new(0.0, -1.0));
    if !(at_minus_i.norm() < MARTINGALE_TOLERANCE) {
        return Err(Error::Domain(format!(
            "{} model violates the martingale condition: |Ψ(-i)| = {:.3e}",
            model.kind(),
            at_minus_i.norm()
        )));
    }
    let at_zero = model.exponent(Complex64::new(0.0, 0.0));
    if !(at_zero.norm() < MARTINGALE_TOLERANCE) {
        return Err(Error::Domain(format!(
            "{} model has Ψ(0) = {at_zero}, expected 0",
            model.kind()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table2_merton() -> ModelSpec {
        ModelSpec::new(Merton::new(0.1, -0.005, 0.1, 1.0).unwrap())
    }

    #[test]
    fn registry_builds_by_name_and_alias() {
        let reg = ModelRegistry::standard();
        let mut p = BTreeMap::new();
        p.insert("sigma".to_string(), 0.1);
        let bs = reg.build("BS", &p).unwrap();
        assert_eq!(bs.kind(), "black-scholes");
        let err = reg.build("merton", &p).unwrap_err();
        assert!(err.to_string().contains("model.muj"));
        assert!(reg.build("heston", &p).unwrap_err().is_config());
    }

    #[test]
    fn unknown_parameter_lists_names() {
        let m = table2_merton();
        let err = psi_param_derivative(&m, "kappa", Complex64::new(1.0, 0.0)).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("muj") && msg.contains("lambda"), "{msg}");
    }

    #[test]
    fn char_exponent_strip_violation_is_reported() {
        let vg = ModelSpec::new(VarianceGamma::new(0.2, 1.0, -0.15).unwrap());
        // -Im z = 20 is beyond the upper exponential moment (≈ 11.76).
        let err = char_exponent(&vg, Complex64::new(0.0, -20.0)).unwrap_err();
        assert!(matches!(err, Error::Strip { .. }));
        assert!(char_exponent(&vg, Complex64::new(3.0, -1.5)).is_ok());
    }

    #[test]
    fn growth_bound_pure_diffusion() {
        let bs = ModelSpec::new(BlackScholes::new(0.1).unwrap());
        let b = psi_growth_bound(&bs, 1.5, 10.0).unwrap();
        assert!((b - 0.55).abs() < 1e-14, "{b}");
    }

    #[test]
    fn growth_bound_dominates_merton_exponent() {
        let m = table2_merton();
        let v = 1.5;
        for k in 0..100 {
            let u = -150.0 + 3.0 * k as f64;
            let z = Complex64::new(u, v);
            let psi = m.exponent(-z).norm();
            let bound = psi_growth_bound(&m, v, z.norm()).unwrap();
            assert!(bound >= psi, "u={u}: bound {bound} < |Ψ(-z)| {psi}");
        }
        // And at the stated modulus |z| = 100.
        let u = (100.0f64 * 100.0 - v * v).sqrt();
        for z in [Complex64::new(u, v), Complex64::new(-u, v)] {
            assert!(psi_growth_bound(&m, v, 100.0).unwrap() >= m.exponent(-z).norm());
        }
    }

    #[test]
    fn growth_bound_monotone_in_modulus() {
        let m = table2_merton();
        let mut last = 0.0;
        for k in 0..50 {
            let b = psi_growth_bound(&m, 1.5, k as f64 * 4.0).unwrap();
            assert!(b >= last);
            last = b;
        }
    }
}
