//! Lewis-type price integrals, tail probabilities, densities and the generalized
//! Black-Scholes decomposition `C = S(Q̃(X_τ > x) − e^x Q(X_τ > x))`.

use crate::contour::{batch_evaluate, build_grid, sum_functionals_with_magnitude, ContourSpec, MoneynessGrid, Multiplier, Spectrum};
use crate::error::{Error, Result};
use crate::models::{psi_param_derivative, ModelSpec};
use crate::strip::Strip;
use crate::transforms::{call_transform, PayoffTransform};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest accepted `|Im|` of a real quantity, relative to `max(1, |Re|)`.
/// Imaginary residual allowed per unit of summed term magnitude (rounding in long sums).
pub const ROUNDOFF_TOLERANCE: f64 = 1e-12;
pub const IMAG_TOLERANCE: f64 = 1e-9;

/// Point sets larger than this that sit on the FFT output grid are evaluated by FFT.
pub const FFT_THRESHOLD: usize = 32;
/// Largest excursion of a probability outside `[0, 1]` that is clamped rather than rejected.
pub const PROBABILITY_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketState {
    pub s: f64,
    pub r: f64,
    pub tau: f64,
}

impl MarketState {
    pub fn new(s: f64, r: f64, tau: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Config(format!("spot S must be > 0 (got {s})")));
        }
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::Config(format!("rate r must be >= 0 (got {r})")));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::Config(format!("time to maturity tau must be > 0 (got {tau})")));
        }
        Ok(MarketState { s, r, tau })
    }

    /// Log-forward-moneyness `x = ln(K/S) − rτ`.
    pub fn x_of_strike(&self, k: f64) -> f64 {
        (k / self.s).ln() - self.r * self.tau
    }

    pub fn strike_of_x(&self, x: f64) -> f64 {
        self.s * (x + self.r * self.tau).exp()
    }

    pub fn discount(&self) -> f64 {
        (-self.r * self.tau).exp()
    }
}

/// Which measure a tail probability is taken under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// The pricing measure `Q`.
    Pricing,
    /// The dual measure `dQ̃/dQ = e^{X_τ}`.
    Dual,
}

/// Contour integrals in `x` that the closed-form Greeks are assembled from.
///
/// Each value is `(1/2π)∫ e^{izx} e^{τΨ(−z)} m(z) dz` for the listed multiplier,
/// followed by the listed post-factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Functional {
    /// `f^{(n)}(x)`: `m = (iz)^n`.
    Density(u8),
    /// `Q(X_τ > x)`: `m = −1/(iz)`.
    Tail,
    /// `Q̃(X_τ > x)`: `m = −1/(1+iz)`, times `e^x`; plus 1 when `0 < v < 1`
    /// (residue of the pole at `z = i`).
    DualTail,
    /// `C/S`: `m = 1/(iz(1+iz))`, times `e^x`.
    CallOverSpot,
    /// `∂f/∂τ`: `m = Ψ(−z)`.
    DensityTimeDerivative,
    /// Jump part of the call theta over `S`: `m = Ψ_J(−z)/(iz(1+iz))`, times `e^x`.
    ThetaJump,
    /// `m = Ψ(−z)/(1+iz)`.
    CharmIntegral,
    /// `∂(C/S)/∂θ / τ`: `m = ∂Ψ(−z)/∂θ / (iz(1+iz))`, times `e^x`.
    ParamCall(&'static str),
}

impl Functional {
    pub fn label(&self) -> String {
        match self {
            Functional::Density(n) => format!("density derivative f^({n})"),
            Functional::Tail => "tail probability Q(X > x)".into(),
            Functional::DualTail => "dual tail probability Q~(X > x)".into(),
            Functional::CallOverSpot => "call price".into(),
            Functional::DensityTimeDerivative => "time derivative of the density".into(),
            Functional::ThetaJump => "jump part of theta".into(),
            Functional::CharmIntegral => "charm integral".into(),
            Functional::ParamCall(p) => format!("{p}-sensitivity integral"),
        }
    }

    /// Net power of `|z|` in the multiplier, for diagnostics.
    pub fn order(&self) -> i32 {
        match self {
            Functional::Density(n) => *n as i32,
            Functional::Tail | Functional::DualTail => -1,
            Functional::CallOverSpot | Functional::ThetaJump | Functional::ParamCall(_) => 0,
            Functional::DensityTimeDerivative => 2,
            Functional::CharmIntegral => 1,
        }
    }

    /// Contour shifts for which the integral represents the functional.
    fn check_v(&self, v: f64) -> Result<()> {
        let what = self.label();
        match self {
            Functional::Tail => Strip::new(0.0, f64::INFINITY).check(v, &what),
            Functional::DualTail => {
                Strip::new(0.0, f64::INFINITY).check(v, &what)?;
                if v == 1.0 {
                    return Err(Error::Strip {
                        what: format!("{what} (pole at Im z = 1)"),
                        v,
                        lo: 0.0,
                        hi: f64::INFINITY,
                    });
                }
                Ok(())
            }
            Functional::CallOverSpot => Strip::new(1.0, f64::INFINITY).check(v, &what),
            _ => Ok(()),
        }
    }

    fn multiplier<'a>(&self, model: &'a ModelSpec) -> Box<dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'a> {
        let i = Complex64::i();
        let s2 = model.diffusion_sigma().powi(2);
        match *self {
            Functional::Density(n) => Box::new(move |z, _| (i * z).powi(n as i32)),
            Functional::Tail => Box::new(move |z, _| -1.0 / (i * z)),
            Functional::DualTail => Box::new(move |z, _| -1.0 / (1.0 + i * z)),
            Functional::CallOverSpot => Box::new(move |z, _| 1.0 / (i * z * (1.0 + i * z))),
            Functional::DensityTimeDerivative => Box::new(move |_, psi| psi),
            Functional::ThetaJump => Box::new(move |z, psi| {
                let iz = i * z;
                // Ψ_J(−z) = Ψ(−z) − (diffusion part at −z) = Ψ(−z) − iz(1+iz)σ²/2
                (psi - iz * (1.0 + iz) * (0.5 * s2)) / (iz * (1.0 + iz))
            }),
            Functional::CharmIntegral => Box::new(move |z, psi| psi / (1.0 + i * z)),
            Functional::ParamCall(p) => {
                let d = param_derivative_fn(model, p);
                Box::new(move |z, _| {
                    let iz = i * z;
                    d(-z) / (iz * (1.0 + iz))
                })
            }
        }
    }

    fn finish(&self, raw: Complex64, x: f64, v: f64) -> Complex64 {
        let base = raw / (2.0 * PI);
        match self {
            Functional::DualTail => {
                let residue = if v < 1.0 { 1.0 } else { 0.0 };
                base * x.exp() + residue
            }
            Functional::CallOverSpot | Functional::ThetaJump | Functional::ParamCall(_) => base * x.exp(),
            _ => base,
        }
    }
}

/// `z ↦ ∂Ψ(z)/∂θ`, resolving the closed-form-or-difference choice once. Unknown
/// parameters yield NaN, which the summation reports as a non-finite integrand.
pub(crate) fn param_derivative_fn(model: &ModelSpec, param: &str) -> Box<dyn Fn(Complex64) -> Complex64 + Send + Sync> {
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let probe = Complex64::new(0.5, 0.5);
    if model.exponent_derivative(param, probe).is_some() {
        let name = param.to_string();
        let model = model.clone();
        return Box::new(move |z| model.exponent_derivative(&name, z).unwrap_or(nan));
    }
    if psi_param_derivative(model, param, probe).is_err() {
        return Box::new(move |_| nan);
    }
    let theta = model.parameter(param).unwrap_or(f64::NAN);
    let h = crate::models::PARAM_FD_RELATIVE_STEP * theta.abs().max(1e-3);
    match (model.with_parameter(param, theta + h), model.with_parameter(param, theta - h)) {
        (Ok(up), Ok(down)) => Box::new(move |z| (up.exponent(z) - down.exponent(z)) / (2.0 * h)),
        _ => Box::new(move |_| nan),
    }
}

/// A real result with the discarded imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Priced {
    pub value: f64,
    pub imag_residual: f64,
}

/// `noise` is the size of the summed terms; the imaginary part may reach
/// [`ROUNDOFF_TOLERANCE`] of it before cancellation is considered failed.
pub(crate) fn realize(what: &str, c: Complex64, noise: f64) -> Result<Priced> {
    let tolerance = IMAG_TOLERANCE * c.re.abs().max(1.0) + ROUNDOFF_TOLERANCE * noise;
    if !(c.re.is_finite() && c.im.is_finite()) {
        return Err(Error::NonFinite { re: c.re, im: c.im });
    }
    if c.im.abs() > tolerance {
        return Err(Error::ImaginaryResidual {
            what: what.to_string(),
            residual: c.im.abs(),
            tolerance,
        });
    }
    Ok(Priced {
        value: c.re,
        imag_residual: c.im.abs(),
    })
}

pub(crate) fn clamp_probability(what: &str, p: f64) -> Result<f64> {
    if p < -PROBABILITY_TOLERANCE || p > 1.0 + PROBABILITY_TOLERANCE {
        return Err(Error::Probability {
            what: what.to_string(),
            value: p,
        });
    }
    Ok(p.clamp(0.0, 1.0))
}

/// A model, a market and the sampled spectrum `e^{τΨ(−z_k)}` on one contour; every
/// quantity evaluated through it reuses the samples.
#[derive(Debug, Clone)]
pub struct Pricer {
    model: ModelSpec,
    market: MarketState,
    spectrum: Spectrum,
}

impl Pricer {
    pub fn new(model: &ModelSpec, market: MarketState, contour: ContourSpec) -> Result<Self> {
        let grid = build_grid(contour)?;
        let spectrum = Spectrum::new(model, &grid, market.tau)?;
        Ok(Pricer {
            model: model.clone(),
            market,
            spectrum,
        })
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn market(&self) -> &MarketState {
        &self.market
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn v(&self) -> f64 {
        self.spectrum.grid().v()
    }

    /// Stride `j` such that `xs[i] = xs[0] + i·j·δ` on the FFT output grid of spacing
    /// `δ = 2π/(Nh)`, when `xs` is long enough for the FFT to pay off.
    pub fn fft_stride(&self, xs: &[f64]) -> Option<usize> {
        let grid = self.spectrum.grid();
        if xs.len() <= FFT_THRESHOLD {
            return None;
        }
        let delta = grid.resonant_spacing();
        let j = ((xs[1] - xs[0]) / delta).round();
        if !(j >= 1.0) || (xs.len() - 1) * j as usize >= grid.len() {
            return None;
        }
        let on_grid = xs.iter().enumerate().all(|(i, &x)| {
            let want = xs[0] + (i as f64 * j) * delta;
            (x - want).abs() <= 1e-12 * want.abs().max(1.0)
        });
        on_grid.then_some(j as usize)
    }

    /// Direct sums, or one FFT per multiplier when [`fft_stride`](Self::fft_stride) applies.
    fn sum(&self, ms: &[Multiplier<'_>], xs: &[f64]) -> Result<(Vec<Vec<Complex64>>, Vec<f64>)> {
        let Some(j) = self.fft_stride(xs) else {
            return sum_functionals_with_magnitude(&self.spectrum, ms, xs);
        };
        let grid = self.spectrum.grid();
        let xg = MoneynessGrid::resonant(grid, xs[0]);
        let mut out = vec![Vec::with_capacity(ms.len()); xs.len()];
        let mut magnitude = Vec::with_capacity(ms.len());
        for m in ms {
            let g: Vec<Complex64> = grid
                .nodes()
                .zip(self.spectrum.exp_values())
                .zip(self.spectrum.psi())
                .map(|((z, e), psi)| e * m(z, *psi))
                .collect();
            magnitude.push(grid.weights().zip(&g).map(|(w, c)| (w * c).norm()).sum());
            let b = batch_evaluate(grid, &g, &xg)?;
            for (i, row) in out.iter_mut().enumerate() {
                row.push(b[i * j]);
            }
        }
        Ok((out, magnitude))
    }

    /// Evaluates several functionals at several `x`; `out[i][j]` is functional `j` at `xs[i]`.
    pub fn functionals(&self, fs: &[Functional], xs: &[f64]) -> Result<Vec<Vec<Priced>>> {
        let v = self.v();
        for f in fs {
            f.check_v(v)?;
            if let Functional::ParamCall(p) = f {
                self.model.parameter(p)?;
            }
            let m = f.multiplier(&self.model);
            self.spectrum
                .decay_probe_with(&self.model, f.order(), |z, psi| m(z, psi).norm(), &f.label())?;
        }
        let boxed: Vec<_> = fs.iter().map(|f| f.multiplier(&self.model)).collect();
        let refs: Vec<Multiplier<'_>> = boxed.iter().map(|b| b.as_ref() as Multiplier<'_>).collect();
        let (raw, magnitude) = self.sum(&refs, xs)?;
        raw.into_iter()
            .zip(xs)
            .map(|(row, &x)| {
                row.into_iter()
                    .zip(fs)
                    .zip(&magnitude)
                    .map(|((c, f), m)| {
                        let noise = (f.finish(Complex64::new(*m, 0.0), x, v) - f.finish(Complex64::new(0.0, 0.0), x, v)).re;
                        realize(&f.label(), f.finish(c, x, v), noise * (-v * x).exp())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn functional(&self, f: Functional, x: f64) -> Result<Priced> {
        Ok(self.functionals(&[f], &[x])?[0][0])
    }

    /// Price of an arbitrary payoff:
    /// `V = (e^{−rτ}/2π)∫ e^{−iz(ln S + rτ)} e^{τΨ(−z)} ŵ(z) dz`.
    pub fn price(&self, payoff: &PayoffTransform) -> Result<Priced> {
        self.kernel_value(payoff, &|_, _| Complex64::new(1.0, 0.0), 0, "price")
    }

    /// `(e^{−rτ}/2π)∫ m(z, Ψ(−z)) e^{−iz(ln S + rτ)} e^{τΨ(−z)} ŵ(z) dz`.
    pub fn kernel_value(
        &self,
        payoff: &PayoffTransform,
        m: Multiplier<'_>,
        order: i32,
        what: &str,
    ) -> Result<Priced> {
        let x = self.market.x_of_strike(payoff.strike());
        let out = self.kernel_values(payoff, &[m], &[order], &[what], &[x])?;
        Ok(out[0][0])
    }

    /// Kernel integrals for several multipliers, at the strikes of several `x` (same
    /// payoff shape, strike `K = S e^{x + rτ}`).
    pub fn kernel_values(
        &self,
        payoff: &PayoffTransform,
        ms: &[Multiplier<'_>],
        orders: &[i32],
        names: &[&str],
        xs: &[f64],
    ) -> Result<Vec<Vec<Priced>>> {
        payoff.check(self.v())?;
        let wrapped: Vec<Box<dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync + '_>> = ms
            .iter()
            .map(|m| {
                let m = *m;
                Box::new(move |z, psi| m(z, psi) * payoff.unit(z)) as Box<dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync>
            })
            .collect();
        for ((w, &order), name) in wrapped.iter().zip(orders).zip(names) {
            self.spectrum
                .decay_probe_with(&self.model, order, |z, psi| w(z, psi).norm(), name)?;
        }
        let refs: Vec<Multiplier<'_>> = wrapped.iter().map(|b| b.as_ref() as Multiplier<'_>).collect();
        let (raw, magnitude) = self.sum(&refs, xs)?;
        let disc = self.market.discount();
        let v = self.v();
        raw.into_iter()
            .zip(xs)
            .map(|(row, &x)| {
                let k = self.market.strike_of_x(x);
                let scale = disc * k.powf(payoff.strike_power()) / (2.0 * PI);
                row.into_iter()
                    .zip(names)
                    .zip(&magnitude)
                    .map(|((c, name), m)| realize(name, c * scale, m * scale * (-v * x).exp()))
                    .collect()
            })
            .collect()
    }

    /// `C = S e^x (1/2π)∫ e^{izx} e^{τΨ(−z)}/(iz(1+iz)) dz`.
    pub fn call_price(&self, x: f64) -> Result<Priced> {
        let p = self.functional(Functional::CallOverSpot, x)?;
        Ok(Priced {
            value: self.market.s * p.value,
            imag_residual: self.market.s * p.imag_residual,
        })
    }

    pub fn tail_prob(&self, x: f64, measure: Measure) -> Result<f64> {
        let f = match measure {
            Measure::Pricing => Functional::Tail,
            Measure::Dual => Functional::DualTail,
        };
        clamp_probability(&f.label(), self.functional(f, x)?.value)
    }

    pub fn density(&self, x: f64, n: u8) -> Result<f64> {
        if n > 4 {
            return Err(Error::Config(format!("density derivatives are available up to order 4 (got {n})")));
        }
        Ok(self.functional(Functional::Density(n), x)?.value)
    }

    /// `(C, Q̃(X_τ > x), Q(X_τ > x))`.
    pub fn generalized_bs(&self, x: f64) -> Result<(f64, f64, f64)> {
        let out = &self.functionals(&[Functional::CallOverSpot, Functional::DualTail, Functional::Tail], &[x])?[0];
        let dual = clamp_probability("dual tail probability", out[1].value)?;
        let q = clamp_probability("tail probability", out[2].value)?;
        Ok((self.market.s * out[0].value, dual, q))
    }
}

/// Price of `transform` on one contour.
pub fn price_european(
    model: &ModelSpec,
    market: MarketState,
    transform: &PayoffTransform,
    contour: ContourSpec,
) -> Result<Priced> {
    transform.check(contour.v)?;
    Pricer::new(model, market, contour)?.price(transform)
}

/// Call price at log-forward-moneyness `x`.
pub fn call_price(model: &ModelSpec, market: MarketState, x: f64, contour: ContourSpec) -> Result<Priced> {
    call_transform(market.strike_of_x(x))?.check(contour.v)?;
    Pricer::new(model, market, contour)?.call_price(x)
}

pub fn tail_prob(model: &ModelSpec, x: f64, tau: f64, contour: ContourSpec, measure: Measure) -> Result<f64> {
    Pricer::new(model, MarketState::new(1.0, 0.0, tau)?, contour)?.tail_prob(x, measure)
}

pub fn density(model: &ModelSpec, tau: f64, x: f64, n: u8, contour: ContourSpec) -> Result<f64> {
    Pricer::new(model, MarketState::new(1.0, 0.0, tau)?, contour)?.density(x, n)
}

pub fn generalized_bs(model: &ModelSpec, market: MarketState, x: f64, contour: ContourSpec) -> Result<(f64, f64, f64)> {
    Pricer::new(model, market, contour)?.generalized_bs(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{BlackScholes, Merton};
    use crate::normal;
    use crate::transforms::digital_transform;

    fn bs() -> ModelSpec {
        ModelSpec::new(BlackScholes::new(0.1).unwrap())
    }

    fn contour(v: f64) -> ContourSpec {
        ContourSpec::new(v, 200.0, 1 << 14)
    }

    #[test]
    fn bs_atm_forward_call() {
        let m = MarketState::new(1.0, 0.05, 1.0).unwrap();
        let c = call_price(&bs(), m, 0.0, contour(1.5)).unwrap();
        let exact = 2.0 * normal::cdf(0.05) - 1.0;
        assert!((c.value - exact).abs() < 1e-12, "{} vs {exact}", c.value);
        assert!(c.imag_residual < 1e-12);
    }

    #[test]
    fn generic_path_matches_call_path() {
        let model = ModelSpec::new(Merton::new(0.1, -0.005, 0.1, 1.0).unwrap());
        let m = MarketState::new(1.0, 0.05, 1.0).unwrap();
        let p = Pricer::new(&model, m, contour(1.5)).unwrap();
        for x in [-0.5, 0.0, 0.3] {
            let k = m.strike_of_x(x);
            let a = p.price(&call_transform(k).unwrap()).unwrap().value;
            let b = p.call_price(x).unwrap().value;
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-3), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn gaussian_tails_and_density() {
        let (s, tau) = (0.1, 1.0f64);
        let sd = s * tau.sqrt();
        let p = Pricer::new(&bs(), MarketState::new(1.0, 0.0, tau).unwrap(), contour(0.5)).unwrap();
        let p15 = Pricer::new(&bs(), MarketState::new(1.0, 0.0, tau).unwrap(), contour(1.5)).unwrap();
        for x in [-0.3, -0.05, 0.0, 0.2] {
            let q = normal::cdf((-x - 0.5 * sd * sd) / sd);
            let qd = normal::cdf((-x + 0.5 * sd * sd) / sd);
            assert!((p.tail_prob(x, Measure::Pricing).unwrap() - q).abs() < 1e-8);
            assert!((p.tail_prob(x, Measure::Dual).unwrap() - qd).abs() < 1e-8, "dual v<1");
            assert!((p15.tail_prob(x, Measure::Dual).unwrap() - qd).abs() < 1e-8, "dual v>1");
            let y = (x + 0.5 * sd * sd) / sd;
            let f0 = normal::pdf(y) / sd;
            let f1 = -y / sd * f0;
            let f2 = (y * y - 1.0) / (sd * sd) * f0;
            assert!((p.density(x, 0).unwrap() - f0).abs() < 1e-8);
            assert!((p.density(x, 1).unwrap() - f1).abs() < 1e-8);
            assert!((p.density(x, 2).unwrap() - f2).abs() < 1e-8);
        }
        assert!((p.tail_prob(-5.0, Measure::Pricing).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn decomposition_reproduces_black_scholes() {
        let m = MarketState::new(1.0, 0.05, 1.0).unwrap();
        let p = Pricer::new(&bs(), m, contour(1.5)).unwrap();
        for x in [-0.4, 0.0, 0.25] {
            let k = m.strike_of_x(x);
            let (c, dual, q) = p.generalized_bs(x).unwrap();
            assert!((c - (dual - x.exp() * q)).abs() < 1e-12);
            let d1 = ((1.0 / k).ln() + 0.05 + 0.005) / 0.1;
            let exact = normal::cdf(d1) - k * (-0.05f64).exp() * normal::cdf(d1 - 0.1);
            assert!((c - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn digital_is_discounted_tail() {
        let m = MarketState::new(1.0, 0.05, 1.0).unwrap();
        let p = Pricer::new(&bs(), m, contour(0.5)).unwrap();
        let x = 0.1;
        let d = p.price(&digital_transform(m.strike_of_x(x)).unwrap()).unwrap().value;
        let q = p.tail_prob(x, Measure::Pricing).unwrap();
        assert!((d - m.discount() * q).abs() < 1e-13);
    }

    #[test]
    fn strip_violations_are_rejected_before_evaluation() {
        let m = MarketState::new(1.0, 0.05, 1.0).unwrap();
        assert!(matches!(call_price(&bs(), m, 0.0, contour(0.5)), Err(Error::Strip { .. })));
        let p = Pricer::new(&bs(), m, contour(1.0)).unwrap();
        assert!(p.tail_prob(0.0, Measure::Dual).is_err());
    }

    #[test]
    fn probability_clamping() {
        assert_eq!(clamp_probability("p", 1.0 + 5e-8).unwrap(), 1.0);
        assert!(clamp_probability("p", -1e-6).is_err());
    }
}
