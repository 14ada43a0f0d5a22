//! Quadrature on the shifted contour `iv + [−A/2, A/2]` and batch evaluation of
//! Fourier-type integrals `Σ_k W_k e^{iz_k x} g(z_k)` over many `x`.

use crate::error::{Error, Result};
use crate::models::{char_exponent, ModelSpec};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Nodes per block of the direct multi-`x` sums. Phases are recomputed exactly at
/// every block start and advanced by rotation inside it.
const BLOCK: usize = 4096;

/// Decay exponent required between `|z| = A/4` and `|z| = A/2` by the decay probe.
pub const DECAY_EXPONENT_THRESHOLD: f64 = 1.05;
/// Absolute level below which the decay probe accepts regardless of slope.
pub const DECAY_NEGLIGIBLE: f64 = 1e-14;

/// Per-node weights of a composite rule on `n` equispaced nodes, in units of the spacing.
pub trait QuadratureRule: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;
    fn weight(&self, k: usize, n: usize) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trapezoid;

impl QuadratureRule for Trapezoid {
    fn name(&self) -> &'static str {
        "trapezoid"
    }

    fn weight(&self, k: usize, n: usize) -> f64 {
        if k == 0 || k + 1 == n {
            0.5
        } else {
            1.0
        }
    }
}

/// Composite Simpson. With an even node count the last panel is integrated by the
/// trapezoid rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simpson;

impl QuadratureRule for Simpson {
    fn name(&self) -> &'static str {
        "simpson"
    }

    fn weight(&self, k: usize, n: usize) -> f64 {
        let last = if n % 2 == 1 { n - 1 } else { n - 2 };
        if k > last {
            return 0.5;
        }
        let w = if k == 0 || k == last {
            1.0 / 3.0
        } else if k % 2 == 1 {
            4.0 / 3.0
        } else {
            2.0 / 3.0
        };
        if n % 2 == 0 && k == last {
            w + 0.5
        } else {
            w
        }
    }
}

/// Looks up a rule by name.
pub fn rule_by_name(name: &str) -> Result<Arc<dyn QuadratureRule>> {
    let mut rules: BTreeMap<&str, Arc<dyn QuadratureRule>> = BTreeMap::new();
    rules.insert("trapezoid", Arc::new(Trapezoid));
    rules.insert("simpson", Arc::new(Simpson));
    let key = name.to_ascii_lowercase();
    rules.get(key.as_str()).cloned().ok_or_else(|| {
        Error::Config(format!(
            "unknown quadrature rule `{name}`; available: {}",
            rules.keys().copied().collect::<Vec<_>>().join(", ")
        ))
    })
}

/// How the rule weights are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepConvention {
    /// Weights times the node spacing `h = A/(N−1)`; constants integrate exactly.
    #[default]
    NodeSpacing,
    /// Weights times `A/N`, i.e. every sum is scaled by `(N−1)/N` relative to
    /// `NodeSpacing`.
    LengthOverCount,
}

impl StepConvention {
    pub fn name(&self) -> &'static str {
        match self {
            StepConvention::NodeSpacing => "spacing",
            StepConvention::LengthOverCount => "length-over-count",
        }
    }
}

impl FromStr for StepConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spacing" | "h" | "node-spacing" => Ok(StepConvention::NodeSpacing),
            "length-over-count" | "a/n" | "a-over-n" => Ok(StepConvention::LengthOverCount),
            _ => Err(Error::Config(format!(
                "unknown step convention `{s}`; available: spacing, length-over-count"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ContourSpec {
    pub v: f64,
    pub a: f64,
    pub n: usize,
    pub rule: Arc<dyn QuadratureRule>,
    pub step: StepConvention,
}

impl ContourSpec {
    pub fn new(v: f64, a: f64, n: usize) -> Self {
        ContourSpec {
            v,
            a,
            n,
            rule: Arc::new(Simpson),
            step: StepConvention::NodeSpacing,
        }
    }

    pub fn with_rule(mut self, rule: Arc<dyn QuadratureRule>) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_step(mut self, step: StepConvention) -> Self {
        self.step = step;
        self
    }

    pub fn with_v(mut self, v: f64) -> Self {
        self.v = v;
        self
    }

    /// Truncation `A` for which the FFT output spacing is exactly `delta`:
    /// `A = 2π(N−1)/(Nδ)`.
    pub fn truncation_for_spacing(n: usize, delta: f64) -> f64 {
        2.0 * PI * (n as f64 - 1.0) / (n as f64 * delta)
    }

    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(Error::Config(format!("contour truncation A must be > 0 (got {})", self.a)));
        }
        if self.n < 3 {
            return Err(Error::Config(format!("contour needs N >= 3 nodes (got {})", self.n)));
        }
        if !self.v.is_finite() {
            return Err(Error::Config(format!("contour shift v must be finite (got {})", self.v)));
        }
        Ok(())
    }
}

/// Nodes `z_k = h(k − (N−1)/2) + iv` and scaled weights of a [`ContourSpec`].
///
/// Nodes and weights are produced on demand, so a grid costs O(1) memory.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    spec: ContourSpec,
    h: f64,
    scale: f64,
}

pub fn build_grid(spec: ContourSpec) -> Result<QuadratureGrid> {
    spec.validate()?;
    let h = spec.a / (spec.n as f64 - 1.0);
    let scale = match spec.step {
        StepConvention::NodeSpacing => h,
        StepConvention::LengthOverCount => spec.a / spec.n as f64,
    };
    Ok(QuadratureGrid { spec, h, scale })
}

impl QuadratureGrid {
    pub fn spec(&self) -> &ContourSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.spec.n
    }

    pub fn is_empty(&self) -> bool {
        self.spec.n == 0
    }

    pub fn v(&self) -> f64 {
        self.spec.v
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// Real part of node `k`.
    #[inline]
    pub fn abscissa(&self, k: usize) -> f64 {
        self.h * (k as f64 - 0.5 * (self.spec.n as f64 - 1.0))
    }

    #[inline]
    pub fn node(&self, k: usize) -> Complex64 {
        Complex64::new(self.abscissa(k), self.spec.v)
    }

    /// Rule weight `w_k` (dimensionless).
    #[inline]
    pub fn rule_weight(&self, k: usize) -> f64 {
        self.spec.rule.weight(k, self.spec.n)
    }

    /// `W_k` such that `∫ g ≈ Σ_k W_k g(z_k)`.
    #[inline]
    pub fn weight(&self, k: usize) -> f64 {
        self.scale * self.rule_weight(k)
    }

    pub fn nodes(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.spec.n).map(move |k| self.node(k))
    }

    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.spec.n).map(move |k| self.weight(k))
    }

    /// Output spacing `δ = 2π/(N h)` that makes the FFT exact.
    pub fn resonant_spacing(&self) -> f64 {
        2.0 * PI / (self.spec.n as f64 * self.h)
    }
}

fn non_finite(z: Complex64) -> Error {
    Error::NonFinite { re: z.re, im: z.im }
}

/// `Σ_k W_k g(z_k)`.
pub fn integrate<F>(grid: &QuadratureGrid, integrand: F) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let n = grid.len();
    let partials: Vec<Result<Complex64>> = (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in b * BLOCK..((b + 1) * BLOCK).min(n) {
                let z = grid.node(k);
                let g = integrand(z);
                if !(g.re.is_finite() && g.im.is_finite()) {
                    return Err(non_finite(z));
                }
                acc += grid.weight(k) * g;
            }
            Ok(acc)
        })
        .collect();
    partials.into_iter().sum()
}

/// Samples `Ψ(−z_k)` and `e^{τΨ(−z_k)}` of a model on a grid.
#[derive(Debug, Clone)]
pub struct Spectrum {
    grid: QuadratureGrid,
    tau: f64,
    psi: Vec<Complex64>,
    exp: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(model: &ModelSpec, grid: &QuadratureGrid, tau: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::Config(format!("time to maturity must be > 0 (got {tau})")));
        }
        // Ψ(−z) is finite when −Im(−z) = v lies in the moment strip.
        char_exponent(model, -grid.node(0))?;
        let n = grid.len();
        let mut psi = vec![Complex64::new(0.0, 0.0); n];
        let mut exp = vec![Complex64::new(0.0, 0.0); n];
        psi.par_chunks_mut(BLOCK)
            .zip(exp.par_chunks_mut(BLOCK))
            .enumerate()
            .for_each(|(b, (p, e))| {
                for (i, (pk, ek)) in p.iter_mut().zip(e.iter_mut()).enumerate() {
                    let z = grid.node(b * BLOCK + i);
                    *pk = model.exponent(-z);
                    *ek = (tau * *pk).exp();
                }
            });
        if let Some(k) = psi.iter().position(|p| !(p.re.is_finite() && p.im.is_finite())) {
            return Err(non_finite(grid.node(k)));
        }
        Ok(Spectrum {
            grid: grid.clone(),
            tau,
            psi,
            exp,
        })
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `Ψ(−z_k)`
    pub fn psi(&self) -> &[Complex64] {
        &self.psi
    }

    /// `e^{τΨ(−z_k)}`
    pub fn exp_values(&self) -> &[Complex64] {
        &self.exp
    }

    /// Checks that `|z|^order |e^{τΨ(−z)}|` decays fast enough to be integrable,
    /// comparing `|z| = A/4` against `|z| = A/2` on the contour.
    pub fn decay_probe(&self, model: &ModelSpec, order: i32, what: &str) -> Result<()> {
        self.decay_probe_with(model, order, |z, _| z.norm().powi(order), what)
    }

    /// Decay probe for `|m(z, Ψ(−z))| |e^{τΨ(−z)}|`; `order` only labels the diagnostic.
    pub fn decay_probe_with<F>(&self, model: &ModelSpec, order: i32, weight: F, what: &str) -> Result<()>
    where
        F: Fn(Complex64, Complex64) -> f64,
    {
        let a = self.grid.spec().a;
        let v = self.grid.v();
        let sample = |modulus: f64| -> f64 {
            let u = (modulus * modulus - v * v).max(0.0).sqrt();
            [u, -u]
                .into_iter()
                .map(|re| {
                    let z = Complex64::new(re, v);
                    let psi = model.exponent(-z);
                    weight(z, psi) * (self.tau * psi).exp().norm()
                })
                .fold(0.0, f64::max)
        };
        let near = sample(0.25 * a);
        let far = sample(0.5 * a);
        let slope_ok = far > 0.0 && (near / far).log2() > DECAY_EXPONENT_THRESHOLD;
        if far < DECAY_NEGLIGIBLE || slope_ok {
            Ok(())
        } else {
            Err(Error::DecayProbe {
                what: what.to_string(),
                order,
                near,
                far,
            })
        }
    }
}

/// Integrand multiplier `m(z, Ψ(−z))`, applied on top of `e^{τΨ(−z)}`.
pub type Multiplier<'a> = &'a (dyn Fn(Complex64, Complex64) -> Complex64 + Sync);

/// `out[i][j] = Σ_k W_k e^{iz_k x_i} e^{τΨ(−z_k)} m_j(z_k, Ψ(−z_k))` by direct summation.
///
/// The reduction order is fixed by the block partition, so results do not depend on
/// the number of threads.
pub fn sum_functionals(
    spectrum: &Spectrum,
    multipliers: &[Multiplier<'_>],
    xs: &[f64],
) -> Result<Vec<Vec<Complex64>>> {
    Ok(sum_functionals_with_magnitude(spectrum, multipliers, xs)?.0)
}

/// [`sum_functionals`] together with `Σ_k |W_k e^{τΨ(−z_k)} m_j(z_k)|` per multiplier,
/// the scale of the rounding error in the sums (before the `e^{−vx}` damping).
pub fn sum_functionals_with_magnitude(
    spectrum: &Spectrum,
    multipliers: &[Multiplier<'_>],
    xs: &[f64],
) -> Result<(Vec<Vec<Complex64>>, Vec<f64>)> {
    let grid = &spectrum.grid;
    let n = grid.len();
    let nj = multipliers.len();
    let nx = xs.len();
    let zero = Complex64::new(0.0, 0.0);
    let h = grid.spacing();
    let v = grid.v();
    let rotations: Vec<Complex64> = xs.iter().map(|&x| Complex64::from_polar(1.0, h * x)).collect();
    let damping: Vec<f64> = xs.iter().map(|&x| (-v * x).exp()).collect();

    let partials: Vec<Result<(Vec<Complex64>, Vec<f64>)>> = (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let k0 = b * BLOCK;
            let k1 = ((b + 1) * BLOCK).min(n);
            let mut coef = Vec::with_capacity((k1 - k0) * nj);
            for k in k0..k1 {
                let z = grid.node(k);
                let scale = grid.weight(k) * spectrum.exp[k];
                for m in multipliers {
                    let c = m(z, spectrum.psi[k]) * scale;
                    if !(c.re.is_finite() && c.im.is_finite()) {
                        return Err(non_finite(z));
                    }
                    coef.push(c);
                }
            }
            let mut magnitude = vec![0.0; nj];
            for row in coef.chunks_exact(nj) {
                for (a, c) in magnitude.iter_mut().zip(row) {
                    *a += c.norm();
                }
            }
            let mut out = vec![zero; nx * nj];
            let u0 = grid.abscissa(k0);
            for (i, &x) in xs.iter().enumerate() {
                let mut phase = Complex64::from_polar(damping[i], u0 * x);
                let rot = rotations[i];
                let acc = &mut out[i * nj..(i + 1) * nj];
                for row in coef.chunks_exact(nj) {
                    for (a, c) in acc.iter_mut().zip(row) {
                        *a += c * phase;
                    }
                    phase *= rot;
                }
            }
            Ok((out, magnitude))
        })
        .collect();

    let mut total = vec![zero; nx * nj];
    let mut magnitude = vec![0.0; nj];
    for p in partials {
        let (p, m) = p?;
        for (t, q) in total.iter_mut().zip(p) {
            *t += q;
        }
        for (t, q) in magnitude.iter_mut().zip(m) {
            *t += q;
        }
    }
    let values = total.chunks(nj.max(1)).map(|c| c.to_vec()).take(nx).collect();
    Ok((values, magnitude))
}

/// Equispaced log-moneyness points `x_m = x_0 + mδ`, `m = 0..N−1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoneynessGrid {
    pub x0: f64,
    pub delta: f64,
    pub n: usize,
}

impl MoneynessGrid {
    /// The grid matching the FFT of `grid` exactly.
    pub fn resonant(grid: &QuadratureGrid, x0: f64) -> Self {
        MoneynessGrid {
            x0,
            delta: grid.resonant_spacing(),
            n: grid.len(),
        }
    }

    pub fn point(&self, m: usize) -> f64 {
        self.x0 + m as f64 * self.delta
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|m| self.point(m)).collect()
    }
}

/// `Σ_k W_k e^{iz_k x_m} g_k` for all `x_m` of a resonant grid, with one inverse FFT.
pub fn batch_evaluate(grid: &QuadratureGrid, g: &[Complex64], xg: &MoneynessGrid) -> Result<Vec<Complex64>> {
    let n = grid.len();
    if g.len() != n || xg.n != n {
        return Err(Error::GridMismatch(format!(
            "batch evaluation needs {n} samples and {n} output points (got {} and {})",
            g.len(),
            xg.n
        )));
    }
    let required = grid.resonant_spacing();
    if !((xg.delta - required).abs() <= 4.0 * f64::EPSILON * required) {
        return Err(Error::Resonance {
            required,
            got: xg.delta,
        });
    }
    let v = grid.v();
    let mut buf: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let z = grid.node(k);
            let phase = Complex64::from_polar((-v * xg.x0).exp(), z.re * xg.x0);
            grid.weight(k) * g[k] * phase
        })
        .collect();
    if let Some(k) = buf.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(non_finite(grid.node(k)));
    }
    // b_m = Σ_k a_k e^{2πi km/N}
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    // e^{iz_0 mδ} with z_0 = −h(N−1)/2 + iv: the angle −πm(N−1)/N is reduced as −πm + πm/N.
    let nf = n as f64;
    buf.par_iter_mut().enumerate().for_each(|(m, b)| {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let phase = Complex64::from_polar(sign * (-v * m as f64 * xg.delta).exp(), PI * m as f64 / nf);
        *b *= phase;
    });
    Ok(buf)
}

/// Result of [`suggest_truncation`].
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationSuggestion {
    pub a: f64,
    /// Set when the tolerance was not reached before the cap.
    pub warning: Option<String>,
}

/// Largest truncation tried by [`suggest_truncation`] (100·2^10).
pub const TRUNCATION_CAP: f64 = 102_400.0;

/// Smallest `A ∈ {100·2^k}` with `|e^{τΨ(−z)}|/|z| < tol` at `z = ±A/2 + iv`.
pub fn suggest_truncation(model: &ModelSpec, v: f64, tau: f64, tol: f64) -> Result<TruncationSuggestion> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Config(format!("truncation tolerance must lie in (0, 1) (got {tol})")));
    }
    char_exponent(model, Complex64::new(0.0, -v))?;
    let tail = |a: f64| {
        [0.5 * a, -0.5 * a]
            .into_iter()
            .map(|u| {
                let z = Complex64::new(u, v);
                (tau * model.exponent(-z)).exp().norm() / z.norm()
            })
            .fold(0.0, f64::max)
    };
    let mut a = 100.0;
    while a <= TRUNCATION_CAP {
        if tail(a) < tol {
            return Ok(TruncationSuggestion { a, warning: None });
        }
        a *= 2.0;
    }
    Ok(TruncationSuggestion {
        a: TRUNCATION_CAP,
        warning: Some(format!(
            "|e^(τΨ(−z))|/|z| = {:.3e} at |z| = {} is still above {tol:.1e}; the integrand may decay \
             only algebraically, A capped at {TRUNCATION_CAP}",
            tail(TRUNCATION_CAP),
            TRUNCATION_CAP / 2.0
        )),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{BlackScholes, Merton, VarianceGamma};

    fn trapezoid(v: f64, a: f64, n: usize) -> QuadratureGrid {
        build_grid(ContourSpec::new(v, a, n).with_rule(Arc::new(Trapezoid))).unwrap()
    }

    #[test]
    fn smallest_grid() {
        let g = trapezoid(0.0, 2.0, 3);
        let re: Vec<f64> = g.nodes().map(|z| z.re).collect();
        assert_eq!(re, vec![-1.0, 0.0, 1.0]);
        assert_eq!(g.weights().collect::<Vec<_>>(), vec![0.5, 1.0, 0.5]);
        assert_eq!(g.spacing(), 1.0);
    }

    #[test]
    fn simpson_exact_on_quadratics() {
        let g = build_grid(ContourSpec::new(0.0, 2.0, 3)).unwrap();
        let v = integrate(&g, |z| z * z).unwrap();
        assert!((v.re - 2.0 / 3.0).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn weights_integrate_constants() {
        for n in [4usize, 5, 6, 7, 1024, 1025] {
            for rule in ["trapezoid", "simpson"] {
                let g = build_grid(ContourSpec::new(0.3, 10.0, n).with_rule(rule_by_name(rule).unwrap())).unwrap();
                let total: f64 = g.weights().sum();
                assert!((total - 10.0).abs() < 1e-12, "{rule} n={n}: {total}");
            }
        }
        let g = build_grid(ContourSpec::new(0.0, 10.0, 8).with_step(StepConvention::LengthOverCount)).unwrap();
        assert!((g.weights().sum::<f64>() - 10.0 * 7.0 / 8.0).abs() < 1e-13);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let g = trapezoid(0.0, 2.0, 3);
        let err = integrate(&g, |z| Complex64::new(1.0, 0.0) / z.re).unwrap_err();
        assert_eq!(err, Error::NonFinite { re: 0.0, im: 0.0 });
    }

    #[test]
    fn gaussian_inversion() {
        let g = build_grid(ContourSpec::new(0.0, 40.0, 1 << 12)).unwrap();
        let v = integrate(&g, |z| (-0.5 * z * z).exp()).unwrap() / (2.0 * PI);
        assert!((v.re - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn direct_sums_match_pointwise_integration() {
        let m = ModelSpec::new(Merton::new(0.1, -0.005, 0.1, 1.0).unwrap());
        let g = build_grid(ContourSpec::new(1.5, 200.0, 20_001)).unwrap();
        let s = Spectrum::new(&m, &g, 1.0).unwrap();
        let mult = |z: Complex64, _p: Complex64| Complex64::new(1.0, 0.0) / (Complex64::i() * z);
        let xs = [-0.4, 0.0, 0.25];
        let batch = sum_functionals(&s, &[&mult], &xs).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            let direct = integrate(&g, |z| {
                (Complex64::i() * z * x).exp() * (m.exponent(-z)).exp() / (Complex64::i() * z)
            })
            .unwrap();
            assert!((batch[i][0] - direct).norm() < 1e-12 * direct.norm(), "x={x}");
        }
    }

    #[test]
    fn fft_zero_frequency_bin() {
        let g = trapezoid(0.0, 10.0, 256);
        let ones = vec![Complex64::new(1.0, 0.0); 256];
        let out = batch_evaluate(&g, &ones, &MoneynessGrid::resonant(&g, 0.0)).unwrap();
        assert!((out[0] - 10.0).norm() < 1e-12);
    }

    #[test]
    fn fft_rejects_off_resonance() {
        let g = trapezoid(0.0, 10.0, 256);
        let ones = vec![Complex64::new(1.0, 0.0); 256];
        let mut xg = MoneynessGrid::resonant(&g, 0.0);
        xg.delta *= 1.001;
        let err = batch_evaluate(&g, &ones, &xg).unwrap_err();
        assert!(matches!(err, Error::Resonance { .. }) && err.is_config());
    }

    #[test]
    fn resonance_identity() {
        for n in [1usize << 10, 1 << 20, 1 << 22] {
            let a = ContourSpec::truncation_for_spacing(n, 0.01);
            let g = trapezoid(0.5, a, n);
            let prod = g.resonant_spacing() * g.spacing();
            assert!((prod - 2.0 * PI / n as f64).abs() <= 1e-15 * prod);
            assert!((g.resonant_spacing() - 0.01).abs() < 1e-15);
        }
    }

    #[test]
    fn suggest_truncation_examples() {
        let bs = ModelSpec::new(BlackScholes::new(0.1).unwrap());
        assert_eq!(suggest_truncation(&bs, 1.5, 1.0, 1e-12).unwrap().a, 200.0);
        let m = ModelSpec::new(Merton::new(0.1, -0.005, 0.1, 1.0).unwrap());
        assert!(suggest_truncation(&m, 1.5, 1.0, 1e-10).unwrap().a <= 500.0);
        let cp = ModelSpec::new(Merton::new(0.0, -0.005, 0.1, 1.0).unwrap());
        assert!(suggest_truncation(&cp, 1.5, 1.0, 1e-10).unwrap().warning.is_some());
        let vg = ModelSpec::new(VarianceGamma::new(0.2, 1.0, -0.15).unwrap());
        let mut last = f64::INFINITY;
        for tol in [1e-12, 1e-10, 1e-8, 1e-6, 1e-4] {
            let a = suggest_truncation(&vg, 1.3, 1.0, tol).unwrap().a;
            assert!(a <= last);
            last = a;
        }
    }

    #[test]
    fn decay_probe_distinguishes_orders() {
        let vg = ModelSpec::new(VarianceGamma::new(0.2, 1.0, -0.15).unwrap());
        let g = build_grid(ContourSpec::new(1.3, 1000.0, 1 << 10)).unwrap();
        let s = Spectrum::new(&vg, &g, 1.0).unwrap();
        // |e^{τΨ(−z)}| ~ |z|^{−2τ/ν}: integrable alone, not against |z|.
        assert!(s.decay_probe(&vg, 0, "density").is_ok());
        assert!(matches!(s.decay_probe(&vg, 1, "f'"), Err(Error::DecayProbe { .. })));
        let bs = ModelSpec::new(BlackScholes::new(0.1).unwrap());
        let s = Spectrum::new(&bs, &g, 1.0).unwrap();
        assert!(s.decay_probe(&bs, 6, "ultima").is_ok());
    }

    #[test]
    fn spectrum_rejects_contour_outside_strip() {
        let vg = ModelSpec::new(VarianceGamma::new(0.2, 1.0, -0.15).unwrap());
        let g = build_grid(ContourSpec::new(12.0, 100.0, 64)).unwrap();
        assert!(matches!(Spectrum::new(&vg, &g, 1.0), Err(Error::Strip { .. })));
    }
}
