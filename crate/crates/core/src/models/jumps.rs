use super::LevyMeasureMoments;
use crate::error::{Error, Result};
use crate::normal;
use crate::quad;
use num_complex::Complex64;

/// Gaussian jump sizes are integrated over `mean ± JUMP_STD_SPAN · std`.
pub const JUMP_STD_SPAN: f64 = 8.0;

/// Finite-activity jump measure `ν(dy) = intensity · ν̄(dy)` with `ν̄` a probability law.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpMeasure {
    pub intensity: f64,
    pub shape: JumpShape,
}

#[derive(Debug, Clone, PartialEq)]
pub enum JumpShape {
    Gaussian { mean: f64, std: f64 },
    /// `(location, probability)` pairs; probabilities sum to one.
    Atoms(Vec<(f64, f64)>),
}

impl JumpMeasure {
    pub fn gaussian(intensity: f64, mean: f64, std: f64) -> Self {
        JumpMeasure {
            intensity,
            shape: JumpShape::Gaussian { mean, std },
        }
    }

    pub fn point_mass(intensity: f64, at: f64) -> Self {
        JumpMeasure {
            intensity,
            shape: JumpShape::Atoms(vec![(at, 1.0)]),
        }
    }

    /// `E[e^{wY}]` under the jump-size law `ν̄`.
    pub fn mgf(&self, w: Complex64) -> Complex64 {
        match &self.shape {
            JumpShape::Gaussian { mean, std } => (w * mean + 0.5 * w * w * std * std).exp(),
            JumpShape::Atoms(atoms) => atoms.iter().map(|&(y, p)| p * (w * y).exp()).sum(),
        }
    }

    /// Compensated jump exponent `λ(E[e^{izY}] − 1) − izλ(E[e^Y] − 1)`.
    pub fn exponent(&self, z: Complex64) -> Complex64 {
        let iz = Complex64::i() * z;
        let k = self.mgf(Complex64::new(1.0, 0.0)) - 1.0;
        self.intensity * (self.mgf(iz) - 1.0 - iz * k)
    }

    /// The measure `e^{ty} ν(dy)`.
    pub fn tilt(&self, t: f64) -> JumpMeasure {
        match &self.shape {
            JumpShape::Gaussian { mean, std } => JumpMeasure::gaussian(
                self.intensity * (t * mean + 0.5 * t * t * std * std).exp(),
                mean + t * std * std,
                *std,
            ),
            JumpShape::Atoms(atoms) => {
                let mass: f64 = atoms.iter().map(|&(y, p)| p * (t * y).exp()).sum();
                JumpMeasure {
                    intensity: self.intensity * mass,
                    shape: JumpShape::Atoms(
                        atoms.iter().map(|&(y, p)| (y, p * (t * y).exp() / mass)).collect(),
                    ),
                }
            }
        }
    }

    /// Quadrature `(y_j, w_j)` with `Σ w_j g(y_j) ≈ ∫ g dν̄` (unit mass, intensity excluded).
    /// Gaussian shapes use an `n`-point Gauss–Legendre rule on `mean ± 8·std`; a zero
    /// standard deviation collapses to the point mass at the mean.
    pub fn shape_nodes(&self, n: usize) -> Vec<(f64, f64)> {
        match &self.shape {
            JumpShape::Gaussian { mean, std } if *std > 0.0 => {
                let span = JUMP_STD_SPAN * std;
                quad::gauss_legendre(n, mean - span, mean + span)
                    .into_iter()
                    .map(|(y, w)| (y, w * normal::pdf((y - mean) / std) / std))
                    .collect()
            }
            JumpShape::Gaussian { mean, .. } => vec![(*mean, 1.0)],
            JumpShape::Atoms(atoms) => atoms.clone(),
        }
    }

    /// Same as [`shape_nodes`](Self::shape_nodes) with weights scaled by the intensity.
    pub fn nodes(&self, n: usize) -> Vec<(f64, f64)> {
        self.shape_nodes(n)
            .into_iter()
            .map(|(y, w)| (y, w * self.intensity))
            .collect()
    }

    pub fn moments(&self, v: f64) -> Result<LevyMeasureMoments> {
        let (m2, large) = match &self.shape {
            JumpShape::Gaussian { mean, std } if *std > 0.0 => gaussian_moments(*mean, *std, v),
            JumpShape::Gaussian { mean, .. } => atom_moments(&[(*mean, 1.0)], v),
            JumpShape::Atoms(atoms) => atom_moments(atoms, v),
        };
        let large = self.intensity * large;
        if !large.is_finite() {
            return Err(Error::Domain(format!(
                "∫_(|y|>1) (e^(vy)+1) ν(dy) is infinite at v = {v}"
            )));
        }
        Ok(LevyMeasureMoments {
            v,
            small_jump_second_moment: self.intensity * m2,
            large_jump_exp_moment: large,
        })
    }
}

fn atom_moments(atoms: &[(f64, f64)], v: f64) -> (f64, f64) {
    let mut m2 = 0.0;
    let mut large = 0.0;
    for &(y, p) in atoms {
        if y.abs() <= 1.0 {
            m2 += p * y * y;
        } else {
            large += p * ((v * y).exp() + 1.0);
        }
    }
    (m2, large)
}

/// Truncated second moment on [-1, 1] and exponential tail mass outside it for N(μ, s²).
fn gaussian_moments(mu: f64, s: f64, v: f64) -> (f64, f64) {
    let a = (-1.0 - mu) / s;
    let b = (1.0 - mu) / s;
    let mass = normal::cdf(b) - normal::cdf(a);
    let (pa, pb) = (normal::pdf(a), normal::pdf(b));
    let m2 = mu * mu * mass + 2.0 * mu * s * (pa - pb) + s * s * (mass + a * pa - b * pb);
    // Under the exponentially tilted law the jump size is N(μ + vs², s²).
    let mgf = (v * mu + 0.5 * v * v * s * s).exp();
    let shifted = mu + v * s * s;
    let exp_tail = mgf * (normal::sf((1.0 - shifted) / s) + normal::cdf((-1.0 - shifted) / s));
    let plain_tail = normal::sf(b) + normal::cdf(a);
    (m2, exp_tail + plain_tail)
}
