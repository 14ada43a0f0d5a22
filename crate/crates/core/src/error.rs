use thiserror::Error;

/// Errors raised by model construction, contour evaluation and Greek computation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown parameter `{name}`; available: {available}")]
    UnknownParameter { name: String, available: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resonance violated: strike spacing must be {required:.17e} (2π/(N·h)), got {got:.17e}")]
    Resonance { required: f64, got: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contour shift v = {v} lies outside the admissible strip ({lo}, {hi}) of {what}")]
    Strip { what: String, v: f64, lo: f64, hi: f64 },

    #[error("non-finite integrand value at node z = {re} {im:+}i")]
    NonFinite { re: f64, im: f64 },

    #[error(
        "decay probe failed for {what}: |z|^{order}|exp(τΨ(-z))| is {near:.3e} at |z|=A/4 and \
         {far:.3e} at |z|=A/2, so the integrability hypothesis ∫|z|^{order}|exp(τΨ(-z))|dz < ∞ \
         needed to differentiate under the integral sign is not detected"
    )]
    DecayProbe { what: String, order: i32, near: f64, far: f64 },

    #[error("{what} = {value:.3e} is outside [0, 1] by more than the clamping tolerance")]
    Probability { what: String, value: f64 },

    #[error("imaginary residual {residual:.3e} of {what} exceeds tolerance {tolerance:.1e}")]
    ImaginaryResidual { what: String, residual: f64, tolerance: f64 },
}

impl Error {
    /// True for errors caused by the request itself rather than by the numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::UnknownParameter { .. }
                | Error::Unsupported(_)
                | Error::Resonance { .. }
                | Error::GridMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
