//! Call sensitivities to model parameters.

use super::decomposed::{call_jump_integral, JUMP_NODES};
use super::kernel::GreekKernel;
use super::{compute_reports, EvalPath, GreekRequest, ParamSensitivity, PayoffKind};
use crate::contour::Multiplier;
use crate::error::{Error, Result};
use crate::models::JumpMeasure;
use crate::pricer::Pricer;
use crate::transforms::call_transform;
use std::sync::Arc;

/// `∂C/∂θ` at `x` for a named model parameter, by the chosen route.
pub fn param_sensitivity(pricer: &Pricer, x: f64, param: &str, path: EvalPath) -> Result<f64> {
    let g = Arc::new(ParamSensitivity { param: param.to_string() });
    let req = GreekRequest::new(vec![g], path);
    Ok(compute_reports(pricer, PayoffKind::Call, &[x], &req)?[0].entries[0].value)
}

/// `∂C/∂λ` for a finite-activity jump measure `ν = λ ν̄`, by both routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSensitivity {
    /// `τ ∫[e^y C(x−y) − C(x) − S(e^y − 1) Q̃(X_τ > x)] ν̄(dy)`.
    pub decomposed: f64,
    /// `τ (e^{−rτ}/2π) ∫ Ψ̄_J(−z) ϑ(z) dz`, `Ψ̄_J` the jump exponent at unit intensity.
    pub kernel: f64,
}

pub fn lambda_sensitivity(pricer: &Pricer, x: f64) -> Result<LambdaSensitivity> {
    let nu = pricer.model().jump_measure().ok_or_else(|| {
        Error::Unsupported(format!(
            "the {} model has no finite-activity jump measure to scale",
            pricer.model().kind()
        ))
    })?;
    let tau = pricer.market().tau;
    let unit = JumpMeasure {
        intensity: 1.0,
        shape: nu.shape.clone(),
    };
    let decomposed = tau * call_jump_integral(pricer, x, &unit.shape_nodes(JUMP_NODES))?;

    let k = GreekKernel::new("sens:lambda", 2, move |z, _| tau * unit.exponent(-z));
    let transform = call_transform(pricer.market().strike_of_x(x))?;
    let m: Multiplier<'_> = k.multiplier.as_ref();
    let kernel = pricer.kernel_values(&transform, &[m], &[k.order], &[k.name.as_str()], &[x])?[0][0].value;
    Ok(LambdaSensitivity { decomposed, kernel })
}
