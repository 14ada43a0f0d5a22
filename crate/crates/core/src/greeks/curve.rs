//! Greeks along an equispaced moneyness grid. Long grids are placed on the FFT output
//! grid by enlarging the truncation `A` to a multiple of the one matching the spacing.

use super::{compute_reports, GreekReport, GreekRequest, PayoffKind};
use crate::contour::ContourSpec;
use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::pricer::{MarketState, Pricer, FFT_THRESHOLD};

/// Contour and abscissae of a curve.
#[derive(Debug, Clone)]
pub struct CurveSetup {
    pub contour: ContourSpec,
    pub xs: Vec<f64>,
    /// Output stride on the FFT grid, when the FFT is used.
    pub stride: Option<usize>,
}

pub fn curve_setup(contour: ContourSpec, x_min: f64, x_max: f64, n_points: usize) -> Result<CurveSetup> {
    if n_points == 0 || !(x_min.is_finite() && x_max.is_finite()) || (n_points > 1 && x_max <= x_min) {
        return Err(Error::Config(format!(
            "curve needs n_points >= 1 and x_min < x_max (got {n_points} points on [{x_min}, {x_max}])"
        )));
    }
    if n_points == 1 {
        return Ok(CurveSetup {
            contour,
            xs: vec![x_min],
            stride: None,
        });
    }
    let step = (x_max - x_min) / (n_points - 1) as f64;
    if n_points <= FFT_THRESHOLD {
        return Ok(CurveSetup {
            contour,
            xs: (0..n_points).map(|i| x_min + i as f64 * step).collect(),
            stride: None,
        });
    }
    let n = contour.n;
    let matched = ContourSpec::truncation_for_spacing(n, step);
    let stride = (contour.a / matched - 1e-9).ceil().max(1.0) as usize;
    if (n_points - 1) * stride >= n {
        return Err(Error::Config(format!(
            "N = {n} is too small for {n_points} points at spacing {step} with A >= {}; use N >= {}",
            contour.a,
            ((n_points - 1) * stride + 1).next_power_of_two()
        )));
    }
    let a = stride as f64 * matched;
    let contour = ContourSpec { a, ..contour };
    let delta = 2.0 * std::f64::consts::PI * (n as f64 - 1.0) / (n as f64 * a);
    Ok(CurveSetup {
        contour,
        xs: (0..n_points).map(|i| x_min + (i * stride) as f64 * delta).collect(),
        stride: Some(stride),
    })
}

/// Greek reports on `n_points` equispaced values of `x` in `[x_min, x_max]`.
#[allow(clippy::too_many_arguments)]
pub fn greek_curve(
    model: &ModelSpec,
    market: MarketState,
    contour: ContourSpec,
    payoff: PayoffKind,
    req: &GreekRequest,
    x_min: f64,
    x_max: f64,
    n_points: usize,
) -> Result<Vec<GreekReport>> {
    let setup = curve_setup(contour, x_min, x_max, n_points)?;
    let pricer = Pricer::new(model, market, setup.contour)?;
    compute_reports(&pricer, payoff, &setup.xs, req)
}
