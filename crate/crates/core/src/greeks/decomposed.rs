//! Time Greeks of finite-activity jump models with the jump integral taken outside the
//! contour integral: the call, tails and densities are evaluated at the shifted points
//! `x − y_j` of a jump-size quadrature and combined.

use super::GreekContext;
use crate::error::{Error, Result};
use crate::models::JumpMeasure;
use crate::pricer::Functional::{self, *};
use crate::pricer::Pricer;

/// Quadrature nodes over the jump-size law.
pub const JUMP_NODES: usize = 201;

pub const DECOMPOSED_GREEKS: [&str; 4] = ["theta", "charm", "veta", "color"];

fn jump_measure(pricer: &Pricer, greek: &str) -> Result<JumpMeasure> {
    pricer.model().jump_measure().ok_or_else(|| {
        Error::Unsupported(format!(
            "decomposed {greek} needs a finite-activity jump measure; the {} model has none",
            pricer.model().kind()
        ))
    })
}

/// Evaluates `fs` at `x` and at `x − y` for each node; returns `(at_x, shifted)`.
fn shifted(pricer: &Pricer, fs: &[Functional], x: f64, nodes: &[(f64, f64)]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let mut xs = vec![x];
    xs.extend(nodes.iter().map(|&(y, _)| x - y));
    let rows = pricer.functionals(fs, &xs)?;
    let mut it = rows.into_iter().map(|r| r.into_iter().map(|p| p.value).collect::<Vec<_>>());
    let at = it.next().unwrap_or_default();
    Ok((at, it.collect()))
}

/// `∫[e^y C(x−y) − C(x) − S(e^y − 1) Q̃(X_τ > x)] dm(y)` for a jump-size measure `m`.
pub(crate) fn call_jump_integral(pricer: &Pricer, x: f64, nodes: &[(f64, f64)]) -> Result<f64> {
    let s = pricer.market().s;
    let (at, sh) = shifted(pricer, &[CallOverSpot, DualTail], x, nodes)?;
    let c = s * at[0];
    let dual = at[1];
    Ok(nodes
        .iter()
        .zip(&sh)
        .map(|(&(y, w), row)| w * (y.exp() * s * row[0] - c - s * y.exp_m1() * dual))
        .sum())
}

/// `theta`, `charm`, `veta` or `color` of a call, `∂/∂τ` convention.
pub fn decomposed_greek(pricer: &Pricer, x: f64, greek: &str) -> Result<f64> {
    let GreekContext { s, r, tau, sigma } = GreekContext::of(pricer);
    let nu = jump_measure(pricer, greek)?;
    let nodes = nu.nodes(JUMP_NODES);
    let ex = x.exp();
    let half_var = 0.5 * sigma * sigma;
    // ∫[f(x−y) − f(x) + (e^y − 1) f'(x)] ν(dy)
    let density_jumps = || -> Result<([f64; 3], f64)> {
        let (at, sh) = shifted(pricer, &[Density(0), Density(1), Density(2)], x, &nodes)?;
        let j = nodes
            .iter()
            .zip(&sh)
            .map(|(&(y, w), row)| w * (row[0] - at[0] + y.exp_m1() * at[1]))
            .sum();
        Ok(([at[0], at[1], at[2]], j))
    };
    match greek {
        "theta" => {
            let at = &pricer.functionals(&[Tail, Density(0)], &[x])?[0];
            Ok(s * (r * ex * at[0].value + half_var * ex * at[1].value) + call_jump_integral(pricer, x, &nodes)?)
        }
        "charm" => {
            let (at, sh) = shifted(pricer, &[DualTail, Density(0), Density(1)], x, &nodes)?;
            let j: f64 = nodes
                .iter()
                .zip(&sh)
                .map(|(&(y, w), row)| w * (y.exp() * (row[0] - at[0]) - y.exp_m1() * ex * at[1]))
                .sum();
            Ok(r * ex * at[1] - half_var * ex * at[2] + j)
        }
        "veta" => {
            let ([f0, f1, f2], j) = density_jumps()?;
            Ok(s * sigma * ex * (f0 - r * tau * (f0 + f1) + tau * half_var * (f1 + f2) + tau * j))
        }
        "color" => {
            let ([f0, f1, f2], j) = density_jumps()?;
            Ok(ex / s * (-r * (f0 + f1) + half_var * (f1 + f2) + j))
        }
        _ => Err(Error::Unsupported(format!(
            "no decomposed form for `{greek}`; available: {}",
            DECOMPOSED_GREEKS.join(", ")
        ))),
    }
}
