//! Cash-or-nothing digital call `1{S_T > K}`, discounted: `D = e^{−rτ} Q(X_τ > x)`.

use super::GreekContext;
use crate::error::{Error, Result};
use crate::pricer::Functional::{self, *};
use crate::pricer::Pricer;

pub fn inputs(name: &str) -> Option<Vec<Functional>> {
    match name {
        "price" => Some(vec![Tail]),
        "delta" => Some(vec![Density(0)]),
        "gamma" | "vega" => Some(vec![Density(0), Density(1)]),
        _ => None,
    }
}

pub fn value(name: &str, ctx: &GreekContext, get: &dyn Fn(Functional) -> f64) -> f64 {
    let GreekContext { s, r, tau, sigma } = *ctx;
    let disc = (-r * tau).exp();
    let f0 = || get(Density(0));
    let f1 = || get(Density(1));
    match name {
        "price" => disc * get(Tail),
        "delta" => disc * f0() / s,
        "gamma" => -disc * (f0() + f1()) / (s * s),
        "vega" => -disc * tau * sigma * (f0() + f1()),
        _ => f64::NAN,
    }
}

/// Digital price, delta, gamma and vega at `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DigitalGreeks {
    pub price: f64,
    pub delta: f64,
    pub gamma: f64,
    pub vega: f64,
}

pub fn digital_greeks(pricer: &Pricer, x: f64) -> Result<DigitalGreeks> {
    let fs = [Tail, Density(0), Density(1)];
    let row = &pricer.functionals(&fs, &[x])?[0];
    let price_q = crate::pricer::clamp_probability("digital price", row[0].value)?;
    let get = |f: Functional| match f {
        Tail => price_q,
        Density(0) => row[1].value,
        Density(1) => row[2].value,
        _ => f64::NAN,
    };
    let ctx = GreekContext::of(pricer);
    if ctx.sigma <= 0.0 {
        return Err(Error::Unsupported(format!(
            "digital vega needs a diffusion component; the {} model has sigma = 0",
            pricer.model().kind()
        )));
    }
    let vega = value("vega", &ctx, &get);
    Ok(DigitalGreeks {
        price: value("price", &ctx, &get),
        delta: value("delta", &ctx, &get),
        gamma: value("gamma", &ctx, &get),
        vega,
    })
}
