//! Call Greeks written through tail probabilities and density derivatives at `x`.

use super::GreekContext;
use crate::pricer::Functional::{self, *};

/// Functionals a closed-form call Greek is assembled from.
pub fn inputs(name: &str) -> Option<Vec<Functional>> {
    let f = |n: u8| Density(n);
    let v = match name {
        "price" => vec![CallOverSpot],
        "delta" => vec![DualTail],
        "rho" => vec![Tail],
        "vega" | "gamma" => vec![f(0)],
        "theta" => vec![Tail, f(0), ThetaJump],
        "vanna" => vec![f(1)],
        "vomma" => vec![f(0), f(1), f(2)],
        "charm" => vec![f(0), CharmIntegral],
        "veta" => vec![f(0), f(1), DensityTimeDerivative],
        "vera" | "speed" => vec![f(0), f(1)],
        "color" => vec![f(0), f(1), DensityTimeDerivative],
        "ultima" => vec![f(1), f(2), f(3), f(4)],
        "zomma" => vec![f(1), f(2)],
        _ => return None,
    };
    Some(v)
}

/// Value of a closed-form call Greek; `get` returns the functionals listed by [`inputs`].
pub fn value(name: &str, ctx: &GreekContext, x: f64, get: &dyn Fn(Functional) -> f64) -> f64 {
    let GreekContext { s, r, tau, sigma } = *ctx;
    let ex = x.exp();
    let f = |n: u8| get(Density(n));
    match name {
        "price" => s * get(CallOverSpot),
        "delta" => get(DualTail),
        "rho" => tau * s * ex * get(Tail),
        "vega" => s * tau * sigma * ex * f(0),
        "theta" => s * (r * ex * get(Tail) + 0.5 * sigma * sigma * ex * f(0)) + s * get(ThetaJump),
        "gamma" => ex * f(0) / s,
        "vanna" => -tau * sigma * ex * f(1),
        "vomma" => s * tau * ex * (f(0) + tau * sigma * sigma * (f(1) + f(2))),
        "charm" => ex * (r * f(0) - get(CharmIntegral)),
        "veta" => {
            s * sigma * ex * (f(0) - r * tau * (f(0) + f(1)) + tau * get(DensityTimeDerivative))
        }
        "vera" => -s * tau * tau * sigma * ex * (f(0) + f(1)),
        "color" => ex / s * (-r * (f(0) + f(1)) + get(DensityTimeDerivative)),
        "speed" => -ex * (2.0 * f(0) + f(1)) / (s * s),
        "ultima" => {
            s * tau * tau * sigma * ex
                * (3.0 * (f(1) + f(2)) + tau * sigma * sigma * (f(2) + 2.0 * f(3) + f(4)))
        }
        "zomma" => tau * sigma * ex * (f(1) + f(2)) / s,
        _ => f64::NAN,
    }
}
