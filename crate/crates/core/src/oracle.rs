//! Reference values: Black–Scholes in closed form, central finite differences, and
//! sup-norm distances between sampled curves.

use crate::error::{Error, Result};
use crate::normal::{cdf, pdf};

/// Names accepted by [`bs_closed_form`] besides the standard call Greeks.
pub const BS_DIGITAL: [&str; 4] = ["digital", "digital_delta", "digital_gamma", "digital_vega"];

/// Black–Scholes call price or Greek (time derivatives in `τ`), or a discounted
/// cash-or-nothing digital quantity.
pub fn bs_closed_form(name: &str, s: f64, k: f64, r: f64, tau: f64, sigma: f64) -> Result<f64> {
    if !(s > 0.0 && k > 0.0 && tau > 0.0 && sigma > 0.0) {
        return Err(Error::Config(format!(
            "Black-Scholes needs S, K, tau, sigma > 0 (got S={s}, K={k}, tau={tau}, sigma={sigma})"
        )));
    }
    let sq = tau.sqrt();
    let sv = sigma * sq;
    let l = (s / k).ln();
    let d1 = (l + (r + 0.5 * sigma * sigma) * tau) / sv;
    let d2 = d1 - sv;
    let n1 = pdf(d1);
    let n2 = pdf(d2);
    let dk = k * (-r * tau).exp();
    // ∂d1/∂τ
    let d1t = (-l + (r + 0.5 * sigma * sigma) * tau) / (2.0 * sigma * tau * sq);
    let vega = s * n1 * sq;
    let gamma = n1 / (s * sv);
    let v = match name {
        "price" | "call" => s * cdf(d1) - dk * cdf(d2),
        "delta" => cdf(d1),
        "rho" => tau * dk * cdf(d2),
        "vega" => vega,
        "theta" => s * n1 * sigma / (2.0 * sq) + r * dk * cdf(d2),
        "gamma" => gamma,
        "vanna" => -n1 * d2 / sigma,
        "vomma" => vega * d1 * d2 / sigma,
        "charm" => n1 * d1t,
        "veta" => s * n1 * (0.5 / sq - sq * d1 * d1t),
        "vera" => -tau * dk * n2 * d1 / sigma,
        "color" => -gamma * (d1 * d1t + 0.5 / tau),
        "speed" => -gamma / s * (1.0 + d1 / sv),
        "ultima" => -vega / (sigma * sigma) * (d1 * d2 * (1.0 - d1 * d2) + d1 * d1 + d2 * d2),
        "zomma" => gamma * (d1 * d2 - 1.0) / sigma,
        "digital" => (-r * tau).exp() * cdf(d2),
        "digital_delta" => (-r * tau).exp() * n2 / (s * sv),
        "digital_gamma" => -(-r * tau).exp() * n2 * d1 / (s * s * sv * sv),
        "digital_vega" => -(-r * tau).exp() * n2 * d1 / sigma,
        _ => {
            return Err(Error::Config(format!(
                "no Black-Scholes closed form for `{name}`; available: {}, {}",
                crate::greeks::STANDARD_GREEKS.join(", "),
                BS_DIGITAL.join(", ")
            )))
        }
    };
    Ok(v)
}

/// Default step: `1e-4·max(1,|at|)` for orders 1–2, `1e-3·max(1,|at|)` for order 3.
pub fn default_step(order: u8, at: f64) -> f64 {
    let scale = at.abs().max(1.0);
    if order >= 3 {
        1e-3 * scale
    } else {
        1e-4 * scale
    }
}

/// Central difference of order 1, 2 or 3.
pub fn finite_difference<F: Fn(f64) -> f64>(f: F, at: f64, order: u8, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Config(format!("finite-difference step must be positive (got {h})")));
    }
    let e = |t: f64| -> Result<f64> {
        let y = f(t);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { re: y, im: 0.0 })
        }
    };
    match order {
        1 => Ok((e(at + h)? - e(at - h)?) / (2.0 * h)),
        2 => Ok((e(at + h)? - 2.0 * e(at)? + e(at - h)?) / (h * h)),
        3 => Ok((e(at + 2.0 * h)? - 2.0 * e(at + h)? + 2.0 * e(at - h)? - e(at - 2.0 * h)?) / (2.0 * h * h * h)),
        _ => Err(Error::Config(format!("finite-difference order must be 1, 2 or 3 (got {order})"))),
    }
}

/// One Richardson step on the central difference: `(4D(h/2) − D(h))/3`.
pub fn richardson<F: Fn(f64) -> f64>(f: F, at: f64, order: u8, h: f64) -> Result<f64> {
    let coarse = finite_difference(&f, at, order, h)?;
    let fine = finite_difference(&f, at, order, 0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveError {
    pub linf: f64,
    /// Abscissa of the largest deviation.
    pub location: f64,
    pub grid: Vec<f64>,
}

/// Sup-norm distance between two curves sampled on the same grid.
pub fn linf_error(grid: &[f64], a: &[f64], b: &[f64]) -> Result<CurveError> {
    if a.len() != grid.len() || b.len() != grid.len() {
        return Err(Error::GridMismatch(format!(
            "curves of lengths {} and {} on a grid of {} points",
            a.len(),
            b.len(),
            grid.len()
        )));
    }
    if grid.is_empty() {
        return Err(Error::GridMismatch("empty grid".into()));
    }
    let (mut linf, mut location) = (0.0, grid[0]);
    for ((&x, &p), &q) in grid.iter().zip(a).zip(b) {
        let d = (p - q).abs();
        if d.is_nan() {
            return Err(Error::NonFinite { re: p - q, im: 0.0 });
        }
        if d > linf {
            linf = d;
            location = x;
        }
    }
    Ok(CurveError {
        linf,
        location,
        grid: grid.to_vec(),
    })
}

/// `[−0.7, 0.7]` in steps of 0.01: the 141 moneyness points of the Black–Scholes benchmark.
pub fn benchmark_grid() -> Vec<f64> {
    (0..141).map(|i| (i as f64 - 70.0) / 100.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greeks::STANDARD_GREEKS;

    const S: f64 = 1.0;
    const R: f64 = 0.05;
    const TAU: f64 = 1.0;
    const SIG: f64 = 0.1;

    fn bs(name: &str, s: f64, k: f64, tau: f64, sigma: f64) -> f64 {
        bs_closed_form(name, s, k, R, tau, sigma).unwrap()
    }

    #[test]
    fn atm_forward_values() {
        let k = (R * TAU).exp();
        let c = bs("price", S, k, TAU, SIG);
        assert!((c - (2.0 * cdf(0.05) - 1.0)).abs() < 1e-15);
        assert!((c - 0.0398776).abs() < 1e-7);
        assert!((bs("delta", S, k, TAU, SIG) - 0.519939).abs() < 1e-6);
        let vega = bs("vega", S, k, TAU, SIG);
        assert!((vega - bs("gamma", S, k, TAU, SIG) * S * S * SIG * TAU).abs() < 1e-12);
    }

    // Each Greek against a Richardson-extrapolated difference of a lower Greek.
    #[test]
    fn greeks_match_finite_differences() {
        for &k in &[0.6, 0.9, 1.0, 1.05, 1.4] {
            let check = |name: &str, fd: f64| {
                let a = bs(name, S, k, TAU, SIG);
                assert!((a - fd).abs() < 1e-7 * (1.0 + a.abs()), "{name} K={k}: {a} vs {fd}");
            };
            let in_s = |g: &'static str| move |s: f64| bs(g, s, k, TAU, SIG);
            let in_tau = |g: &'static str| move |t: f64| bs(g, S, k, t, SIG);
            let in_sig = |g: &'static str| move |v: f64| bs(g, S, k, TAU, v);
            let rho_fd = richardson(|r| bs_closed_form("price", S, k, r, TAU, SIG).unwrap(), R, 1, 1e-3).unwrap();
            check("rho", rho_fd);
            check("delta", richardson(in_s("price"), S, 1, 1e-3).unwrap());
            check("gamma", richardson(in_s("delta"), S, 1, 1e-3).unwrap());
            check("speed", richardson(in_s("gamma"), S, 1, 1e-3).unwrap());
            check("vega", richardson(in_sig("price"), SIG, 1, 1e-4).unwrap());
            check("vomma", richardson(in_sig("vega"), SIG, 1, 1e-4).unwrap());
            check("ultima", richardson(in_sig("vomma"), SIG, 1, 1e-4).unwrap());
            check("vanna", richardson(in_s("vega"), S, 1, 1e-3).unwrap());
            check("zomma", richardson(in_sig("gamma"), SIG, 1, 1e-4).unwrap());
            check("theta", richardson(in_tau("price"), TAU, 1, 1e-3).unwrap());
            check("charm", richardson(in_tau("delta"), TAU, 1, 1e-3).unwrap());
            check("veta", richardson(in_tau("vega"), TAU, 1, 1e-3).unwrap());
            check("color", richardson(in_tau("gamma"), TAU, 1, 1e-3).unwrap());
            let vera_fd = richardson(|v| bs("rho", S, k, TAU, v), SIG, 1, 1e-4).unwrap();
            check("vera", vera_fd);
            check("digital_delta", richardson(in_s("digital"), S, 1, 1e-3).unwrap());
            check("digital_gamma", richardson(in_s("digital_delta"), S, 1, 1e-3).unwrap());
            check("digital_vega", richardson(in_sig("digital"), SIG, 1, 1e-4).unwrap());
        }
    }

    #[test]
    fn every_standard_name_has_a_closed_form() {
        for g in STANDARD_GREEKS {
            assert!(bs_closed_form(g, 1.0, 1.0, 0.05, 1.0, 0.1).unwrap().is_finite());
        }
        assert!(bs_closed_form("nope", 1.0, 1.0, 0.05, 1.0, 0.1).unwrap_err().is_config());
    }

    #[test]
    fn difference_stencils() {
        let sq = |x: f64| x * x;
        for h in [0.5, 0.25, 2.0] {
            assert_eq!(finite_difference(sq, 3.0, 1, h).unwrap(), 6.0);
        }
        let cube = |x: f64| x * x * x;
        assert!((finite_difference(cube, 2.0, 2, 1e-3).unwrap() - 12.0).abs() < 1e-6);
        assert!((finite_difference(cube, 2.0, 3, 1e-2).unwrap() - 6.0).abs() < 1e-8);
        assert!(finite_difference(sq, 1.0, 4, 1e-3).is_err());
        assert!(finite_difference(|x: f64| 1.0 / x, 0.0, 1, 1.0).is_ok());
        assert!(finite_difference(|x: f64| x.ln(), 0.0, 1, 1.0).is_err());
        assert_eq!(default_step(3, 0.2), 1e-3);
    }

    #[test]
    fn linf_metrics() {
        let g = benchmark_grid();
        assert_eq!(g.len(), 141);
        assert!((g[140] - 0.7).abs() < 1e-12);
        let a: Vec<f64> = g.iter().map(|x| x.sin()).collect();
        assert_eq!(linf_error(&g, &a, &a).unwrap().linf, 0.0);
        let b: Vec<f64> = a.iter().map(|v| v + 0.25).collect();
        assert!((linf_error(&g, &a, &b).unwrap().linf - 0.25).abs() < 1e-15);
        assert!(matches!(linf_error(&g, &a, &b[1..]), Err(Error::GridMismatch(_))));
    }
}
