//! Gauss–Legendre rules on finite intervals.

use gauss_quad::legendre::GaussLegendre;
use std::num::NonZeroUsize;

/// `n`-point Gauss–Legendre nodes and weights mapped to `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n).expect("Gauss–Legendre rule needs at least one node");
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    GaussLegendre::new(n)
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (mid + half * x, half * w))
        .collect()
}

/// ∫_a^b f with one `n`-point rule.
pub fn integrate<F: FnMut(f64) -> f64>(n: usize, a: f64, b: f64, mut f: F) -> f64 {
    gauss_legendre(n, a, b).into_iter().map(|(x, w)| w * f(x)).sum()
}

/// ∫_1^∞ f over geometric panels [2^k, 2^{k+1}], stopping once a panel contributes
/// less than `rel_tol` of the running total (or after 64 panels).
pub fn integrate_from_one<F: FnMut(f64) -> f64>(n: usize, rel_tol: f64, mut f: F) -> f64 {
    let mut total = 0.0;
    let mut lo = 1.0;
    for _ in 0..64 {
        let panel = integrate(n, lo, 2.0 * lo, &mut f);
        total += panel;
        if panel.abs() <= rel_tol * total.abs() {
            break;
        }
        lo *= 2.0;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_polynomials() {
        let v = integrate(3, -1.0, 2.0, |x| x.powi(5) - x * x);
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0) / 3.0;
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn tail_integral_of_exponential() {
        let v = integrate_from_one(32, 1e-17, |t| (-2.0 * t).exp());
        assert!((v - (-2.0f64).exp() / 2.0).abs() < 1e-15);
    }
}
