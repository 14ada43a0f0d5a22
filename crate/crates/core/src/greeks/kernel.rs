//! Polynomial multipliers `m(z)` that turn the price integrand into a Greek integrand
//! for a strike-fixed payoff: `∂V = (e^{−rτ}/2π)∫ m(z) ϑ(z) dz` with
//! `ϑ(z) = e^{−iz(ln S + rτ)} e^{τΨ(−z)} ŵ(z)`.

use super::GreekContext;
use num_complex::Complex64;
use std::fmt;

pub type KernelFn = Box<dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync>;

/// A named multiplier `m(z, Ψ(−z))` and the highest power of `z` it contains.
pub struct GreekKernel {
    pub name: String,
    pub order: i32,
    pub multiplier: KernelFn,
}

impl GreekKernel {
    pub fn new<F>(name: &str, order: i32, f: F) -> Self
    where
        F: Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
    {
        GreekKernel {
            name: name.to_string(),
            order,
            multiplier: Box::new(f),
        }
    }

    pub fn eval(&self, z: Complex64, psi: Complex64) -> Complex64 {
        (self.multiplier)(z, psi)
    }
}

impl fmt::Debug for GreekKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GreekKernel")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// Multiplier of a standard Greek, or `None` for an unknown name.
pub fn standard_kernel(name: &str, ctx: &GreekContext) -> Option<GreekKernel> {
    let GreekContext { s, r, tau, sigma } = *ctx;
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    // a(z) = iz(1+iz), the symbol of ∂²/∂x² − ∂/∂x
    let a = move |z: Complex64| i * z * (1.0 + i * z);
    let carry = move |z: Complex64, psi: Complex64| psi - (1.0 + i * z) * r;
    let k = match name {
        "price" => GreekKernel::new(name, 0, move |_, _| one),
        "delta" => GreekKernel::new(name, 1, move |z, _| -i * z / s),
        "rho" => GreekKernel::new(name, 1, move |z, _| -tau * (1.0 + i * z)),
        "vega" => GreekKernel::new(name, 2, move |z, _| tau * sigma * a(z)),
        "theta" => GreekKernel::new(name, 2, carry),
        "gamma" => GreekKernel::new(name, 2, move |z, _| a(z) / (s * s)),
        "vanna" => GreekKernel::new(name, 3, move |z, _| tau * sigma * z * z * (1.0 + i * z) / s),
        "vomma" => GreekKernel::new(name, 4, move |z, _| {
            tau * a(z) * (1.0 + tau * sigma * sigma * a(z))
        }),
        "charm" => GreekKernel::new(name, 3, move |z, psi| -i * z * carry(z, psi) / s),
        "veta" => GreekKernel::new(name, 4, move |z, psi| {
            sigma * a(z) * (tau * psi - (1.0 + i * z) * r * tau + 1.0)
        }),
        "vera" => GreekKernel::new(name, 3, move |z, _| {
            -tau * tau * sigma * i * z * (1.0 + i * z) * (1.0 + i * z)
        }),
        "color" => GreekKernel::new(name, 4, move |z, psi| a(z) * carry(z, psi) / (s * s)),
        "speed" => GreekKernel::new(name, 3, move |z, _| {
            -i * z * (1.0 + i * z) * (2.0 + i * z) / (s * s * s)
        }),
        "ultima" => GreekKernel::new(name, 6, move |z, _| {
            let az = a(z);
            tau * tau * sigma * az * az * (3.0 + tau * sigma * sigma * az)
        }),
        "zomma" => GreekKernel::new(name, 4, move |z, _| {
            let az = a(z);
            tau * sigma * az * az / (s * s)
        }),
        _ => return None,
    };
    Some(k)
}

/// `τ ∂Ψ(−z)/∂θ` from a derivative evaluator `d(w) = ∂Ψ(w)/∂θ`.
pub fn param_kernel<D>(param: &str, tau: f64, d: D) -> GreekKernel
where
    D: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
{
    GreekKernel::new(&format!("sens:{param}"), 2, move |z, _| tau * d(-z))
}
