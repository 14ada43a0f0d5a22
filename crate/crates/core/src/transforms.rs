//! Payoff Fourier transforms `ŵ(z) = ∫ e^{izy} w(e^y) dy` and their strips.

use crate::error::{Error, Result};
use crate::strip::Strip;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

type UnitFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A payoff transform written as `ŵ(z) = K^p e^{iz ln K} u(z)`.
///
/// Splitting off the strike dependence lets curves over many strikes share one
/// set of contour samples.
#[derive(Clone)]
pub struct PayoffTransform {
    name: String,
    strike: f64,
    strike_power: f64,
    strip: Strip,
    unit: UnitFn,
}

impl PayoffTransform {
    /// A user-defined payoff. The strip must exclude every pole of `unit`; it is
    /// never inferred.
    pub fn custom<F>(name: &str, strike: f64, strike_power: f64, strip: Strip, unit: F) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        check_strike(strike)?;
        if !(strip.lo < strip.hi) {
            return Err(Error::Config(format!(
                "payoff `{name}` has an empty strip ({}, {})",
                strip.lo, strip.hi
            )));
        }
        Ok(PayoffTransform {
            name: name.to_string(),
            strike,
            strike_power,
            strip,
            unit: Arc::new(unit),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn strike(&self) -> f64 {
        self.strike
    }

    pub fn strike_power(&self) -> f64 {
        self.strike_power
    }

    pub fn strip(&self) -> Strip {
        self.strip
    }

    /// `u(z)`
    pub fn unit(&self, z: Complex64) -> Complex64 {
        (self.unit)(z)
    }

    /// `ŵ(z)`
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let k = self.strike;
        k.powf(self.strike_power) * (Complex64::i() * z * k.ln()).exp() * self.unit(z)
    }

    /// Same payoff at another strike.
    pub fn with_strike(&self, strike: f64) -> Result<Self> {
        check_strike(strike)?;
        Ok(PayoffTransform {
            strike,
            ..self.clone()
        })
    }

    /// Rejects contour shifts outside the strip.
    pub fn check(&self, v: f64) -> Result<()> {
        self.strip.check(v, &format!("the {} payoff transform", self.name))
    }
}

impl fmt::Debug for PayoffTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PayoffTransform")
            .field("name", &self.name)
            .field("strike", &self.strike)
            .field("strip", &self.strip)
            .finish_non_exhaustive()
    }
}

fn check_strike(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("strike must be > 0 (got {k})")))
    }
}

/// `(e^y − K)^+`: `ŵ(z) = K^{1+iz}/(iz(1+iz))`, strip `(1, ∞)`.
pub fn call_transform(strike: f64) -> Result<PayoffTransform> {
    PayoffTransform::custom("call", strike, 1.0, Strip::new(1.0, f64::INFINITY), |z| {
        let iz = Complex64::i() * z;
        1.0 / (iz * (1.0 + iz))
    })
}

/// `1{e^y > K}`: `ŵ(z) = −K^{iz}/(iz)`, strip `(0, ∞)`.
pub fn digital_transform(strike: f64) -> Result<PayoffTransform> {
    PayoffTransform::custom("digital", strike, 0.0, Strip::new(0.0, f64::INFINITY), |z| {
        -1.0 / (Complex64::i() * z)
    })
}

/// `P = C − S + K e^{−rτ}`.
pub fn put_price_via_parity(call: f64, s: f64, k: f64, r: f64, tau: f64) -> f64 {
    call - s + k * (-r * tau).exp()
}

type PayoffBuilder = Box<dyn Fn(f64) -> Result<PayoffTransform> + Send + Sync>;

/// Payoff transforms selectable by name.
pub struct PayoffRegistry {
    builders: BTreeMap<String, PayoffBuilder>,
}

impl PayoffRegistry {
    pub fn standard() -> Self {
        let mut r = PayoffRegistry {
            builders: BTreeMap::new(),
        };
        r.register("call", call_transform);
        r.register("digital", digital_transform);
        r
    }

    pub fn register<F>(&mut self, name: &str, build: F)
    where
        F: Fn(f64) -> Result<PayoffTransform> + Send + Sync + 'static,
    {
        self.builders.insert(name.to_string(), Box::new(build));
    }

    pub fn build(&self, name: &str, strike: f64) -> Result<PayoffTransform> {
        let b = self.builders.get(&name.to_ascii_lowercase()).ok_or_else(|| {
            Error::Config(format!(
                "unknown payoff `{name}`; available: {}",
                self.builders.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })?;
        b(strike)
    }
}
