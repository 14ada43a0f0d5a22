//! Greeks by two independent routes: kernel multipliers under the price integral,
//! and closed forms in tail probabilities and density derivatives.

pub mod closed;
pub mod curve;
pub mod decomposed;
pub mod digital;
pub mod kernel;
pub mod sensitivities;

pub use curve::{curve_setup, greek_curve, CurveSetup};
pub use decomposed::{decomposed_greek, DECOMPOSED_GREEKS, JUMP_NODES};
pub use digital::{digital_greeks, DigitalGreeks};
pub use kernel::GreekKernel;
pub use sensitivities::{lambda_sensitivity, param_sensitivity, LambdaSensitivity};

use crate::contour::{ContourSpec, Multiplier};
use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::pricer::{clamp_probability, Functional, MarketState, Pricer, Priced};
use crate::transforms::{call_transform, digital_transform, PayoffTransform};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Greeks of the standard call table, in report order.
pub const STANDARD_GREEKS: [&str; 15] = [
    "price", "delta", "rho", "vega", "theta", "gamma", "vanna", "vomma", "charm", "veta", "vera",
    "color", "speed", "ultima", "zomma",
];

/// Greeks differentiating in σ; they need a Brownian component.
pub const VOLATILITY_GREEKS: [&str; 7] = ["vega", "vanna", "vomma", "veta", "vera", "ultima", "zomma"];

/// Greeks differentiating in τ; the theta convention flips their sign.
pub const TIME_GREEKS: [&str; 4] = ["theta", "charm", "veta", "color"];

/// Default bound on `|kernel − closed| / (1 + |closed|)`.
pub const CROSS_PATH_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreekContext {
    pub s: f64,
    pub r: f64,
    pub tau: f64,
    pub sigma: f64,
}

impl GreekContext {
    pub fn of(pricer: &Pricer) -> Self {
        let m = pricer.market();
        GreekContext {
            s: m.s,
            r: m.r,
            tau: m.tau,
            sigma: pricer.model().diffusion_sigma(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PayoffKind {
    Call,
    /// Priced through put-call parity on the call.
    Put,
    Digital,
}

impl FromStr for PayoffKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "call" => Ok(PayoffKind::Call),
            "put" => Ok(PayoffKind::Put),
            "digital" => Ok(PayoffKind::Digital),
            _ => Err(Error::Config(format!("unknown payoff `{s}`; available: call, put, digital"))),
        }
    }
}

impl PayoffKind {
    pub fn name(&self) -> &'static str {
        match self {
            PayoffKind::Call => "call",
            PayoffKind::Put => "put",
            PayoffKind::Digital => "digital",
        }
    }

    /// Transform the Greek integrals are taken against.
    pub fn transform(&self, strike: f64) -> Result<PayoffTransform> {
        match self {
            PayoffKind::Call | PayoffKind::Put => call_transform(strike),
            PayoffKind::Digital => digital_transform(strike),
        }
    }

    /// Contour shift used when none is configured.
    pub fn default_v(&self) -> f64 {
        match self {
            PayoffKind::Call | PayoffKind::Put => 1.5,
            PayoffKind::Digital => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPath {
    Kernel,
    Closed,
    Both,
}

impl EvalPath {
    pub fn name(&self) -> &'static str {
        match self {
            EvalPath::Kernel => "kernel",
            EvalPath::Closed => "closed",
            EvalPath::Both => "both",
        }
    }
}

impl FromStr for EvalPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kernel" => Ok(EvalPath::Kernel),
            "closed" | "closed-form" | "closed_form" => Ok(EvalPath::Closed),
            "both" => Ok(EvalPath::Both),
            _ => Err(Error::Config(format!("unknown path `{s}`; available: kernel, closed, both"))),
        }
    }
}

/// Sign convention for derivatives in time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThetaConvention {
    /// `∂/∂τ` in time to maturity.
    #[default]
    Tau,
    /// `∂/∂t` in calendar time, `= −∂/∂τ`.
    Calendar,
}

impl FromStr for ThetaConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tau" => Ok(ThetaConvention::Tau),
            "calendar" => Ok(ThetaConvention::Calendar),
            _ => Err(Error::Config(format!("unknown theta convention `{s}`; available: tau, calendar"))),
        }
    }
}

/// One Greek, computable by the kernel route and possibly in closed form.
pub trait Greek: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn kernel(&self, ctx: &GreekContext, model: &ModelSpec) -> Result<GreekKernel>;

    /// Functionals of the closed form for `payoff`, if there is one.
    fn closed_inputs(&self, payoff: PayoffKind, model: &ModelSpec) -> Result<Option<Vec<Functional>>>;

    fn closed_value(
        &self,
        payoff: PayoffKind,
        ctx: &GreekContext,
        model: &ModelSpec,
        x: f64,
        get: &dyn Fn(Functional) -> f64,
    ) -> f64;

    fn is_time_derivative(&self) -> bool {
        false
    }

    fn needs_diffusion(&self) -> bool {
        false
    }

    /// `put − call` for this Greek at strike `k`.
    fn parity_shift(&self, _ctx: &GreekContext, _k: f64) -> f64 {
        0.0
    }
}

/// One of [`STANDARD_GREEKS`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardGreek(&'static str);

impl Greek for StandardGreek {
    fn name(&self) -> String {
        self.0.to_string()
    }

    fn kernel(&self, ctx: &GreekContext, _model: &ModelSpec) -> Result<GreekKernel> {
        kernel::standard_kernel(self.0, ctx).ok_or_else(|| Error::Unsupported(format!("greek {}", self.0)))
    }

    fn closed_inputs(&self, payoff: PayoffKind, _model: &ModelSpec) -> Result<Option<Vec<Functional>>> {
        Ok(match payoff {
            PayoffKind::Call | PayoffKind::Put => closed::inputs(self.0),
            PayoffKind::Digital => digital::inputs(self.0),
        })
    }

    fn closed_value(
        &self,
        payoff: PayoffKind,
        ctx: &GreekContext,
        _model: &ModelSpec,
        x: f64,
        get: &dyn Fn(Functional) -> f64,
    ) -> f64 {
        match payoff {
            PayoffKind::Call | PayoffKind::Put => closed::value(self.0, ctx, x, get),
            PayoffKind::Digital => digital::value(self.0, ctx, get),
        }
    }

    fn is_time_derivative(&self) -> bool {
        TIME_GREEKS.contains(&self.0)
    }

    fn needs_diffusion(&self) -> bool {
        VOLATILITY_GREEKS.contains(&self.0)
    }

    fn parity_shift(&self, ctx: &GreekContext, k: f64) -> f64 {
        let dk = k * (-ctx.r * ctx.tau).exp();
        match self.0 {
            "price" => dk - ctx.s,
            "delta" => -1.0,
            "rho" => -ctx.tau * dk,
            "theta" => -ctx.r * dk,
            _ => 0.0,
        }
    }
}

/// Sensitivity to a named model parameter: `∂V/∂θ = τ(e^{−rτ}/2π)∫ ∂Ψ(−z)/∂θ ϑ(z) dz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSensitivity {
    pub param: String,
}

impl ParamSensitivity {
    fn static_name(&self, model: &ModelSpec) -> Result<&'static str> {
        model
            .parameters()
            .into_iter()
            .map(|(n, _)| n)
            .find(|n| *n == self.param)
            .ok_or_else(|| model.unknown_parameter(&self.param))
    }
}

impl Greek for ParamSensitivity {
    fn name(&self) -> String {
        format!("sens:{}", self.param)
    }

    fn kernel(&self, ctx: &GreekContext, model: &ModelSpec) -> Result<GreekKernel> {
        self.static_name(model)?;
        let d = crate::pricer::param_derivative_fn(model, &self.param);
        Ok(kernel::param_kernel(&self.param, ctx.tau, d))
    }

    fn closed_inputs(&self, payoff: PayoffKind, model: &ModelSpec) -> Result<Option<Vec<Functional>>> {
        let p = self.static_name(model)?;
        Ok(match payoff {
            PayoffKind::Call | PayoffKind::Put => Some(vec![Functional::ParamCall(p)]),
            PayoffKind::Digital => None,
        })
    }

    fn closed_value(
        &self,
        _payoff: PayoffKind,
        ctx: &GreekContext,
        model: &ModelSpec,
        _x: f64,
        get: &dyn Fn(Functional) -> f64,
    ) -> f64 {
        match self.static_name(model) {
            Ok(p) => ctx.tau * ctx.s * get(Functional::ParamCall(p)),
            Err(_) => f64::NAN,
        }
    }
}

/// Name → Greek map. Names of the form `sens:<param>` build a [`ParamSensitivity`].
pub struct GreekRegistry {
    greeks: BTreeMap<String, Arc<dyn Greek>>,
    order: Vec<String>,
}

impl GreekRegistry {
    pub fn standard() -> Self {
        let mut r = GreekRegistry {
            greeks: BTreeMap::new(),
            order: Vec::new(),
        };
        for g in STANDARD_GREEKS {
            r.register(Arc::new(StandardGreek(g)));
        }
        r
    }

    pub fn register(&mut self, greek: Arc<dyn Greek>) {
        let name = greek.name();
        if !self.greeks.contains_key(&name) {
            self.order.push(name.clone());
        }
        self.greeks.insert(name, greek);
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Greek>> {
        let key = name.trim().to_ascii_lowercase();
        let key = match key.as_str() {
            "call" | "value" => "price".to_string(),
            _ => key,
        };
        if let Some(p) = key.strip_prefix("sens:") {
            return Ok(Arc::new(ParamSensitivity { param: p.to_string() }));
        }
        self.greeks.get(&key).cloned().ok_or_else(|| {
            Error::Config(format!(
                "unknown greek `{name}`; available: {}, sens:<parameter>",
                self.order.join(", ")
            ))
        })
    }

    /// Parses `"delta,gamma"` or `"all"`.
    pub fn parse_list(&self, spec: &str) -> Result<Vec<Arc<dyn Greek>>> {
        if spec.trim().eq_ignore_ascii_case("all") {
            return Ok(self.order.iter().map(|n| self.greeks[n].clone()).collect());
        }
        spec.split(',').filter(|s| !s.trim().is_empty()).map(|s| self.get(s)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreekEntry {
    pub name: String,
    pub value: f64,
    pub path: EvalPath,
    pub kernel: Option<f64>,
    pub closed: Option<f64>,
    /// `|kernel − closed|` when both routes ran.
    pub discrepancy: Option<f64>,
    pub within_tolerance: bool,
    pub imag_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreekReport {
    pub x: f64,
    pub strike: f64,
    pub payoff: PayoffKind,
    pub entries: Vec<GreekEntry>,
}

impl GreekReport {
    pub fn get(&self, name: &str) -> Option<&GreekEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.get(name).map(|e| e.value)
    }
}

#[derive(Debug, Clone)]
pub struct GreekRequest {
    pub greeks: Vec<Arc<dyn Greek>>,
    pub path: EvalPath,
    pub theta: ThetaConvention,
    pub tolerance: f64,
}

impl GreekRequest {
    pub fn new(greeks: Vec<Arc<dyn Greek>>, path: EvalPath) -> Self {
        GreekRequest {
            greeks,
            path,
            theta: ThetaConvention::Tau,
            tolerance: CROSS_PATH_TOLERANCE,
        }
    }

    pub fn with_theta(mut self, theta: ThetaConvention) -> Self {
        self.theta = theta;
        self
    }
}

/// Evaluates a set of Greeks at every `x`, sharing one spectrum and one pass over the
/// contour per route.
pub fn compute_reports(pricer: &Pricer, payoff: PayoffKind, xs: &[f64], req: &GreekRequest) -> Result<Vec<GreekReport>> {
    let ctx = GreekContext::of(pricer);
    let model = pricer.model();
    for g in &req.greeks {
        if g.needs_diffusion() && ctx.sigma <= 0.0 {
            return Err(Error::Unsupported(format!(
                "{} differentiates in the diffusion volatility, but the {} model has sigma = 0; \
                 use parameter sensitivities (sens:<parameter>) instead",
                g.name(),
                model.kind()
            )));
        }
    }

    // Route selection per Greek.
    let mut plans = Vec::with_capacity(req.greeks.len());
    for g in &req.greeks {
        let closed = g.closed_inputs(payoff, model)?;
        let (use_kernel, use_closed) = match (req.path, closed.is_some()) {
            (EvalPath::Kernel, _) | (_, false) => (true, false),
            (EvalPath::Closed, true) => (false, true),
            (EvalPath::Both, true) => (true, true),
        };
        plans.push((use_kernel, if use_closed { closed } else { None }));
    }

    let functionals: Vec<Functional> = plans
        .iter()
        .filter_map(|(_, c)| c.clone())
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let closed_rows = if functionals.is_empty() {
        vec![Vec::new(); xs.len()]
    } else {
        pricer.functionals(&functionals, xs)?
    };

    let kernels: Vec<(usize, GreekKernel)> = plans
        .iter()
        .enumerate()
        .filter(|(_, (k, _))| *k)
        .map(|(i, _)| req.greeks[i].kernel(&ctx, model).map(|k| (i, k)))
        .collect::<Result<_>>()?;
    let kernel_rows = if kernels.is_empty() {
        vec![Vec::new(); xs.len()]
    } else {
        let transform = payoff.transform(pricer.market().strike_of_x(xs[0]))?;
        let ms: Vec<Multiplier<'_>> = kernels.iter().map(|(_, k)| k.multiplier.as_ref() as Multiplier<'_>).collect();
        let orders: Vec<i32> = kernels.iter().map(|(_, k)| k.order).collect();
        let names: Vec<String> = kernels.iter().map(|(_, k)| format!("{} kernel", k.name)).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        pricer.kernel_values(&transform, &ms, &orders, &names, xs)?
    };

    let mut reports = Vec::with_capacity(xs.len());
    for (ix, &x) in xs.iter().enumerate() {
        let strike = pricer.market().strike_of_x(x);
        let row = &closed_rows[ix];
        let mut values: BTreeMap<Functional, Priced> = BTreeMap::new();
        for (f, p) in functionals.iter().zip(row) {
            let mut p = *p;
            if matches!(f, Functional::Tail | Functional::DualTail) {
                p.value = clamp_probability(&f.label(), p.value)?;
            }
            values.insert(*f, p);
        }
        let get = |f: Functional| values.get(&f).map(|p| p.value).unwrap_or(f64::NAN);

        let mut entries = Vec::with_capacity(req.greeks.len());
        for (gi, g) in req.greeks.iter().enumerate() {
            let (_, closed_inputs) = &plans[gi];
            let kernel = kernels
                .iter()
                .position(|(i, _)| *i == gi)
                .map(|kpos| kernel_rows[ix][kpos]);
            let closed = closed_inputs.as_ref().map(|_| g.closed_value(payoff, &ctx, model, x, &get));
            let residual_closed = closed_inputs
                .as_ref()
                .map(|fs| fs.iter().map(|f| values[f].imag_residual).fold(0.0, f64::max));

            let adjust = |v: f64| {
                let v = if payoff == PayoffKind::Put { v + g.parity_shift(&ctx, strike) } else { v };
                if g.is_time_derivative() && req.theta == ThetaConvention::Calendar {
                    -v
                } else {
                    v
                }
            };
            let kernel_v = kernel.map(|p| adjust(p.value));
            let closed_v = closed.map(adjust);
            let discrepancy = match (kernel_v, closed_v) {
                (Some(a), Some(b)) => Some((a - b).abs()),
                _ => None,
            };
            let value = closed_v.or(kernel_v).unwrap_or(f64::NAN);
            let path = match (kernel_v.is_some(), closed_v.is_some()) {
                (true, true) => EvalPath::Both,
                (false, true) => EvalPath::Closed,
                _ => EvalPath::Kernel,
            };
            entries.push(GreekEntry {
                name: g.name(),
                value,
                path,
                kernel: kernel_v,
                closed: closed_v,
                discrepancy,
                within_tolerance: discrepancy.is_none_or(|d| d <= req.tolerance * (1.0 + value.abs())),
                imag_residual: kernel
                    .map(|p| p.imag_residual)
                    .into_iter()
                    .chain(residual_closed)
                    .fold(0.0, f64::max),
            });
        }
        reports.push(GreekReport {
            x,
            strike,
            payoff,
            entries,
        });
    }
    Ok(reports)
}

/// A Greek of a strike-fixed payoff by the kernel route.
pub fn kernel_greek(
    model: &ModelSpec,
    market: MarketState,
    transform: &PayoffTransform,
    kernel: &GreekKernel,
    contour: ContourSpec,
) -> Result<Priced> {
    transform.check(contour.v)?;
    let pricer = Pricer::new(model, market, contour)?;
    pricer.kernel_value(transform, kernel.multiplier.as_ref(), kernel.order, &kernel.name)
}

/// A call Greek at `x` in closed form.
pub fn call_greek(model: &ModelSpec, market: MarketState, x: f64, greek: &str, contour: ContourSpec) -> Result<f64> {
    let g = GreekRegistry::standard().get(greek)?;
    let pricer = Pricer::new(model, market, contour)?;
    let req = GreekRequest::new(vec![g], EvalPath::Closed);
    Ok(compute_reports(&pricer, PayoffKind::Call, &[x], &req)?[0].entries[0].value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{BlackScholes, Merton, VarianceGamma};
    use crate::normal;

    // Merton, S=1, r=0.05, τ=1, σ=0.1, μJ=−0.005, σJ=0.1, λ=1 at the money.
    const TABLE2: [(&str, f64); 15] = [
        ("price", 0.0547129),
        ("delta", 0.5273562),
        ("rho", 0.4726433),
        ("vega", 0.3077755),
        ("theta", 0.0524286),
        ("gamma", 3.0777550),
        ("vanna", 0.1538878),
        ("vomma", 0.9091780),
        ("charm", 0.1682860),
        ("veta", 0.1222076),
        ("vera", -0.1538878),
        // printed with the opposite sign; ∂Γ/∂τ by finite differences is negative here
        ("color", -1.8556795),
        ("speed", -4.6166325),
        ("ultima", -11.5390956),
        ("zomma", -21.6857699),
    ];

    fn merton_pricer(n: usize) -> Pricer {
        let m = ModelSpec::new(Merton::new(0.1, -0.005, 0.1, 1.0).unwrap());
        Pricer::new(&m, MarketState::new(1.0, 0.05, 1.0).unwrap(), ContourSpec::new(1.5, 500.0, n)).unwrap()
    }

    fn all() -> Vec<Arc<dyn Greek>> {
        GreekRegistry::standard().parse_list("all").unwrap()
    }

    #[test]
    fn merton_atm_greeks_both_paths() {
        let p = merton_pricer(1 << 17);
        let req = GreekRequest::new(all(), EvalPath::Both);
        let rep = &compute_reports(&p, PayoffKind::Call, &[0.0], &req).unwrap()[0];
        for (name, want) in TABLE2 {
            let e = rep.get(name).unwrap();
            let tol = if want.abs() > 4.0 { 1e-4 } else { 1e-5 };
            assert!((e.value - want).abs() < tol, "{name}: {} vs {want}", e.value);
            assert!(e.within_tolerance, "{name}: kernel {:?} closed {:?}", e.kernel, e.closed);
        }
    }

    #[test]
    fn decomposed_time_greeks_match_closed() {
        let p = merton_pricer(1 << 16);
        let req = GreekRequest::new(all(), EvalPath::Closed);
        let rep = &compute_reports(&p, PayoffKind::Call, &[0.0, -0.1], &req).unwrap();
        for r in rep {
            for g in DECOMPOSED_GREEKS {
                let d = decomposed_greek(&p, r.x, g).unwrap();
                let c = r.value(g).unwrap();
                assert!((d - c).abs() < 1e-8 * (1.0 + c.abs()), "{g} at {}: {d} vs {c}", r.x);
            }
        }
    }

    #[test]
    fn lambda_sensitivity_forms_agree() {
        let p = merton_pricer(1 << 16);
        let l = lambda_sensitivity(&p, 0.0).unwrap();
        let k = param_sensitivity(&p, 0.0, "lambda", EvalPath::Closed).unwrap();
        assert!((l.decomposed - l.kernel).abs() < 1e-9, "{l:?}");
        assert!((l.kernel - k).abs() < 1e-9);
        // θ = S[re^xQ + σ²/2 e^x f] + (λ/τ) ∂C/∂λ
        let theta = decomposed_greek(&p, 0.0, "theta").unwrap();
        let at = &p.functionals(&[Functional::Tail, Functional::Density(0)], &[0.0]).unwrap()[0];
        let diffusive = 0.05 * at[0].value + 0.005 * at[1].value;
        assert!((theta - diffusive - l.kernel).abs() < 1e-9);
    }

    #[test]
    fn black_scholes_delta_gamma_match_gaussian() {
        let m = ModelSpec::new(BlackScholes::new(0.2).unwrap());
        let p = Pricer::new(&m, MarketState::new(100.0, 0.03, 0.5).unwrap(), ContourSpec::new(1.5, 200.0, 1 << 14)).unwrap();
        let g = GreekRegistry::standard().parse_list("delta,gamma").unwrap();
        let x = 0.1;
        let rep = &compute_reports(&p, PayoffKind::Call, &[x], &GreekRequest::new(g, EvalPath::Both)).unwrap()[0];
        let sv = 0.2 * 0.5f64.sqrt();
        let d1 = -x / sv + 0.5 * sv;
        assert!((rep.value("delta").unwrap() - normal::cdf(d1)).abs() < 1e-10);
        assert!((rep.value("gamma").unwrap() - normal::pdf(d1) / (100.0 * sv)).abs() < 1e-10);
    }

    #[test]
    fn put_via_parity_and_calendar_theta() {
        let p = merton_pricer(1 << 15);
        let g = GreekRegistry::standard().parse_list("price,delta,theta,gamma").unwrap();
        let call = &compute_reports(&p, PayoffKind::Call, &[0.05], &GreekRequest::new(g.clone(), EvalPath::Both)).unwrap()[0];
        let req = GreekRequest::new(g, EvalPath::Both).with_theta(ThetaConvention::Calendar);
        let put = &compute_reports(&p, PayoffKind::Put, &[0.05], &req).unwrap()[0];
        let k = put.strike;
        let dk = k * (-0.05f64).exp();
        assert!((put.value("price").unwrap() - (call.value("price").unwrap() - 1.0 + dk)).abs() < 1e-12);
        assert!((put.value("delta").unwrap() - (call.value("delta").unwrap() - 1.0)).abs() < 1e-12);
        assert!((put.value("theta").unwrap() + call.value("theta").unwrap() - 0.05 * dk).abs() < 1e-12);
        assert_eq!(put.value("gamma"), call.value("gamma"));
    }

    #[test]
    fn vol_greeks_rejected_without_diffusion() {
        let m = ModelSpec::new(VarianceGamma::new(0.2, 1.0, -0.15).unwrap());
        let p = Pricer::new(&m, MarketState::new(100.0, 0.05, 1.0).unwrap(), ContourSpec::new(1.3, 200.0, 1 << 12)).unwrap();
        let g = GreekRegistry::standard().parse_list("vega").unwrap();
        let err = compute_reports(&p, PayoffKind::Call, &[0.0], &GreekRequest::new(g, EvalPath::Both)).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn registry_names() {
        let r = GreekRegistry::standard();
        assert_eq!(r.names().len(), 15);
        assert_eq!(r.get("Call").unwrap().name(), "price");
        assert_eq!(r.get("sens:vg_rho").unwrap().name(), "sens:vg_rho");
        assert!(r.get("nope").unwrap_err().is_config());
        assert!("sideways".parse::<EvalPath>().is_err());
    }
}
