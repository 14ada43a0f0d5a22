//! Run configuration: a sectioned TOML file (`[model]`, `[contour]`, `[market]`,
//! `[options]`) with every key overridable from the command line.

use lewis_greeks::contour::{rule_by_name, suggest_truncation, ContourSpec, StepConvention};
use lewis_greeks::greeks::{EvalPath, PayoffKind, ThetaConvention};
use lewis_greeks::pricer::MarketState;
use lewis_greeks::{Error, ModelRegistry, ModelSpec, Result};
use std::collections::BTreeMap;
use std::path::Path;

/// Nodes used when neither the file nor the flags give `N`.
pub const DEFAULT_N: usize = 1 << 16;

/// Tail tolerance for choosing `A` automatically.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-12;

/// Values gathered from the file and the flags, before validation.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub model_kind: Option<String>,
    pub model_params: BTreeMap<String, f64>,
    pub v: Option<f64>,
    pub a: Option<f64>,
    pub n: Option<usize>,
    pub rule: Option<String>,
    pub step: Option<String>,
    pub delta: Option<f64>,
    pub s: Option<f64>,
    pub r: Option<f64>,
    pub tau: Option<f64>,
    pub strike: Option<f64>,
    pub x: Option<f64>,
    pub payoff: Option<String>,
    pub greeks: Option<String>,
    pub path: Option<String>,
    pub theta: Option<String>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
}

fn number(section: &str, key: &str, v: &toml::Value) -> Result<f64> {
    match v {
        toml::Value::Float(f) => Ok(*f),
        toml::Value::Integer(i) => Ok(*i as f64),
        _ => Err(Error::Config(format!("`{section}.{key}` must be a number (got {v})"))),
    }
}

fn text(section: &str, key: &str, v: &toml::Value) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| Error::Config(format!("`{section}.{key}` must be a string (got {v})")))
}

/// Node count from an integer or a `"2^k"` string.
pub fn parse_n(s: &str) -> Result<usize> {
    let s = s.trim();
    let n = match s.split_once('^') {
        Some(("2", k)) => k
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|k| *k < 40)
            .map(|k| 1usize << k),
        _ => s.parse::<usize>().ok(),
    };
    n.ok_or_else(|| Error::Config(format!("N must be a positive integer or 2^k (got `{s}`)")))
}

fn count(section: &str, key: &str, v: &toml::Value) -> Result<usize> {
    match v {
        toml::Value::Integer(i) if *i > 0 => Ok(*i as usize),
        toml::Value::String(s) => parse_n(s),
        _ => Err(Error::Config(format!("`{section}.{key}` must be a positive integer (got {v})"))),
    }
}

impl RawConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&src).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn from_toml(src: &str) -> Result<Self> {
        let doc: toml::Table = src.parse().map_err(|e| Error::Config(format!("invalid TOML: {e}")))?;
        let mut c = RawConfig::default();
        for (section, body) in &doc {
            let table = body
                .as_table()
                .ok_or_else(|| Error::Config(format!("`{section}` must be a section")))?;
            for (key, v) in table {
                match (section.as_str(), key.as_str()) {
                    ("model", "kind") => c.model_kind = Some(text(section, key, v)?),
                    ("model", _) => {
                        c.model_params.insert(key.to_ascii_lowercase(), number(section, key, v)?);
                    }
                    ("contour", "v") => c.v = Some(number(section, key, v)?),
                    ("contour", "A" | "a") => c.a = Some(number(section, key, v)?),
                    ("contour", "N" | "n") => c.n = Some(count(section, key, v)?),
                    ("contour", "rule") => c.rule = Some(text(section, key, v)?),
                    ("contour", "step") => c.step = Some(text(section, key, v)?),
                    ("contour", "delta") => c.delta = Some(number(section, key, v)?),
                    ("market", "S" | "s") => c.s = Some(number(section, key, v)?),
                    ("market", "r") => c.r = Some(number(section, key, v)?),
                    ("market", "tau") => c.tau = Some(number(section, key, v)?),
                    ("market", "strike" | "K") => c.strike = Some(number(section, key, v)?),
                    ("market", "x") => c.x = Some(number(section, key, v)?),
                    ("options", "payoff") => c.payoff = Some(text(section, key, v)?),
                    ("options", "greeks") => c.greeks = Some(text(section, key, v)?),
                    ("options", "path") => c.path = Some(text(section, key, v)?),
                    ("options", "theta_convention") => c.theta = Some(text(section, key, v)?),
                    ("options", "x_min") => c.x_min = Some(number(section, key, v)?),
                    ("options", "x_max") => c.x_max = Some(number(section, key, v)?),
                    ("options", "points") => c.points = Some(count(section, key, v)?),
                    _ => return Err(Error::Config(format!("unknown config key `{section}.{key}`"))),
                }
            }
        }
        if c.strike.is_some() && c.x.is_some() {
            return Err(Error::Config("give exactly one of `market.strike` and `market.x`".into()));
        }
        Ok(c)
    }

    /// Applies `over` on top of `self`: any value set in `over` wins.
    pub fn merge(mut self, over: RawConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(model_kind, v, a, n, rule, step, delta, s, r, tau, payoff, greeks, path, theta, x_min, x_max, points);
        if over.strike.is_some() {
            self.strike = over.strike;
            self.x = None;
        }
        if over.x.is_some() {
            self.x = over.x;
            self.strike = None;
        }
        self.model_params.extend(over.model_params);
        self
    }

    pub fn payoff(&self) -> Result<PayoffKind> {
        self.payoff.as_deref().unwrap_or("call").parse()
    }

    pub fn path(&self) -> Result<EvalPath> {
        self.path.as_deref().unwrap_or("both").parse()
    }

    pub fn theta(&self) -> Result<ThetaConvention> {
        self.theta.as_deref().unwrap_or("tau").parse()
    }

    pub fn model(&self) -> Result<ModelSpec> {
        let kind = self
            .model_kind
            .as_deref()
            .ok_or_else(|| Error::Config("missing `model.kind` (or --model)".into()))?;
        ModelRegistry::standard().build(kind, &self.model_params)
    }

    pub fn market(&self) -> Result<MarketState> {
        let need = |v: Option<f64>, k: &str| v.ok_or_else(|| Error::Config(format!("missing `market.{k}` (or --{k})")));
        MarketState::new(need(self.s, "S")?, need(self.r, "r")?, need(self.tau, "tau")?)
    }

    /// The point to evaluate at, as log-forward-moneyness.
    pub fn x(&self, market: &MarketState) -> Result<f64> {
        match (self.strike, self.x) {
            (Some(k), None) if k > 0.0 => Ok(market.x_of_strike(k)),
            (Some(k), None) => Err(Error::Config(format!("strike must be > 0 (got {k})"))),
            (None, Some(x)) => Ok(x),
            (None, None) => Err(Error::Config("missing `market.strike` or `market.x` (or --strike / --x)".into())),
            (Some(_), Some(_)) => Err(Error::Config("give exactly one of strike and x".into())),
        }
    }

    pub fn contour(&self, model: &ModelSpec, tau: f64, payoff: PayoffKind) -> Result<ContourSpec> {
        let v = self.v.unwrap_or_else(|| payoff.default_v());
        let n = self.n.unwrap_or(DEFAULT_N);
        let a = match (self.delta, self.a) {
            (Some(d), _) if d > 0.0 => ContourSpec::truncation_for_spacing(n, d),
            (Some(d), _) => return Err(Error::Config(format!("contour.delta must be > 0 (got {d})"))),
            (None, Some(a)) => a,
            (None, None) => {
                let s = suggest_truncation(model, v, tau, DEFAULT_TRUNCATION_TOL)?;
                if let Some(w) = &s.warning {
                    eprintln!("warning: {w}");
                }
                s.a
            }
        };
        let mut spec = ContourSpec::new(v, a, n);
        if let Some(rule) = &self.rule {
            spec = spec.with_rule(rule_by_name(rule)?);
        }
        if let Some(step) = &self.step {
            spec = spec.with_step(step.parse::<StepConvention>()?);
        }
        Ok(spec)
    }
}
