mod config;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{parse_n, RawConfig};
use lewis_greeks::greeks::{compute_reports, greek_curve, GreekRegistry, GreekReport, GreekRequest, PayoffKind};
use lewis_greeks::oracle::{bs_closed_form, linf_error};
use lewis_greeks::pricer::{MarketState, Pricer, Priced};
use lewis_greeks::tables::{self, Mode};
use lewis_greeks::{Error, Result};
use output::{num, Csv};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_ACCEPTANCE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "lewis-greeks", version, about = "European option prices and Greeks for exponential Lévy models")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// TOML file with [model], [contour], [market] and [options] sections
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Model kind: black-scholes, merton, variance-gamma
    #[arg(long, global = true)]
    model: Option<String>,
    /// Model parameter override, e.g. --param sigma=0.2
    #[arg(long = "param", global = true, value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long = "A", global = true)]
    a: Option<f64>,
    /// Node count, an integer or 2^k
    #[arg(long = "N", global = true)]
    n: Option<String>,
    #[arg(long = "contour-v", global = true, allow_hyphen_values = true)]
    v: Option<f64>,
    /// Quadrature rule: simpson or trapezoid
    #[arg(long, global = true)]
    rule: Option<String>,
    /// Step prefactor: spacing or length-over-count
    #[arg(long, global = true)]
    step: Option<String>,
    /// FFT output spacing in x; sets A = 2π(N−1)/(Nδ)
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// call, put or digital
    #[arg(long, global = true)]
    payoff: Option<String>,
    #[arg(long, global = true, conflicts_with = "x")]
    strike: Option<f64>,
    /// Log-forward-moneyness ln(K/S) − rτ
    #[arg(long, global = true, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long = "S", global = true)]
    s: Option<f64>,
    #[arg(long, global = true)]
    r: Option<f64>,
    #[arg(long, global = true)]
    tau: Option<f64>,
    /// Comma-separated Greek names, `all`, or sens:<parameter>
    #[arg(long, global = true)]
    greeks: Option<String>,
    /// kernel, closed or both
    #[arg(long, global = true)]
    path: Option<String>,
    /// tau (∂/∂τ) or calendar (∂/∂t = −∂/∂τ)
    #[arg(long = "theta-convention", global = true)]
    theta_convention: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    output: Format,
    /// Write the result to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Price one option
    Price,
    /// Greeks at one point
    Greeks,
    /// Greeks along an x grid (FFT for more than 32 points)
    Curve {
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Recompute one of the five benchmark tables and compare with the reference values
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        id: u8,
        /// Small grids and relaxed tolerances
        #[arg(long)]
        fast: bool,
    },
    /// Sup-norm errors of the Fourier Greeks against Black–Scholes closed forms
    Validate {
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Bound on sup|error| / (1 + sup|exact|)
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
}

enum Failure {
    Lib(Error),
    Acceptance(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<String, (String, Failure)>;

fn flags(o: &GlobalOpts) -> Result<RawConfig> {
    let mut params = std::collections::BTreeMap::new();
    for p in &o.params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--param expects KEY=VALUE (got `{p}`)")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("--param {k}: `{v}` is not a number")))?;
        params.insert(k.trim().to_ascii_lowercase(), v);
    }
    Ok(RawConfig {
        model_kind: o.model.clone(),
        model_params: params,
        v: o.v,
        a: o.a,
        n: o.n.as_deref().map(parse_n).transpose()?,
        rule: o.rule.clone(),
        step: o.step.clone(),
        delta: o.delta,
        s: o.s,
        r: o.r,
        tau: o.tau,
        strike: o.strike,
        x: o.x,
        payoff: o.payoff.clone(),
        greeks: o.greeks.clone(),
        path: o.path.clone(),
        theta: o.theta_convention.clone(),
        ..Default::default()
    })
}

fn resolve(o: &GlobalOpts) -> Result<RawConfig> {
    let base = match &o.config {
        Some(p) => RawConfig::from_file(p)?,
        None => RawConfig::default(),
    };
    Ok(base.merge(flags(o)?))
}

struct Setup {
    cfg: RawConfig,
    payoff: PayoffKind,
    market: MarketState,
    pricer: Pricer,
}

fn setup(cfg: RawConfig) -> Result<Setup> {
    let payoff = cfg.payoff()?;
    let model = cfg.model()?;
    let market = cfg.market()?;
    let contour = cfg.contour(&model, market.tau, payoff)?;
    let pricer = Pricer::new(&model, market, contour)?;
    Ok(Setup {
        cfg,
        payoff,
        market,
        pricer,
    })
}

fn request(cfg: &RawConfig, default: &str) -> Result<GreekRequest> {
    let greeks = GreekRegistry::standard().parse_list(cfg.greeks.as_deref().unwrap_or(default))?;
    Ok(GreekRequest::new(greeks, cfg.path()?).with_theta(cfg.theta()?))
}

fn price(s: &Setup, x: f64) -> Result<Priced> {
    let strike = s.market.strike_of_x(x);
    let p = s.pricer.price(&s.payoff.transform(strike)?)?;
    Ok(match s.payoff {
        PayoffKind::Put => Priced {
            value: p.value - s.market.s + strike * s.market.discount(),
            ..p
        },
        _ => p,
    })
}

fn cmd_price(cfg: RawConfig, format: Format) -> Result<String> {
    let s = setup(cfg)?;
    let x = s.cfg.x(&s.market)?;
    let p = price(&s, x)?;
    Ok(match format {
        Format::Json => format!("{}\n", json!({ "price": p.value, "imag_residual": p.imag_residual })),
        Format::Csv => {
            let mut c = Csv::new(&["x", "value"]);
            c.row([num(x), num(p.value)]);
            c.finish()
        }
    })
}

fn report_json(r: &GreekReport) -> serde_json::Value {
    json!({
        "x": r.x,
        "strike": r.strike,
        "payoff": r.payoff.name(),
        "greeks": r.entries.iter().map(|e| json!({
            "name": e.name,
            "value": e.value,
            "path": e.path.name(),
            "kernel": e.kernel,
            "closed": e.closed,
            "discrepancy": e.discrepancy,
            "imag_residual": e.imag_residual,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_greeks(cfg: RawConfig, format: Format) -> Result<String> {
    let s = setup(cfg)?;
    let x = s.cfg.x(&s.market)?;
    let req = request(&s.cfg, "all")?;
    let rep = compute_reports(&s.pricer, s.payoff, &[x], &req)?.remove(0);
    Ok(match format {
        Format::Json => format!("{}\n", report_json(&rep)),
        Format::Csv => {
            let mut c = Csv::new(&["greek", "value", "path", "discrepancy"]);
            for e in &rep.entries {
                c.row([e.name.clone(), num(e.value), e.path.name().into(), e.discrepancy.map(num).unwrap_or_default()]);
            }
            c.finish()
        }
    })
}

fn cmd_curve(cfg: RawConfig, format: Format) -> Result<String> {
    let payoff = cfg.payoff()?;
    let model = cfg.model()?;
    let market = cfg.market()?;
    let contour = cfg.contour(&model, market.tau, payoff)?;
    let req = request(&cfg, "price")?;
    let x_min = cfg.x_min.unwrap_or(-0.7);
    let x_max = cfg.x_max.unwrap_or(0.7);
    let points = cfg.points.unwrap_or(141);
    let reps = greek_curve(&model, market, contour, payoff, &req, x_min, x_max, points)?;
    Ok(match format {
        Format::Json => {
            let rows: Vec<_> = reps
                .iter()
                .flat_map(|r| r.entries.iter().map(move |e| json!({ "x": r.x, "quantity": e.name, "value": e.value })))
                .collect();
            format!("{}\n", serde_json::Value::Array(rows))
        }
        Format::Csv => {
            let mut c = Csv::new(&["x", "quantity", "value"]);
            for r in &reps {
                for e in &r.entries {
                    c.row([num(r.x), e.name.clone(), num(e.value)]);
                }
            }
            c.finish()
        }
    })
}

fn cmd_table(id: u8, fast: bool, format: Format) -> std::result::Result<String, (String, Failure)> {
    let mode = if fast { Mode::Fast } else { Mode::Full };
    let run = || -> Result<(tables::Table, Vec<tables::Check>)> {
        let t = tables::reproduce(id, mode)?;
        let checks = tables::check(&t, mode)?;
        Ok((t, checks))
    };
    let (t, checks) = run().map_err(|e| (String::new(), Failure::Lib(e)))?;
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = t
                .rows
                .iter()
                .map(|r| {
                    let c = checks.iter().find(|c| c.quantity == r.quantity);
                    json!({
                        "quantity": r.quantity,
                        "values": t.columns.iter().zip(&r.values).map(|(k, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
                        "reference": c.map(|c| c.reference),
                        "deviation": c.map(|c| c.deviation),
                        "tolerance": c.map(|c| c.tolerance),
                        "pass": c.map(|c| c.pass),
                    })
                })
                .collect();
            format!("{}\n", json!({ "table": t.id, "title": t.title, "rows": rows }))
        }
        Format::Csv => {
            let mut header = vec!["quantity".to_string()];
            header.extend(t.columns.iter().cloned());
            header.extend(["reference", "deviation", "tolerance", "status"].map(String::from));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let mut c = Csv::new(&header);
            for r in &t.rows {
                let mut f = vec![r.quantity.clone()];
                f.extend(r.values.iter().map(|v| num(*v)));
                match checks.iter().find(|c| c.quantity == r.quantity) {
                    Some(ch) => f.extend([
                        num(ch.reference),
                        num(ch.deviation),
                        num(ch.tolerance),
                        if ch.pass { "pass" } else { "FAIL" }.into(),
                    ]),
                    None => f.extend(["", "", "", ""].map(String::from)),
                }
                c.row(f);
            }
            c.finish()
        }
    };
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.quantity.as_str()).collect();
    if failed.is_empty() {
        Ok(text)
    } else {
        Err((text, Failure::Acceptance(format!("table {id}: outside tolerance: {}", failed.join(", ")))))
    }
}

fn cmd_validate(cfg: RawConfig, tolerance: f64, format: Format) -> Outcome {
    let inner = || -> Result<(String, Vec<String>)> {
        let model = cfg.model()?;
        if model.kind() != "black-scholes" {
            return Err(Error::Config(format!(
                "validate compares against Black-Scholes formulas; the model is {}",
                model.kind()
            )));
        }
        let sigma = model.diffusion_sigma();
        let market = cfg.market()?;
        let contour = cfg.contour(&model, market.tau, PayoffKind::Call)?;
        let req = request(&cfg, "all")?;
        let reps = greek_curve(
            &model,
            market,
            contour,
            PayoffKind::Call,
            &req,
            cfg.x_min.unwrap_or(-0.7),
            cfg.x_max.unwrap_or(0.7),
            cfg.points.unwrap_or(141),
        )?;
        let xs: Vec<f64> = reps.iter().map(|r| r.x).collect();
        let mut csv = Csv::new(&["greek", "linf", "argmax_x", "threshold", "status"]);
        let mut rows = Vec::new();
        let mut failed = Vec::new();
        for g in &req.greeks {
            let name = g.name();
            let computed: Vec<f64> = reps.iter().map(|r| r.value(&name).unwrap_or(f64::NAN)).collect();
            let exact = xs
                .iter()
                .map(|&x| {
                    let v = bs_closed_form(&name, market.s, market.strike_of_x(x), market.r, market.tau, sigma)?;
                    let calendar = req.theta == lewis_greeks::greeks::ThetaConvention::Calendar;
                    Ok(if calendar && lewis_greeks::greeks::TIME_GREEKS.contains(&name.as_str()) { -v } else { v })
                })
                .collect::<Result<Vec<f64>>>()?;
            let err = linf_error(&xs, &computed, &exact)?;
            let scale = exact.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let threshold = tolerance * (1.0 + scale);
            let pass = err.linf <= threshold;
            if !pass {
                failed.push(name.clone());
            }
            csv.row([name.clone(), num(err.linf), num(err.location), num(threshold), if pass { "pass" } else { "FAIL" }.into()]);
            rows.push(json!({ "greek": name, "linf": err.linf, "argmax_x": err.location, "threshold": threshold, "pass": pass }));
        }
        let text = match format {
            Format::Csv => csv.finish(),
            Format::Json => format!("{}\n", serde_json::Value::Array(rows)),
        };
        Ok((text, failed))
    };
    match inner() {
        Ok((text, failed)) if failed.is_empty() => Ok(text),
        Ok((text, failed)) => Err((text, Failure::Acceptance(format!("validate: outside tolerance: {}", failed.join(", "))))),
        Err(e) => Err((String::new(), Failure::Lib(e))),
    }
}

fn run(cli: Cli) -> Outcome {
    let lib = |r: Result<String>| r.map_err(|e| (String::new(), Failure::Lib(e)));
    let cfg = match &cli.command {
        Command::Table { .. } => RawConfig::default(),
        _ => resolve(&cli.opts).map_err(|e| (String::new(), Failure::Lib(e)))?,
    };
    let format = cli.opts.output;
    match cli.command {
        Command::Price => lib(cmd_price(cfg, format)),
        Command::Greeks => lib(cmd_greeks(cfg, format)),
        Command::Curve { x_min, x_max, points } => {
            let mut c = cfg;
            c.x_min = x_min.or(c.x_min);
            c.x_max = x_max.or(c.x_max);
            c.points = points.or(c.points);
            lib(cmd_curve(c, format))
        }
        Command::Table { id, fast } => cmd_table(id, fast, format),
        Command::Validate {
            x_min,
            x_max,
            points,
            tolerance,
        } => {
            let mut c = cfg;
            c.x_min = x_min.or(c.x_min);
            c.x_max = x_max.or(c.x_max);
            c.points = points.or(c.points);
            cmd_validate(c, tolerance, format)
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> std::result::Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.opts.out.clone();
    let (text, failure) = match run(cli) {
        Ok(text) => (text, None),
        Err((text, f)) => (text, Some(f)),
    };
    if !text.is_empty() {
        if let Err(e) = emit(&text, &out) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(Failure::Acceptance(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_ACCEPTANCE)
        }
        Some(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { EXIT_CONFIG } else { EXIT_NUMERICAL })
        }
    }
}
