//! The five benchmark experiments: Black–Scholes sup-norm errors over a moneyness grid,
//! Merton Greeks and parameter sensitivities at the money, a Merton digital, and
//! Variance Gamma Greeks.
//!
//! Grids use the trapezoid rule with the `A/N` step prefactor, the convention under
//! which the published digits were produced; the Black–Scholes table uses the library
//! defaults since it measures error against the exact formulas.

use crate::contour::{ContourSpec, StepConvention, Trapezoid};
use crate::error::{Error, Result};
use crate::greeks::{
    compute_reports, digital_greeks, EvalPath, GreekRegistry, GreekRequest, PayoffKind, STANDARD_GREEKS,
};
use crate::models::{BlackScholes, Merton, ModelSpec, VarianceGamma};
use crate::oracle;
use crate::pricer::{MarketState, Pricer};
use std::sync::Arc;

/// Node count of every column in fast mode.
pub const FAST_N: usize = 1 << 16;

/// FFT output spacing of the strike-grid experiments (digital and Variance Gamma).
pub const STRIKE_GRID_SPACING: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    Fast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub quantity: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub id: u8,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn row(&self, quantity: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.quantity == quantity)
    }

    pub fn value(&self, quantity: &str, column: usize) -> Option<f64> {
        self.row(quantity).and_then(|r| r.values.get(column).copied())
    }
}

fn reproduction_contour(v: f64, a: f64, n: usize) -> ContourSpec {
    ContourSpec::new(v, a, n)
        .with_rule(Arc::new(Trapezoid))
        .with_step(StepConvention::LengthOverCount)
}

fn log2(n: usize) -> u32 {
    n.trailing_zeros()
}

/// Appends `|last − previous|` to each row of a two-column table.
fn with_difference(mut t: Table) -> Table {
    t.columns.push("difference".into());
    for r in &mut t.rows {
        let d = (r.values[1] - r.values[0]).abs();
        r.values.push(d);
    }
    t
}

pub fn black_scholes_model() -> ModelSpec {
    ModelSpec::new(BlackScholes::new(0.1).expect("valid volatility"))
}

pub fn merton_model() -> ModelSpec {
    ModelSpec::new(Merton::new(0.1, -0.005, 0.1, 1.0).expect("valid Merton parameters"))
}

pub fn digital_merton_model() -> ModelSpec {
    ModelSpec::new(Merton::new(0.2, 0.05, 0.15, 0.5).expect("valid Merton parameters"))
}

pub fn variance_gamma_model() -> ModelSpec {
    ModelSpec::new(VarianceGamma::new(0.2, 1.0, -0.15).expect("valid VG parameters"))
}

/// Sup-norm error of the 15 call quantities against Black–Scholes over `x ∈ [−0.7, 0.7]`.
pub fn table1(mode: Mode) -> Result<Table> {
    let n = match mode {
        Mode::Full => 1 << 22,
        Mode::Fast => FAST_N,
    };
    let market = MarketState::new(1.0, 0.05, 1.0)?;
    let pricer = Pricer::new(&black_scholes_model(), market, ContourSpec::new(1.5, 300.0, n))?;
    let xs = oracle::benchmark_grid();
    let req = GreekRequest::new(GreekRegistry::standard().parse_list("all")?, EvalPath::Kernel);
    let reports = compute_reports(&pricer, PayoffKind::Call, &xs, &req)?;
    let mut rows = Vec::with_capacity(STANDARD_GREEKS.len());
    for g in STANDARD_GREEKS {
        let computed: Vec<f64> = reports.iter().map(|r| r.value(g).unwrap_or(f64::NAN)).collect();
        let exact = xs
            .iter()
            .map(|&x| oracle::bs_closed_form(g, market.s, market.strike_of_x(x), market.r, market.tau, 0.1))
            .collect::<Result<Vec<f64>>>()?;
        let e = oracle::linf_error(&xs, &computed, &exact)?;
        rows.push(TableRow {
            quantity: g.to_string(),
            values: vec![e.linf, e.location],
        });
    }
    Ok(Table {
        id: 1,
        title: format!("Black-Scholes sup-norm errors over x in [-0.7, 0.7], A=300, N=2^{}", log2(n)),
        columns: vec!["linf".into(), "argmax_x".into()],
        rows,
    })
}

/// The 15 Merton call quantities at the money.
pub fn table2(mode: Mode) -> Result<Table> {
    let ns = match mode {
        Mode::Full => [1 << 20, 1 << 21],
        Mode::Fast => [FAST_N, 2 * FAST_N],
    };
    let market = MarketState::new(1.0, 0.05, 1.0)?;
    let model = merton_model();
    let req = GreekRequest::new(GreekRegistry::standard().parse_list("all")?, EvalPath::Kernel);
    let mut cols = Vec::new();
    for &n in &ns {
        let pricer = Pricer::new(&model, market, reproduction_contour(1.5, 500.0, n))?;
        cols.push(compute_reports(&pricer, PayoffKind::Call, &[0.0], &req)?.remove(0));
    }
    let rows = STANDARD_GREEKS
        .iter()
        .map(|g| TableRow {
            quantity: g.to_string(),
            values: cols.iter().map(|r| r.value(g).unwrap_or(f64::NAN)).collect(),
        })
        .collect();
    Ok(with_difference(Table {
        id: 2,
        title: "Merton call Greeks at x = 0, A=500".into(),
        columns: ns.iter().map(|n| format!("N=2^{}", log2(*n))).collect(),
        rows,
    }))
}

/// Merton sensitivities to the jump mean, jump volatility and intensity at the money.
pub fn table3(mode: Mode) -> Result<Table> {
    let cols = match mode {
        Mode::Full => [(500.0, 1 << 20), (1000.0, 1 << 22)],
        Mode::Fast => [(500.0, FAST_N), (1000.0, 2 * FAST_N)],
    };
    let market = MarketState::new(1.0, 0.05, 1.0)?;
    let model = merton_model();
    let params = ["muj", "sigmaj", "lambda"];
    let greeks = params.iter().map(|p| GreekRegistry::standard().get(&format!("sens:{p}"))).collect::<Result<_>>()?;
    let req = GreekRequest::new(greeks, EvalPath::Kernel);
    let mut reports = Vec::new();
    for &(a, n) in &cols {
        let pricer = Pricer::new(&model, market, reproduction_contour(1.5, a, n))?;
        reports.push(compute_reports(&pricer, PayoffKind::Call, &[0.0], &req)?.remove(0));
    }
    let rows = params
        .iter()
        .map(|p| TableRow {
            quantity: format!("sens:{p}"),
            values: reports.iter().map(|r| r.value(&format!("sens:{p}")).unwrap_or(f64::NAN)).collect(),
        })
        .collect();
    Ok(with_difference(Table {
        id: 3,
        title: "Merton parameter sensitivities at x = 0".into(),
        columns: cols.iter().map(|(a, n)| format!("A={a},N=2^{}", log2(*n))).collect(),
        rows,
    }))
}

fn strike_grid_ns(mode: Mode) -> [usize; 2] {
    match mode {
        Mode::Full => [1 << 20, 1 << 22],
        Mode::Fast => [FAST_N, 4 * FAST_N],
    }
}

/// Discounted digital call and its Greeks, Merton, `S = K = 100`.
pub fn table4(mode: Mode) -> Result<Table> {
    let ns = strike_grid_ns(mode);
    let market = MarketState::new(100.0, 0.07, 1.0)?;
    let x = market.x_of_strike(100.0);
    let model = digital_merton_model();
    let mut cols = Vec::new();
    for &n in &ns {
        let a = ContourSpec::truncation_for_spacing(n, STRIKE_GRID_SPACING);
        let pricer = Pricer::new(&model, market, reproduction_contour(0.5, a, n))?;
        cols.push(digital_greeks(&pricer, x)?);
    }
    let pick: [(&str, fn(&crate::greeks::DigitalGreeks) -> f64); 4] = [
        ("price", |d| d.price),
        ("delta", |d| d.delta),
        ("gamma", |d| d.gamma),
        ("vega", |d| d.vega),
    ];
    let rows = pick
        .iter()
        .map(|(name, f)| TableRow {
            quantity: name.to_string(),
            values: cols.iter().map(f).collect(),
        })
        .collect();
    Ok(with_difference(Table {
        id: 4,
        title: "Merton digital call, S=K=100, grid spacing 0.01".into(),
        columns: ns.iter().map(|n| format!("N=2^{}", log2(*n))).collect(),
        rows,
    }))
}

/// Variance Gamma call, delta, gamma and sensitivity to the volatility parameter, `S = K = 100`.
pub fn table5(mode: Mode) -> Result<Table> {
    let ns = strike_grid_ns(mode);
    let market = MarketState::new(100.0, 0.05, 1.0)?;
    let x = market.x_of_strike(100.0);
    let model = variance_gamma_model();
    let reg = GreekRegistry::standard();
    let names = ["price", "delta", "gamma", "sens:vg_rho"];
    let greeks = names.iter().map(|n| reg.get(n)).collect::<Result<_>>()?;
    let req = GreekRequest::new(greeks, EvalPath::Kernel);
    let mut reports = Vec::new();
    for &n in &ns {
        let a = ContourSpec::truncation_for_spacing(n, STRIKE_GRID_SPACING);
        let pricer = Pricer::new(&model, market, reproduction_contour(1.3, a, n))?;
        reports.push(compute_reports(&pricer, PayoffKind::Call, &[x], &req)?.remove(0));
    }
    let rows = names
        .iter()
        .map(|g| TableRow {
            quantity: g.to_string(),
            values: reports.iter().map(|r| r.value(g).unwrap_or(f64::NAN)).collect(),
        })
        .collect();
    Ok(with_difference(Table {
        id: 5,
        title: "Variance Gamma call quantities, S=K=100, grid spacing 0.01".into(),
        columns: ns.iter().map(|n| format!("N=2^{}", log2(*n))).collect(),
        rows,
    }))
}

pub fn reproduce(id: u8, mode: Mode) -> Result<Table> {
    match id {
        1 => table1(mode),
        2 => table2(mode),
        3 => table3(mode),
        4 => table4(mode),
        5 => table5(mode),
        _ => Err(Error::Config(format!("no table {id}; available: 1, 2, 3, 4, 5"))),
    }
}

/// A reference value for one cell and its acceptance band.
#[derive(Debug, Clone, PartialEq)]
pub struct Expected {
    pub quantity: &'static str,
    /// Column compared against (for table 1, the sup-norm error is bounded instead).
    pub column: usize,
    pub value: f64,
    pub tolerance: f64,
    /// Compare `|computed|` with `|value|`: the reference carries the opposite sign of `∂Γ/∂τ`.
    pub magnitude_only: bool,
}

const fn cell(quantity: &'static str, column: usize, value: f64, tolerance: f64) -> Expected {
    Expected {
        quantity,
        column,
        value,
        tolerance,
        magnitude_only: false,
    }
}

/// Relaxed band applied to every cell in fast mode.
pub const FAST_RELATIVE_TOLERANCE: f64 = 1e-4;

/// Reported sup-norm errors of the Black–Scholes experiment; computed errors must stay
/// within ten times these.
pub const BS_REPORTED_LINF: [(&str, f64); 15] = [
    ("price", 1.2e-7),
    ("delta", 2.4e-7),
    ("rho", 1.9e-7),
    ("vega", 9.5e-8),
    ("theta", 1.2e-8),
    ("gamma", 9.5e-7),
    ("vanna", 6.3e-7),
    ("vomma", 7.5e-7),
    ("charm", 6.8e-8),
    ("veta", 8.9e-8),
    ("vera", 5.8e-7),
    ("color", 5.6e-7),
    ("speed", 6.3e-6),
    ("ultima", 1.2e-5),
    ("zomma", 9.5e-6),
];

/// Reference cells and tolerances for a table.
pub fn expected(id: u8) -> Result<Vec<Expected>> {
    Ok(match id {
        1 => BS_REPORTED_LINF.iter().map(|&(q, e)| cell(q, 0, 0.0, 10.0 * e)).collect(),
        2 => {
            let rows: [(&str, f64); 15] = [
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
                ("color", 1.8556795),
                ("speed", -4.6166325),
                ("ultima", -11.5390956),
                ("zomma", -21.6857699),
            ];
            rows.iter()
                .map(|&(q, v)| Expected {
                    magnitude_only: q == "color",
                    ..cell(q, 1, v, if v.abs() > 4.0 { 1e-4 } else { 1e-5 })
                })
                .collect()
        }
        3 => vec![
            cell("sens:muj", 1, 0.006703855, 1e-6),
            cell("sens:sigmaj", 1, 0.239001230, 1e-6),
            cell("sens:lambda", 1, 0.013407711, 1e-6),
        ],
        4 => vec![
            cell("price", 1, 0.531270245, 1e-6),
            cell("delta", 1, 0.016610457, 1e-6),
            cell("gamma", 1, -0.000280032, 1e-6),
            cell("vega", 1, -0.560064763, 1e-6),
        ],
        5 => vec![
            cell("price", 1, 11.26689919, 1e-4),
            cell("delta", 1, 0.72818479, 1e-6),
            cell("gamma", 1, 0.01427438, 1e-7),
            cell("sens:vg_rho", 1, 23.04336021, 1e-3),
        ],
        _ => return Err(Error::Config(format!("no table {id}; available: 1, 2, 3, 4, 5"))),
    })
}

/// Outcome of comparing one computed cell with its reference.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub quantity: String,
    pub computed: f64,
    pub reference: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares a reproduced table with its reference cells.
pub fn check(table: &Table, mode: Mode) -> Result<Vec<Check>> {
    expected(table.id)?
        .into_iter()
        .map(|e| {
            let computed = table.value(e.quantity, e.column).ok_or_else(|| {
                Error::Config(format!("table {} has no cell {}[{}]", table.id, e.quantity, e.column))
            })?;
            let (deviation, tolerance) = if table.id == 1 {
                let t = match mode {
                    Mode::Full => e.tolerance,
                    Mode::Fast => FAST_RELATIVE_TOLERANCE,
                };
                (computed, t)
            } else {
                let d = if e.magnitude_only {
                    (computed.abs() - e.value.abs()).abs()
                } else {
                    (computed - e.value).abs()
                };
                let t = match mode {
                    Mode::Full => e.tolerance,
                    Mode::Fast => e.tolerance.max(FAST_RELATIVE_TOLERANCE * (1.0 + e.value.abs())),
                };
                (d, t)
            };
            Ok(Check {
                quantity: e.quantity.to_string(),
                computed,
                reference: e.value,
                deviation,
                tolerance,
                pass: deviation <= tolerance,
            })
        })
        .collect()
}
