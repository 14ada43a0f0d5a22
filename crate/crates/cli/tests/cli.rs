use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lewis-greeks"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Second CSV field of the first data row.
fn first_value(o: &Output) -> f64 {
    let text = stdout(o);
    let line = text.lines().nth(1).expect("data row");
    line.split(',').nth(1).unwrap().parse().unwrap()
}

const MERTON: [&str; 14] = [
    "--model", "merton", "--param", "sigma=0.1", "--param", "muj=-0.005", "--param", "sigmaj=0.1", "--param",
    "lambda=1", "--S", "1", "--r", "0.05",
];

#[test]
fn price_from_merton_config() {
    let cfg = config("table2.toml");
    let o = run(&["price", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    assert!((first_value(&o) - 0.0547129).abs() < 5e-8);
}

#[test]
fn price_from_variance_gamma_config_as_json() {
    let cfg = config("table5.toml");
    let o = run(&["price", "--config", cfg.to_str().unwrap(), "--output", "json"]);
    assert!(o.status.success(), "{o:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = v["price"].as_f64().unwrap();
    assert!(format!("{p}").starts_with("11.266899"), "{p}");
    assert!(v["imag_residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn deep_out_of_the_money_is_negligible() {
    let mut args = vec!["price"];
    args.extend(MERTON);
    args.extend(["--tau", "1", "--x", "5", "--N", "2^14", "--A", "300"]);
    let o = run(&args);
    assert!(o.status.success(), "{o:?}");
    assert!(first_value(&o).abs() < 1e-8);
}

#[test]
fn single_point_curve_equals_price() {
    let mut common = MERTON.to_vec();
    common.extend(["--tau", "1", "--N", "2^14", "--A", "300"]);
    let mut price = vec!["price", "--x", "-0.1"];
    price.extend(&common);
    let mut curve = vec!["curve", "--x-min", "-0.1", "--x-max", "-0.1", "--points", "1", "--greeks", "price"];
    curve.extend(&common);
    let p = first_value(&run(&price));
    let c = stdout(&run(&curve));
    let v: f64 = c.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert_eq!(p, v);
}

#[test]
fn fft_delta_curve_is_monotone() {
    let mut args = vec!["curve", "--greeks", "delta", "--tau", "1", "--N", "2^14", "--A", "300"];
    args.extend(MERTON);
    let o = run(&args);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    let deltas: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(deltas.len(), 141);
    assert!(deltas.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn greeks_csv_has_both_paths() {
    let cfg = config("table2.toml");
    let o = run(&["greeks", "--config", cfg.to_str().unwrap(), "--N", "2^16", "--greeks", "delta,gamma"]);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("greek,value,path,discrepancy"));
    for l in lines {
        let f: Vec<&str> = l.split(',').collect();
        assert_eq!(f[2], "both");
        assert!(f[3].parse::<f64>().unwrap() < 1e-8);
    }
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let cfg = config("table4.toml");
    let args = ["greeks", "--config", cfg.to_str().unwrap(), "--N", "2^16"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let o = run(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap(), a);
}

#[test]
fn fast_tables_pass() {
    for id in ["1", "2", "3", "4", "5"] {
        let o = run(&["table", id, "--fast"]);
        assert!(o.status.success(), "table {id}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn validate_black_scholes() {
    let cfg = config("table1.toml");
    let o = run(&["validate", "--config", cfg.to_str().unwrap(), "--N", "2^14"]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(stdout(&o).lines().count(), 16);
    let o = run(&["validate", "--config", cfg.to_str().unwrap(), "--N", "2^14", "--tolerance", "0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn exit_codes() {
    // missing model parameter
    let o = run(&["price", "--model", "merton", "--S", "1", "--r", "0.05", "--tau", "1", "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("model.sigma"));
    // unknown greek
    let mut args = vec!["greeks", "--greeks", "wobble", "--tau", "1", "--x", "0", "--N", "2^10", "--A", "200"];
    args.extend(MERTON);
    assert_eq!(run(&args).status.code(), Some(2));
    // contour outside the payoff strip
    let mut args = vec!["price", "--contour-v", "0.5", "--tau", "1", "--x", "0", "--N", "2^10", "--A", "200"];
    args.extend(MERTON);
    assert_eq!(run(&args).status.code(), Some(3));
    // unreadable config
    assert_eq!(run(&["price", "--config", "/nonexistent.toml"]).status.code(), Some(2));
}
