use lewis_greeks::contour::{suggest_truncation, ContourSpec};
use lewis_greeks::greeks::{compute_reports, EvalPath, GreekRegistry, GreekRequest, PayoffKind};
use lewis_greeks::models::{char_exponent, esscher_dual, BlackScholes, Merton, VarianceGamma};
use lewis_greeks::oracle::bs_closed_form;
use lewis_greeks::pricer::{MarketState, Pricer};
use lewis_greeks::transforms::{call_transform, put_price_via_parity, PayoffTransform};
use lewis_greeks::{Complex64, ModelSpec, Strip};
use proptest::prelude::*;

fn merton() -> impl Strategy<Value = ModelSpec> {
    (0.05..0.5f64, -0.3..0.3f64, 0.01..0.4f64, 0.0..3.0f64)
        .prop_map(|(s, m, sj, l)| ModelSpec::new(Merton::new(s, m, sj, l).unwrap()))
}

fn vg() -> impl Strategy<Value = ModelSpec> {
    (0.1..0.4f64, 0.05..0.5f64, -0.3..0.3f64)
        .prop_map(|(rho, nu, theta)| ModelSpec::new(VarianceGamma::new(rho, nu, theta).unwrap()))
}

fn any_model() -> impl Strategy<Value = ModelSpec> {
    prop_oneof![
        (0.05..0.8f64).prop_map(|s| ModelSpec::new(BlackScholes::new(s).unwrap())),
        merton(),
        vg(),
    ]
}

fn pricer(model: &ModelSpec, market: MarketState, v: f64) -> Pricer {
    let a = suggest_truncation(model, v, market.tau, 1e-12).unwrap().a;
    // aliasing falls off like exp(−2π·distance/h); keep h below 0.04
    let n = ((a / 0.04) as usize).next_power_of_two().max(1 << 12);
    Pricer::new(model, market, ContourSpec::new(v, a, n)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exponent_is_normalised(m in any_model()) {
        prop_assert!(char_exponent(&m, Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-14);
        prop_assert!(char_exponent(&m, Complex64::new(0.0, -1.0)).unwrap().norm() < 1e-12);
    }

    #[test]
    fn exponent_is_hermitian_on_the_real_line(m in any_model(), u in -50.0..50.0f64) {
        let a = char_exponent(&m, Complex64::new(u, 0.0)).unwrap();
        let b = char_exponent(&m, Complex64::new(-u, 0.0)).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-12 * (1.0 + a.norm()));
        prop_assert!(a.re <= 1e-14);
    }

    #[test]
    fn dual_strip_is_shifted(m in prop_oneof![merton(), vg()]) {
        let d = esscher_dual(&m).unwrap();
        let (hi, dual_hi) = (m.moment_strip().hi, d.moment_strip().hi);
        let shifted = if hi.is_finite() { (dual_hi - (hi - 1.0)).abs() < 1e-12 } else { dual_hi == hi };
        prop_assert!(shifted);
        // under the dual measure e^{−X} is the martingale
        prop_assert!(char_exponent(&d, Complex64::new(0.0, 1.0)).unwrap().norm() < 1e-12);
    }

    #[test]
    fn black_scholes_prices_and_greeks(
        sigma in 0.1..0.6f64,
        r in 0.0..0.1f64,
        tau in 0.25..2.0f64,
        x in -0.4..0.4f64,
    ) {
        let m = ModelSpec::new(BlackScholes::new(sigma).unwrap());
        let market = MarketState::new(1.0, r, tau).unwrap();
        let p = pricer(&m, market, 1.5);
        let k = market.strike_of_x(x);
        let reg = GreekRegistry::standard();
        let greeks = reg.parse_list("all").unwrap();
        let rep = compute_reports(&p, PayoffKind::Call, &[x], &GreekRequest::new(greeks, EvalPath::Kernel))
            .unwrap()
            .remove(0);
        for e in &rep.entries {
            let exact = bs_closed_form(&e.name, 1.0, k, r, tau, sigma).unwrap();
            prop_assert!((e.value - exact).abs() < 1e-8 * (1.0 + exact.abs()), "{}: {} vs {}", e.name, e.value, exact);
        }
    }

    #[test]
    fn call_is_decreasing_and_convex_in_strike(m in any_model(), x in -0.3..0.3f64) {
        let market = MarketState::new(1.0, 0.03, 1.0).unwrap();
        let p = pricer(&m, market, 1.5);
        let dx = 0.02;
        let c: Vec<f64> = [x - dx, x, x + dx]
            .iter()
            .map(|&y| p.price(&call_transform(market.strike_of_x(y)).unwrap()).unwrap().value)
            .collect();
        let ks: Vec<f64> = [x - dx, x, x + dx].iter().map(|&y| market.strike_of_x(y)).collect();
        prop_assert!(c[0] > c[1] && c[1] > c[2]);
        // convexity on a non-uniform strike grid
        let s1 = (c[1] - c[0]) / (ks[1] - ks[0]);
        let s2 = (c[2] - c[1]) / (ks[2] - ks[1]);
        prop_assert!(s2 >= s1 - 1e-10);
        // no-arbitrage bounds
        let lower = (1.0 - ks[1] * market.discount()).max(0.0);
        prop_assert!(c[1] >= lower - 1e-10 && c[1] <= 1.0 + 1e-10);
    }

    #[test]
    fn put_from_its_own_strip_matches_parity(m in prop_oneof![merton(), vg()], x in -0.3..0.3f64) {
        let market = MarketState::new(1.0, 0.04, 1.0).unwrap();
        let k = market.strike_of_x(x);
        let call = pricer(&m, market, 1.5).price(&call_transform(k).unwrap()).unwrap().value;
        let i = Complex64::i();
        let put_t = PayoffTransform::custom("put", k, 1.0, Strip::new(f64::NEG_INFINITY, 0.0), move |z| {
            1.0 / (i * z * (1.0 + i * z))
        })
        .unwrap();
        let put = pricer(&m, market, -0.5).price(&put_t).unwrap().value;
        prop_assert!((put - put_price_via_parity(call, 1.0, k, 0.04, 1.0)).abs() < 1e-9);
    }
}
