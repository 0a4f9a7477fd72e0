use proptest::prelude::*;
use sirnet_core::capacity::{
    capacity_boost2_closed_form, capacity_exponential, ergodic_capacity_ppp, ergodic_capacity_ppp_lower,
};
use sirnet_core::class::NetworkClass;
use sirnet_core::contention::{gamma_line, gamma_single};
use sirnet_core::model::{Access, Duplex, Fading, FadingCase, MacScheme, Sided};
use sirnet_core::montecarlo::{simulate_sir_samples, Sequential, SimConfig};
use sirnet_core::outage::ps_ppp;
use sirnet_core::specfun::{dilog, exp_integral_e1, lambert_w0, zeta};
use sirnet_core::throughput::{aloha_p_opt, theta_opt_fullduplex};

fn rayleigh_class() -> impl Strategy<Value = NetworkClass> {
    prop_oneof![
        (1u32..=2, 0.0f64..1.0).prop_map(|(dim, t)| NetworkClass::Ppp {
            dim,
            alpha: dim as f64 + 0.3 + 3.0 * t,
            interferers: Fading::Rayleigh,
        }),
        (2.3f64..6.0).prop_map(|alpha| NetworkClass::Ppp {
            dim: 2,
            alpha,
            interferers: Fading::None,
        }),
        (0.2f64..3.0).prop_map(|delta| NetworkClass::PppExponential { delta }),
        (1.5f64..6.0, any::<bool>()).prop_map(|(alpha, two)| NetworkClass::Line {
            alpha,
            sided: if two { Sided::Two } else { Sided::One },
        }),
        (2.0f64..5.0, prop::collection::vec(0.5f64..10.0, 1..6), any::<bool>()).prop_map(|(alpha, distances, f)| {
            NetworkClass::Explicit {
                alpha,
                distances,
                interferers: if f { Fading::Rayleigh } else { Fading::None },
            }
        }),
        (2.0f64..5.0, 0.3f64..5.0, any::<bool>()).prop_map(|(alpha, r, f)| NetworkClass::Single {
            alpha,
            r,
            fading: if f { FadingCase::RAYLEIGH } else { FadingCase::DESIRED_ONLY },
        }),
    ]
}

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

proptest! {
    #[test]
    fn sandwich_holds(class in rayleigh_class(), p in 0.001f64..=1.0, theta in log_uniform(1e-3, 1e3)) {
        let g = class.gamma(theta).unwrap().gamma;
        let v = class.ps(theta, Access::Aloha { p }).unwrap().value.unwrap();
        let tol = 1e-12;
        prop_assert!((1.0 - p * g) <= v + tol, "{} below 1 - p gamma", class.label());
        prop_assert!(v <= (-p * g).exp() + tol, "{} above exp(-p gamma)", class.label());
    }

    #[test]
    fn partial_fading_ordering(xi in 1e-3f64..100.0) {
        let g10 = gamma_single(FadingCase::DESIRED_ONLY, xi).unwrap();
        let g11 = gamma_single(FadingCase::RAYLEIGH, xi).unwrap();
        let g01 = gamma_single(FadingCase::INTERFERERS_ONLY, xi).unwrap();
        prop_assert!(g10 >= g11 && g11 >= g01);
    }

    #[test]
    fn outage_grows_with_load(dim in 1u32..=2, t in 0.0f64..1.0, theta in log_uniform(1e-2, 1e2), p in 0.01f64..0.99) {
        let alpha = dim as f64 + 0.5 + 3.0 * t;
        let f = Fading::Rayleigh;
        let base = ps_ppp(dim, alpha, theta, p, f).unwrap();
        prop_assert!(ps_ppp(dim, alpha, theta * 1.1, p, f).unwrap() <= base);
        prop_assert!(ps_ppp(dim, alpha, theta, (p * 1.1).min(1.0), f).unwrap() <= base);
    }

    #[test]
    fn line_contention_increases_in_theta(alpha in 1.5f64..6.0, theta in log_uniform(1e-3, 1e3)) {
        for sided in [Sided::One, Sided::Two] {
            prop_assert!(gamma_line(alpha, theta, sided).unwrap() < gamma_line(alpha, theta * 1.05, sided).unwrap());
        }
    }

    #[test]
    fn tdma_success_grows_with_reuse(alpha in 2.0f64..5.0, theta in log_uniform(0.1, 100.0), m in 1u32..20) {
        let line = NetworkClass::Line { alpha, sided: Sided::Two };
        let ps = |m| line.ps(theta, Access::Tdma { m }).unwrap().value.unwrap();
        prop_assert!(ps(m) <= ps(m + 1));
    }

    #[test]
    fn capacity_falls_with_density(boost in 1.05f64..3.0, c in log_uniform(0.01, 30.0)) {
        let a = capacity_exponential(boost, c).unwrap().value;
        let b = capacity_exponential(boost, c * 1.1).unwrap().value;
        prop_assert!(b < a);
    }

    #[test]
    fn boost2_closed_form_matches_quadrature(c in log_uniform(0.01, 40.0)) {
        let q = capacity_exponential(2.0, c).unwrap().value;
        let f = capacity_boost2_closed_form(c).unwrap().value;
        prop_assert!((q - f).abs() <= 1e-8 * q);
    }

    #[test]
    fn capacity_lower_bound_holds(alpha in 2.2f64..8.0, p in log_uniform(1e-4, 1.0)) {
        let lower = ergodic_capacity_ppp_lower(alpha, p).unwrap().value;
        let exact = ergodic_capacity_ppp(2, alpha, p).unwrap().value;
        prop_assert!(lower <= exact * (1.0 + 1e-10));
    }

    #[test]
    fn rate_optimum_depends_on_alpha_over_d(alpha in 2.1f64..10.0) {
        let a = theta_opt_fullduplex(alpha, 2).unwrap();
        let b = theta_opt_fullduplex(alpha / 2.0, 1).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn half_duplex_is_more_cautious(gamma in log_uniform(1e-3, 1e3)) {
        let full = aloha_p_opt(gamma, Duplex::Full).unwrap();
        let half = aloha_p_opt(gamma, Duplex::Half).unwrap();
        prop_assert!(half.p_opt < full.p_opt);
        prop_assert!(half.lower_bound.unwrap() <= half.value * (1.0 + 1e-12));
        prop_assert!(half.value < full.value);
    }

    #[test]
    fn lambert_w_inverts(x in -0.36f64..1e3) {
        let w = lambert_w0(x).unwrap();
        prop_assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1e-3));
    }

    #[test]
    fn dilog_vanishes_at_one_and_decreases(x in 1.0f64..1e3) {
        prop_assert!(dilog(x).unwrap() <= 0.0);
        prop_assert!(dilog(x * 1.01).unwrap() < dilog(x).unwrap());
    }

    #[test]
    fn e1_scaled_bounds(x in 0.01f64..50.0) {
        // 1/2 ln(1 + 2/x) < e^x E1(x) < ln(1 + 1/x)
        let s = x.exp() * exp_integral_e1(x).unwrap();
        prop_assert!(0.5 * (1.0 + 2.0 / x).ln() < s && s < (1.0 + 1.0 / x).ln());
    }

    #[test]
    fn zeta_decreases(s in 1.05f64..20.0) {
        prop_assert!(zeta(s * 1.01).unwrap() < zeta(s).unwrap());
        prop_assert!(zeta(s).unwrap() > 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn trial_streams_do_not_depend_on_trial_count(seed in any::<u64>(), p in 0.05f64..1.0) {
        let model = NetworkClass::Ppp { dim: 2, alpha: 4.0, interferers: Fading::Rayleigh }.model().unwrap();
        let mac = MacScheme::aloha(p);
        let short = simulate_sir_samples(&model, &mac, &SimConfig::new(20, seed), &Sequential).unwrap();
        let long = simulate_sir_samples(&model, &mac, &SimConfig::new(40, seed), &Sequential).unwrap();
        prop_assert_eq!(&short.sir[..], &long.sir[..20]);
    }
}
