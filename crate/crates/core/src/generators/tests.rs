use super::*;
use crate::exact::ratio;

fn exact(c: &PinskerCoefficients) -> (BigRational, BigRational, BigRational, Option<BigRational>) {
    (
        c.c2.as_exact().unwrap().clone(),
        c.w2.as_exact().unwrap().clone(),
        c.c4.as_exact().unwrap().clone(),
        c.w4.as_ref().map(|w| w.as_exact().unwrap().clone()),
    )
}

#[test]
fn kl_and_jeffreys_coefficients() {
    let c = Generator::kl().coefficients().unwrap();
    assert_eq!(exact(&c), (ratio(1, 2), ratio(1, 3), ratio(1, 36), Some(ratio(17, 45))));
    let c = Generator::jeffreys().coefficients().unwrap();
    assert_eq!(exact(&c), (ratio(1, 1), ratio(1, 2), ratio(1, 12), Some(ratio(1, 2))));
}

#[test]
fn chi2_has_undefined_w4() {
    let c = Generator::chi2().coefficients().unwrap();
    assert_eq!(exact(&c), (ratio(1, 1), ratio(1, 1), ratio(0, 1), None));
    assert_eq!(c.to_string(), "c2=1 w2=1 c4=0 w4=undefined");
}

#[test]
fn rel_info_alpha_matches_closed_form() {
    for (n, d) in [(-1, 2), (1, 2), (3, 2), (-3, 1), (5, 4), (7, 3)] {
        let alpha = Number::exact(n, d);
        let c = Generator::rel_info_alpha(alpha.clone()).unwrap().coefficients().unwrap();
        assert_eq!(c, PinskerCoefficients::rel_info_alpha_closed_form(&alpha), "alpha = {alpha}");
    }
    // Irrational-looking float parameter goes through the float path.
    let c = Generator::rel_info_alpha(0.3f64).unwrap().coefficients().unwrap();
    let (c2, w2, c4, w4) = c.floats();
    assert!((c2 - 0.5).abs() < 1e-12);
    assert!((w2 - 1.3 / 3.0).abs() < 1e-12);
    assert!((c4 - 1.3 * 1.7 / 72.0).abs() < 1e-12);
    assert!((w4.unwrap() - (17.0 + 3.3) / 45.0).abs() < 1e-9);
}

#[test]
fn degenerate_and_nondifferentiable() {
    assert!(matches!(Generator::total_variation().coefficients(), Err(Error::InsufficientOrder { .. })));
    assert!(Generator::total_variation().deriv(1, 2.0).is_err());
    assert_eq!(Generator::total_variation().first_derivative_at_one().to_f64(), 0.0);
    let flat = Generator::from_expression("flat", "u - 1").unwrap();
    assert!(matches!(flat.coefficients(), Err(Error::DegenerateGenerator { .. })));
}

#[test]
fn catalogue_lookup() {
    let p = Params { alpha: Some(Number::exact(2, 1)), nu: None };
    assert!((Generator::builtin("rel_info_alpha", &p).unwrap().eval(3.0) - 4.0).abs() < 1e-12);
    assert!(matches!(Generator::builtin("nope", &Params::default()), Err(Error::UnknownGenerator(_))));
    assert!(Generator::builtin("rel_info_alpha", &Params::default()).is_err());
    assert!(Generator::builtin("triangular_nu", &Params { alpha: None, nu: Some(1) }).is_err());
    assert!(Generator::rel_info_alpha(1.0).is_err());
    assert!(Generator::rel_info_alpha(Number::exact(0, 1)).is_err());
    assert!(Generator::tsallis(-0.5).is_err());
    assert!(Generator::cressie_read(-1.0).is_err());
    for name in BUILTIN_NAMES {
        let p = Params { alpha: Some(Number::exact(1, 2)), nu: Some(2) };
        let g = Generator::builtin(name, &p).unwrap();
        assert!(g.eval(1.0).abs() < 1e-12, "{name}");
        assert!(g.convexity_attested());
    }
}

#[test]
fn tilde_examples() {
    let t = Generator::kl().tilde();
    for u in [0.1, 0.5, 2.0, 7.0] {
        assert!((t.eval(u) - (u - 1.0 - u.ln())).abs() < 1e-14);
    }
    assert!((Generator::reverse_kl().tilde().eval(2.0) - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-15);
    assert!((Generator::chi2().tilde().eval(3.0) - 4.0).abs() < 1e-15);
    let tv = Generator::total_variation().tilde();
    assert_eq!(tv.eval(0.5), 0.5);
}

#[test]
fn tilde_value_is_smooth_near_one() {
    let g = Generator::kl();
    for step in [1e-4f64, -3e-4, 9e-4, 1e-8] {
        let u = 1.0 + step;
        let t = u - 1.0;
        let series: f64 = (2..=9i32).map(|k| f64::powi(-t, k) / f64::from(k)).sum();
        assert!((g.tilde_value(u) - series).abs() <= 1e-14 * series, "t = {t}: {} vs {series}", g.tilde_value(u));
    }
}

#[test]
fn reverse_and_symmetrize_examples() {
    let r = Generator::kl().reverse();
    let s = Generator::kl().symmetrize();
    let c = Generator::chi2().reverse();
    let cs = Generator::chi2().symmetrize();
    for u in [0.05, 0.5, 1.5, 20.0] {
        assert!((r.eval(u) - u * u.ln()).abs() < 1e-12);
        assert!((s.eval(u) - (u - 1.0) * u.ln()).abs() < 1e-12);
        assert!((c.eval(u) - (1.0 - u).powi(2) / u).abs() < 1e-12);
        assert!((cs.eval(u) - (u - 1.0).powi(2) * (1.0 + 1.0 / u)).abs() < 1e-12);
    }
    assert_eq!(r.limit_at_zero(), ExtReal::ZERO);
    assert_eq!(r.slope_at_infinity(), ExtReal::Infinity);
    let c = s.coefficients().unwrap();
    assert_eq!(c, Generator::jeffreys().coefficients().unwrap());
}

#[test]
fn exact_derivatives_through_reverse() {
    // (u log u)''' at 1 is -1; via the reverse of -log u.
    let d = Generator::kl().reverse().derivatives_at_one().unwrap();
    assert_eq!(d[2], Number::exact(1, 1));
    assert_eq!(d[3], Number::exact(-1, 1));
    assert_eq!(d[4], Number::exact(2, 1));
}

#[test]
fn validate_derivatives_examples() {
    let grid = Grid::log_spaced(0.1, 10.0, 201).unwrap();
    for g in [Generator::kl(), Generator::chi2(), Generator::rel_info_alpha(1.5).unwrap()] {
        let report = g.validate_derivatives(&grid, 1e-6);
        assert!(report.pass, "{report:?}");
    }
    let chi2 = Generator::chi2();
    for u in [0.3, 4.0] {
        for k in 3..=6 {
            assert_eq!(chi2.deriv(k, u).unwrap(), 0.0);
        }
    }
}

#[test]
fn builtin_derivatives_match_finite_differences_on_standard_grid() {
    let grid = Grid::log_spaced(1e-3, 1e3, 301).unwrap();
    let params = Params { alpha: Some(Number::exact(1, 3)), nu: Some(3) };
    for name in BUILTIN_NAMES.iter().filter(|n| **n != "total_variation") {
        let g = Generator::builtin(name, &params).unwrap();
        let report = g.validate_derivatives(&grid, 1e-6);
        assert!(report.pass, "{name}: {:?}", report.orders);
    }
}

#[test]
fn numeric_generator_is_flagged() {
    let g = Generator::numeric("kl-numeric", |u: f64| -u.ln(), ExtReal::Infinity, ExtReal::ZERO).unwrap();
    assert_eq!(g.grade(), DerivativeGrade::NumericGrade);
    assert!(g.convexity_attested());
    let c = g.coefficients().unwrap();
    assert!((c.c2.to_f64() - 0.5).abs() < 1e-6);
    assert!((c.w2.to_f64() - 1.0 / 3.0).abs() < 1e-4);
    assert!(Generator::numeric("bad", |u: f64| u, ExtReal::ZERO, ExtReal::ZERO).is_err());
}

#[test]
fn expression_generators() {
    let g = Generator::from_expression("kl-expr", "u - 1 - log(u)").unwrap();
    assert!(g.convexity_attested());
    assert_eq!(g.coefficients().unwrap(), Generator::kl().coefficients().unwrap());
    assert_eq!(g.limit_at_zero(), ExtReal::Infinity);
    assert!(Generator::from_expression("bad", "u^2").is_err());
    assert!(Generator::from_expression("concave", "log(u)").is_err());
    let concave = Generator::from_expression("concave", "sqrt(u) - 1").unwrap();
    assert!(!concave.convexity_attested());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn catalogue() -> Vec<Generator> {
        let p = Params { alpha: Some(Number::exact(3, 2)), nu: Some(2) };
        BUILTIN_NAMES.iter().map(|n| Generator::builtin(n, &p).unwrap()).collect()
    }

    proptest! {
        #[test]
        fn reverse_is_an_involution(log_u in -13.8f64..13.8) {
            let u = log_u.exp();
            for g in catalogue() {
                let a = g.eval(u);
                let b = g.reverse().reverse().eval(u);
                prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{} at {u}", g.name());
            }
        }

        #[test]
        fn symmetrized_is_self_reversed(log_u in -13.8f64..13.8) {
            let u = log_u.exp();
            for g in catalogue() {
                let s = g.symmetrize();
                let a = s.eval(u);
                let b = u * s.eval(1.0 / u);
                prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{} at {u}", g.name());
            }
        }

        #[test]
        fn tilde_is_nonnegative(log_u in -13.8f64..13.8) {
            let u = log_u.exp();
            for g in catalogue() {
                prop_assert!(g.tilde().eval(u) >= -1e-12, "{} at {u}", g.name());
            }
        }
    }

    #[test]
    fn tilde_keeps_coefficients() {
        for g in catalogue().into_iter().filter(|g| g.max_order() >= 5) {
            assert_eq!(g.tilde().coefficients().ok(), g.coefficients().ok(), "{}", g.name());
        }
    }

    #[test]
    fn rel_info_alpha_grid_matches_closed_form() {
        for i in -20i32..=40 {
            let a = f64::from(i) * 0.05;
            if a.abs() < 1e-9 || (a - 1.0).abs() < 1e-9 {
                continue;
            }
            let alpha = Number::exact(i64::from(i), 20);
            let c = Generator::rel_info_alpha(alpha.clone()).unwrap().coefficients().unwrap();
            let (c2, w2, c4, w4) = c.floats();
            assert!((c2 - 0.5).abs() < 1e-12);
            assert!((w2 - (a + 1.0) / 3.0).abs() < 1e-12);
            assert!((c4 - (a + 1.0) * (2.0 - a) / 72.0).abs() < 1e-12);
            if let Some(w4) = w4 {
                assert!((w4 - (17.0 + 11.0 * a) / 45.0).abs() < 1e-12);
            } else {
                assert!(i == -20 || i == 40);
            }
        }
    }
}
