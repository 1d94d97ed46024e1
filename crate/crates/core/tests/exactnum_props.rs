use ambientforge_core::exactnum::{
    rat, rho_ratio, AmbientScalar, MultivarRational, PowerSeries, QuadExt, Rational, RhoDerivation, RhoFunction, Ring,
};
use ambientforge_core::expr::eval_str;
use ambientforge_core::data::rho_var;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn quad() -> impl Strategy<Value = QuadExt> {
    (rational(), rational()).prop_map(|(a, b)| QuadExt::new(a, b))
}

/// `p/q + (p'/q')·s` with denominators nonvanishing at ρ = 0.
fn rho_function() -> impl Strategy<Value = RhoFunction> {
    let poly = || prop::collection::vec(-6i64..6, 1..3);
    let den = || (1i64..5, 0i64..3).prop_map(|(a, b)| vec![a, b]);
    (poly(), den(), poly(), den()).prop_map(|(n1, d1, n2, d2)| rho_ratio(&n1, &d1) + rho_ratio(&n2, &d2) * RhoFunction::s())
}

fn field_axioms<R: Ring>(x: &R, y: &R, z: &R) {
    assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
    assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
    assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
    assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z.clone());
    assert_eq!(x.clone() + R::zero(), x.clone());
    assert_eq!(x.clone() * R::one(), x.clone());
    assert!((x.clone() - x.clone()).is_zero());
    if !x.is_zero() {
        assert_eq!(x.clone() * x.try_inv().expect("nonzero is a unit"), R::one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_field(x in rational(), y in rational(), z in rational()) {
        field_axioms(&x, &y, &z);
    }

    #[test]
    fn quadratic_field(x in quad(), y in quad(), z in quad()) {
        field_axioms(&x, &y, &z);
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
    }

    #[test]
    fn rho_function_field(x in rho_function(), y in rho_function(), z in rho_function()) {
        field_axioms(&x, &y, &z);
    }

    #[test]
    fn leibniz(x in rho_function(), y in rho_function()) {
        let lhs = (x.clone() * y.clone()).d_rho();
        prop_assert_eq!(lhs, x.d_rho() * y.clone() + x * y.d_rho());
    }

    #[test]
    fn taylor_is_multiplicative(x in rho_function(), y in rho_function()) {
        let n = 6;
        let prod = (x.clone() * y.clone()).taylor_expand(n).unwrap();
        prop_assert_eq!(prod, x.taylor_expand(n).unwrap() * y.taylor_expand(n).unwrap());
    }

    #[test]
    fn taylor_constant_term_is_value(x in rho_function()) {
        prop_assert_eq!(x.taylor_expand(3).unwrap().coeff(0), x.evaluate_rho0().unwrap());
    }

    #[test]
    fn taylor_commutes_with_derivative(x in rho_function()) {
        let d = x.d_rho().taylor_expand(4).unwrap();
        prop_assert_eq!(d, x.taylor_expand(5).unwrap().derivative());
    }

    #[test]
    fn display_round_trips(x in rho_function(), c in quad()) {
        let y = x.scale_quad(&c);
        prop_assert_eq!(eval_str(&y.to_string(), &rho_var).unwrap(), y);
    }

    #[test]
    fn grading_adds(k in -3i32..4, l in -3i32..4, x in rho_function(), y in rho_function()) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let p = AmbientScalar::monomial(k, x) * AmbientScalar::monomial(l, y);
        prop_assert_eq!(p.homogeneous_degree(), Some(k + l));
        if k + l != 0 {
            prop_assert_eq!(p.d_t().homogeneous_degree(), Some(k + l - 1));
        }
    }
}

#[test]
fn pole_at_zero_is_reported() {
    let f = rho_ratio(&[1], &[0, 1]);
    assert!(f.evaluate_rho0().is_err());
    assert!(f.taylor_expand(2).is_err());
}

#[test]
fn s_series_squares_to_two_plus_rho() {
    let s = PowerSeries::sqrt_two_plus_rho(8);
    let sq = &s * &s;
    assert_eq!(sq, PowerSeries::with_order(vec![QuadExt::from_i64(2), QuadExt::one()], 8));
}

#[test]
fn expression_grammar() {
    let v = eval_str("sqrt2*s*(2 + rho)^-1", &rho_var).unwrap();
    let w = RhoFunction::sqrt2() * RhoFunction::s() * rho_ratio(&[1], &[2, 1]);
    assert_eq!(v, w);
    assert!(eval_str("1/(rho - rho)", &rho_var).is_err());
    assert!(eval_str("q + 1", &rho_var).is_err());
}

#[test]
fn multivariate_normal_form() {
    let x = MultivarRational::var(0);
    let y = MultivarRational::var(1);
    let f = &(&x * &y) * &(&x + &y).inv().unwrap();
    let g = &(&(&x * &x) * &y) * &(&(&x * &x) + &(&x * &y)).inv().unwrap();
    assert_eq!(f, g);
}
