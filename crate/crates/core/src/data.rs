//! Built-in data for the left-invariant structure on `H`: brackets, the
//! representative metric, the closed-form ambient metric and its parallel
//! 3-form. Indices in the tables are 1-based; frame index 0 is `t` and 6 is ρ.

use alloc::vec::Vec;

use crate::ambient::{build_ambient, AmbientMetric, ThreeForm};
use crate::exactnum::{int, AmbientScalar, QuadExt, Rational, Ring, RhoFunction};
use crate::expr::eval_str;
use crate::liealg::{StructureConstants, SymMatrix};

/// `[E_a, E_b] = k·E_c` as `(a, b, c, k)`.
pub const H_BRACKETS: &[(usize, usize, usize, i64)] =
    &[(2, 4, 1, 1), (2, 5, 2, -1), (3, 4, 2, 1), (3, 5, 3, -2), (4, 5, 4, 1)];

/// Upper-triangle entries of the representative metric at ρ = 0.
pub const INITIAL_METRIC: &[(usize, usize, i64)] =
    &[(1, 1, -2), (1, 3, -1), (2, 2, 1), (2, 5, 2), (3, 4, 2)];

/// Upper-triangle entries `g_ab(ρ)` of the closed-form ambient metric.
pub const CLOSED_FORM: &[(usize, usize, &str)] = &[
    (1, 1, "-4/(2 + rho)"),
    (1, 3, "-(4 + 3*rho)/(2*(2 + rho))"),
    (2, 2, "1"),
    (2, 5, "sqrt2*s"),
    (3, 3, "-rho^2/(16*(2 + rho))"),
    (3, 4, "sqrt2*s"),
];

/// Components `Φ_ijk`, `i < j < k`, of the parallel 3-form.
pub const THREE_FORM: &[(usize, usize, usize, &str)] = &[
    (0, 1, 2, "-6*sqrt2*t^2"),
    (0, 1, 6, "-2/s*t^2"),
    (0, 2, 3, "-(8 + 3*rho)/(2*sqrt2)*t^2"),
    (0, 2, 4, "-4*s*t^2"),
    (0, 3, 5, "rho*s*t^2"),
    (0, 3, 6, "(8 + 3*rho)/(4*s)*t^2"),
    (1, 2, 5, "2*sqrt2*t^3"),
    (1, 3, 4, "-2*sqrt2*t^3"),
    (2, 3, 5, "(8 + 3*rho)/(2*sqrt2)*t^3"),
    (2, 3, 6, "-1/(2*sqrt2)*t^3"),
    (3, 5, 6, "s*t^3"),
];

/// Variables of functions of ρ: `rho`, `s = √(2+ρ)`, `sqrt2`.
pub fn rho_var(name: &str) -> Option<RhoFunction> {
    match name {
        "rho" => Some(RhoFunction::rho()),
        "s" => Some(RhoFunction::s()),
        "sqrt2" => Some(RhoFunction::sqrt2()),
        _ => None,
    }
}

/// Variables of ambient scalars: those of [`rho_var`] plus `t`.
pub fn ambient_var(name: &str) -> Option<AmbientScalar> {
    match name {
        "t" => Some(AmbientScalar::monomial(1, RhoFunction::one())),
        _ => rho_var(name).map(AmbientScalar::coeff0),
    }
}

pub fn h_algebra() -> StructureConstants {
    let mut sc = StructureConstants::abelian(5);
    for &(a, b, c, k) in H_BRACKETS {
        sc.set(a - 1, b - 1, c - 1, int(k));
    }
    sc
}

pub fn initial_metric() -> SymMatrix<Rational> {
    let e: Vec<_> = INITIAL_METRIC.iter().map(|&(a, b, v)| (a - 1, b - 1, int(v))).collect();
    SymMatrix::from_upper(5, &e)
}

pub fn initial_metric_quad() -> SymMatrix<QuadExt> {
    initial_metric().map(|q| QuadExt::rational(q.clone()))
}

pub fn closed_form_metric() -> SymMatrix<RhoFunction> {
    let e: Vec<_> = CLOSED_FORM
        .iter()
        .map(|&(a, b, src)| (a - 1, b - 1, eval_str(src, &rho_var).expect("built-in expression")))
        .collect();
    SymMatrix::from_upper(5, &e)
}

pub fn ambient_metric() -> AmbientMetric<RhoFunction> {
    build_ambient(&closed_form_metric()).expect("closed form is invertible")
}

pub fn three_form() -> ThreeForm<RhoFunction> {
    let mut phi = ThreeForm::zero(7);
    for &(i, j, k, src) in THREE_FORM {
        phi.set(i, j, k, eval_str(src, &ambient_var).expect("built-in expression"));
    }
    phi
}
