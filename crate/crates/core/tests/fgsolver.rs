use ambientforge_core::data::{closed_form_metric, h_algebra, initial_metric_quad};
use ambientforge_core::exactnum::{int, PowerSeries, QuadExt, Ring};
use ambientforge_core::fgsolver::{
    consistency_check, fg_residual, linearization_by_residual, linearization_closed_form, solve_next_order, solve_to_order,
    SeriesMetric,
};
use ambientforge_core::liealg::{StructureConstants, SymMatrix};
use ambientforge_core::Error;
use proptest::prelude::*;

fn solved(order: usize) -> SeriesMetric {
    solve_to_order(&h_algebra(), &initial_metric_quad(), order).unwrap()
}

#[test]
fn reproduces_closed_form() {
    let g = solved(8);
    let gold = SeriesMetric::from_closed_form(&closed_form_metric(), 8).unwrap();
    assert_eq!(g, gold);
    let varying = [(0, 0), (0, 2), (1, 4), (2, 2), (2, 3)];
    for i in 0..5 {
        for j in i..5 {
            let constant = (1..=8).all(|k| g.get(i, j).coeff(k).is_zero());
            assert_eq!(constant, !varying.contains(&(i, j)), "entry ({}, {})", i + 1, j + 1);
        }
    }
}

#[test]
fn first_order_coefficients() {
    let g = solved(1);
    assert_eq!(g.get(0, 0).coeff(1), QuadExt::one());
    assert_eq!(g.get(2, 2).coeff(1), QuadExt::zero());
}

#[test]
fn remaining_equations_hold() {
    let report = consistency_check(&h_algebra(), &solved(8)).unwrap();
    assert!(report.precondition_met());
    assert!(report.consistent());
    assert_eq!(report.rab.vanishes_through, 7);
    assert_eq!(report.rainf.vanishes_through, 7);
    assert_eq!(report.rinfinf.representable, 6);
}

#[test]
fn linearization_matches_residual_differences() {
    let c = h_algebra();
    for m in 1..=4 {
        let g = solved(m);
        assert_eq!(linearization_by_residual(&c, &g, m).unwrap(), linearization_closed_form(&g, m), "order {m}");
    }
}

#[test]
fn step_extends_previous_solution() {
    let c = h_algebra();
    let g3 = solved(3);
    let g4 = solve_next_order(&c, &g3, 4).unwrap();
    assert_eq!(g4, solved(4));
}

#[test]
fn order_zero_is_rejected() {
    assert!(solve_to_order(&h_algebra(), &initial_metric_quad(), 0).is_err());
}

#[test]
fn even_dimension_is_rejected() {
    let g0 = SymMatrix::from_upper(4, &(0..4).map(|i| (i, i, QuadExt::one())).collect::<Vec<_>>());
    assert!(matches!(solve_to_order(&StructureConstants::abelian(4), &g0, 2), Err(Error::EvenDimension(4))));
}

#[test]
fn flat_representative_stays_flat() {
    let g0 = SymMatrix::from_upper(
        3,
        &[(0, 0, QuadExt::one()), (1, 1, QuadExt::one()), (2, 2, QuadExt::from_i64(-1))],
    );
    let g = solve_to_order(&StructureConstants::abelian(3), &g0, 5).unwrap();
    assert_eq!(g, SeriesMetric::constant(&g0, 5).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Changing one Taylor coefficient of the solution breaks the Ricci
    /// equations at the order that determined it.
    #[test]
    fn solution_is_unique(m in 1usize..6, i in 0usize..5, j in 0usize..5, num in 1i64..7) {
        let g = solved(6);
        let mut entries = g.matrix().clone();
        let mut bump = vec![QuadExt::zero(); m + 1];
        bump[m] = QuadExt::rational(int(num));
        let delta = PowerSeries::with_order(bump, 6);
        entries[(i, j)] = entries[(i, j)].clone() + delta.clone();
        if i != j {
            entries[(j, i)] = entries[(j, i)].clone() + delta;
        }
        let perturbed = SeriesMetric::new(entries, 6).unwrap();
        let r = fg_residual(&h_algebra(), &perturbed).unwrap();
        let broken = (0..5).any(|a| (0..5).any(|b| !r.rab[(a, b)].coeff(m - 1).is_zero()))
            || (m >= 2 && !r.rinfinf.coeff(m - 2).is_zero());
        prop_assert!(broken);
    }
}
