use ambientforge_core::data::h_algebra;
use ambientforge_core::distribution::{
    check_frame_realization, e0_plane, extra_symmetry, flag_ranks, is_infinitesimal_symmetry, l_frame, lie_bracket,
    monge_distribution, monge_function, right_invariant_fields, symmetry_algebra_closure, symmetry_fields,
    ClosureError, CoordVectorField, Distribution, P, R, X, Y,
};
use ambientforge_core::exactnum::{int, MultivarRational, Ring};
use proptest::prelude::*;

fn e0_distribution() -> Distribution {
    let frame = l_frame();
    Distribution::new(e0_plane().iter().map(|c| CoordVectorField::combination(&frame, c)).collect())
}

#[test]
fn flag_ranks_of_both_presentations() {
    for d in [e0_distribution(), monge_distribution(&monge_function())] {
        let f = flag_ranks(&d);
        assert_eq!(f.generic, (2, 3, 5));
        assert_eq!(f.sample, Some((2, 3, 5)));
        assert!(!f.rank_drop);
    }
}

#[test]
fn integrable_plane_is_not_235() {
    let d = Distribution::new(vec![CoordVectorField::coord(X), CoordVectorField::coord(P)]);
    assert_eq!(flag_ranks(&d).generic, (2, 2, 2));
}

#[test]
fn frame_realizes_h() {
    let report = check_frame_realization(&h_algebra(), &l_frame(), &e0_plane(), &monge_distribution(&monge_function())).unwrap();
    assert!(report.passed(), "{:?}", report);
}

#[test]
fn frame_detects_wrong_bracket() {
    let mut c = h_algebra();
    c.set(1, 3, 0, int(2));
    let report = check_frame_realization(&c, &l_frame(), &e0_plane(), &monge_distribution(&monge_function())).unwrap();
    assert_eq!(report.bracket_mismatches, vec![(1, 3)]);
}

#[test]
fn symmetries_preserve_the_distribution() {
    let d = monge_distribution(&monge_function());
    for (i, r) in symmetry_fields().iter().enumerate() {
        assert!(is_infinitesimal_symmetry(r, &d), "R{}", i + 1);
    }
    assert!(!is_infinitesimal_symmetry(&CoordVectorField::coord(R), &d));
}

#[test]
fn symmetry_algebra_closes() {
    let c = symmetry_algebra_closure(&symmetry_fields()).unwrap();
    assert_eq!(c.dim(), 6);
    assert!(c.check_jacobi());
    // [R5, R6] = 2 R6 and [R2, R6] = −R4
    assert_eq!(c.get(4, 5, 5), &int(2));
    assert_eq!(c.get(1, 5, 3), &int(-1));
}

#[test]
fn right_invariant_fields_give_opposite_algebra() {
    let c = symmetry_algebra_closure(&right_invariant_fields()).unwrap();
    let h = h_algebra();
    for a in 0..5 {
        for b in 0..5 {
            for k in 0..5 {
                assert_eq!(c.get(a, b, k), &-h.get(a, b, k).clone());
            }
        }
    }
}

#[test]
fn closure_errors() {
    let mut dependent = symmetry_fields();
    dependent.push(dependent[0].clone());
    assert_eq!(symmetry_algebra_closure(&dependent), Err(ClosureError::Dependent));
    let open = vec![CoordVectorField::coord(Y), extra_symmetry()];
    assert!(matches!(symmetry_algebra_closure(&open), Err(ClosureError::NotClosed { .. })));
}

fn polynomial_field() -> impl Strategy<Value = CoordVectorField> {
    let monomial = (-3i64..4, 0usize..5, 0u32..3);
    prop::collection::vec(prop::collection::vec(monomial, 0..3), 5).prop_map(|comps| {
        let parts: Vec<MultivarRational> = comps
            .into_iter()
            .map(|terms| {
                terms.into_iter().fold(MultivarRational::zero(), |acc, (c, v, e)| {
                    let mut t = MultivarRational::constant(int(c));
                    for _ in 0..e {
                        t = &t * &MultivarRational::var(v);
                    }
                    &acc + &t
                })
            })
            .collect();
        CoordVectorField::new(parts.try_into().unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brackets_satisfy_jacobi(x in polynomial_field(), y in polynomial_field(), z in polynomial_field()) {
        let j = lie_bracket(&x, &lie_bracket(&y, &z))
            .add(&lie_bracket(&y, &lie_bracket(&z, &x)))
            .add(&lie_bracket(&z, &lie_bracket(&x, &y)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric(x in polynomial_field(), y in polynomial_field()) {
        prop_assert!(lie_bracket(&x, &y).add(&lie_bracket(&y, &x)).is_zero());
    }
}
