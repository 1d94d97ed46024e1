use ambientforge_core::ambient::stabilizer_dim;
use ambientforge_core::data::{ambient_metric, three_form};
use ambientforge_core::exactnum::{rat, Rational, Ring};
use ambientforge_core::liealg::signature;
use ambientforge_core::octonion::{
    commutator, cross_product, derivation_algebra_dim, in_span, is_skew_for, trace_form, trace_form_gram, FiniteAlgebra,
    ImaginaryElement, SplitOctonion,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..12, 1i64..4).prop_map(|(n, d)| rat(n, d))
}

fn octonion() -> impl Strategy<Value = SplitOctonion> {
    prop::collection::vec(rational(), 8).prop_map(|c| SplitOctonion::from_components(&c))
}

fn imaginary() -> impl Strategy<Value = ImaginaryElement> {
    prop::collection::vec(rational(), 7).prop_map(ImaginaryElement::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn alternative_laws(x in octonion(), y in octonion()) {
        prop_assert_eq!(x.mul(&x.mul(&y)), x.mul(&x).mul(&y));
        prop_assert_eq!(y.mul(&x).mul(&x), y.mul(&x.mul(&x)));
    }

    #[test]
    fn cross_product_is_antisymmetric(x in imaginary(), y in imaginary()) {
        prop_assert!(cross_product(&x, &x).is_zero());
        prop_assert!(cross_product(&x, &y).add(&cross_product(&y, &x)).is_zero());
    }

    #[test]
    fn trace_form_is_invariant(x in imaginary(), y in imaginary()) {
        prop_assert!(trace_form(&x, &cross_product(&x, &y)).is_zero());
        prop_assert_eq!(trace_form(&x, &y), trace_form(&y, &x));
    }

    #[test]
    fn trace_form_is_the_norm(x in imaginary()) {
        prop_assert_eq!(trace_form(&x, &x), x.to_octonion().norm());
    }
}

#[test]
fn split_structure_witness() {
    let mut e = vec![Rational::zero(); 8];
    e[0] = Rational::one();
    let e1 = SplitOctonion::from_components(&e);
    let e2 = SplitOctonion::one().sub(&e1);
    assert_eq!(e1.mul(&e1), e1);
    assert_eq!(e2.mul(&e2), e2);
    assert_eq!(e1.mul(&e2), SplitOctonion::zero());
}

#[test]
fn cross_product_table() {
    // frozen from the imaginary-part-of-product oracle; (i, j, k, num, den)
    let golden: &[(usize, usize, usize, i64, i64)] = &[
        (0, 1, 1, 1, 1),
        (0, 2, 2, 1, 1),
        (0, 3, 3, 1, 1),
        (0, 4, 4, -1, 1),
        (0, 5, 5, -1, 1),
        (0, 6, 6, -1, 1),
        (1, 2, 6, 1, 1),
        (1, 3, 5, -1, 1),
        (1, 4, 0, 1, 2),
        (2, 3, 4, 1, 1),
        (2, 5, 0, 1, 2),
        (3, 6, 0, 1, 2),
        (4, 5, 3, -1, 1),
        (4, 6, 2, 1, 1),
        (5, 6, 1, -1, 1),
    ];
    let mut seen = 0;
    for i in 0..7 {
        for j in (i + 1)..7 {
            let c = cross_product(&ImaginaryElement::basis(i), &ImaginaryElement::basis(j));
            for k in 0..7 {
                let v = &c.components()[k];
                if v.is_zero() {
                    continue;
                }
                let hit = golden.iter().find(|g| (g.0, g.1, g.2) == (i, j, k)).unwrap_or_else(|| panic!("unexpected {i}×{j}→{k}"));
                assert_eq!(v, &rat(hit.3, hit.4), "{i}×{j}→{k}");
                seen += 1;
            }
        }
    }
    assert_eq!(seen, golden.len());
}

#[test]
fn gram_signature_is_three_four() {
    assert_eq!(signature(&trace_form_gram()).unwrap(), (3, 4));
}

#[test]
fn derivation_algebra() {
    let alg = FiniteAlgebra::split_octonions();
    let ders = alg.derivations();
    assert_eq!(ders.len(), 14);
    let gram = trace_form_gram();
    for d in &ders {
        assert!(alg.is_derivation(d));
        assert!(is_skew_for(d, &gram));
    }
    for a in &ders {
        for b in &ders {
            assert!(in_span(&ders, &commutator(a, b)));
        }
    }
}

#[test]
fn analogue_algebras() {
    let q = FiniteAlgebra::quaternions();
    let ders = q.derivations();
    assert_eq!(ders.len(), 3);
    assert!(ders.iter().all(|d| q.is_derivation(d)));
    assert_eq!(FiniteAlgebra::rational_pair().derivation_dim(), 0);
}

#[test]
fn corrupted_table_loses_symmetry() {
    let mut alg = FiniteAlgebra::split_octonions();
    let v = alg.structure(2, 3, 7).clone();
    alg.set_structure(2, 3, 7, v + Rational::one());
    assert!(alg.derivation_dim() < 14);
}

#[test]
fn matches_three_form_stabilizer() {
    let (stab, _) = stabilizer_dim(&ambient_metric(), &three_form()).unwrap();
    assert_eq!(derivation_algebra_dim(), stab);
}
