use ambientforge_core::ambient::{build_ambient, levi_civita_ambient};
use ambientforge_core::data::{ambient_metric, h_algebra, initial_metric_quad, rho_var};
use ambientforge_core::exactnum::{rat, rho_ratio, RhoFunction, Ring};
use ambientforge_core::expr::eval_str;
use ambientforge_core::liealg::StructureConstants;
use ambientforge_core::projective::{
    builtin_table, compare_tables, project_ambient_connection, projection_inhomogeneities, torsion_defects,
    PRINTED_CHAINS,
};
use proptest::prelude::*;

fn projected() -> ambientforge_core::projective::ConnectionTable {
    let conn = levi_civita_ambient(&ambient_metric(), &h_algebra()).unwrap();
    project_ambient_connection(&conn)
}

#[test]
fn listed_values() {
    let t = builtin_table();
    assert_eq!(t.len(), 68);
    assert_eq!(t.get(2, 2, 6), RhoFunction::from_i64(-1));
    assert_eq!(t.get(3, 6, 1), rho_ratio(&[0, -3], &[64, 32]));
    assert_eq!(t.get(2, 2, 2), eval_str("1/(sqrt2*s)", &rho_var).unwrap());
    assert!(t.entries().all(|(_, v)| v.evaluate_rho0().is_ok()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    /// Re-derives a chain member from the printed chain: factor · ω = value.
    #[test]
    fn transcription(chain in 0usize..16, pick in 0usize..11) {
        let ch = &PRINTED_CHAINS[chain];
        let (num, den, a, b, c) = ch.members[pick % ch.members.len()];
        let value = eval_str(ch.value, &rho_var).unwrap();
        prop_assert_eq!(builtin_table().get(a, b, c).scale(&rat(num, den)), value);
    }
}

#[test]
fn projection_is_homogeneous_and_torsion_free() {
    let c = h_algebra();
    let conn = levi_civita_ambient(&ambient_metric(), &c).unwrap();
    assert!(projection_inhomogeneities(&conn).is_empty());
    assert!(torsion_defects(&project_ambient_connection(&conn), &c).is_empty());
}

#[test]
fn projection_against_printed_table() {
    let p = projected();
    assert_eq!(p.get(3, 6, 1), rho_ratio(&[0, -3], &[64, 32]));
    assert_eq!(p.get(2, 2, 6), RhoFunction::from_i64(-1));
    let diff = compare_tables(&builtin_table(), &p);
    let keys: Vec<_> = diff.iter().map(|d| d.key).collect();
    assert_eq!(keys, vec![(3, 2, 2), (3, 2, 3), (5, 3, 6)]);
    // ω_32^2 printed where torsion-freeness requires ω_32^3, and a stray ω_53^6
    assert_eq!(diff[0].left, diff[1].right);
    assert!(diff[2].right.is_zero());
    let printed_defects = torsion_defects(&builtin_table(), &h_algebra());
    assert_eq!(printed_defects, vec![(2, 3, 2), (2, 3, 3), (3, 5, 6)]);
}

#[test]
fn flat_cone_has_only_scaling_entries() {
    let g0 = initial_metric_quad();
    let g = g0.map(|q| RhoFunction::constant(q.clone()));
    let conn = levi_civita_ambient(&build_ambient(&g).unwrap(), &StructureConstants::abelian(5)).unwrap();
    let p = project_ambient_connection(&conn);
    for (&(a, b, c), v) in p.entries() {
        assert_eq!(c, 6, "unexpected ω_{a}{b}^{c}");
        assert_eq!(*v, -RhoFunction::constant(g0.get(a - 1, b - 1).clone()));
    }
    let nonzero = (0..5).flat_map(|a| (0..5).map(move |b| (a, b))).filter(|&(a, b)| !g0.get(a, b).is_zero()).count();
    assert_eq!(p.len(), nonzero);
}
