use ambientforge_core::ambient::{
    build_ambient, check_parallel_form, check_preambient, curvature_endomorphisms, curvature_endomorphisms_exact,
    holonomy_span, is_skew, levi_civita_ambient, metric_parallel_violations, parallel_form_violations, ricci_ambient,
    riemann_ambient, stabilizer_dim, torsion_violations, Witness,
};
use ambientforge_core::data::{ambient_metric, closed_form_metric, h_algebra, initial_metric_quad, three_form};
use ambientforge_core::exactnum::{rat, AmbientScalar, PowerSeries, RhoFunction, Ring};
use ambientforge_core::liealg::SymMatrix;

fn witness(derivatives: &[usize], pair: (usize, usize)) -> Witness {
    Witness { derivatives: derivatives.to_vec(), pair }
}

/// Ambient-normal-form metric of the ρ-independent extension of `g_E(0)`;
/// not Ricci-flat, so its curvature exercises the identities nontrivially.
fn naive_extension() -> SymMatrix<RhoFunction> {
    initial_metric_quad().map(|q| RhoFunction::constant(q.clone()))
}

#[test]
fn ricci_flat() {
    let ric = ricci_ambient(&ambient_metric(), &h_algebra()).unwrap();
    let mut independent = 0;
    for x in 0..7 {
        for y in x..7 {
            assert!(ric[(x, y)].is_zero(), "Ric({x},{y}) = {}", ric[(x, y)]);
            independent += 1;
        }
    }
    assert_eq!(independent, 28);
}

#[test]
fn naive_extension_is_not_ricci_flat() {
    let gt = build_ambient(&naive_extension()).unwrap();
    let ric = ricci_ambient(&gt, &h_algebra()).unwrap();
    assert!(!ric.is_zero());
}

#[test]
fn normal_form_and_straightness() {
    let report = check_preambient(&ambient_metric(), &h_algebra(), &initial_metric_quad()).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert!(ambient_metric().homogeneity_violations().is_empty());
}

#[test]
fn levi_civita_properties() {
    let c = h_algebra();
    for g in [closed_form_metric(), naive_extension()] {
        let gt = build_ambient(&g).unwrap();
        let conn = levi_civita_ambient(&gt, &c).unwrap();
        assert!(torsion_violations(&conn, &c).is_empty());
        assert!(metric_parallel_violations(&gt, &conn).is_empty());
    }
}

#[test]
fn first_bianchi() {
    let c = h_algebra();
    let gt = build_ambient(&naive_extension()).unwrap();
    let riem = riemann_ambient(&levi_civita_ambient(&gt, &c).unwrap(), &c);
    assert!(!riem.is_zero());
    for d in 0..7 {
        for x in 0..7 {
            for y in 0..7 {
                for z in 0..7 {
                    let s = riem.get(d, &[x, y, z]).clone() + riem.get(d, &[y, z, x]).clone() + riem.get(d, &[z, x, y]).clone();
                    assert!(s.is_zero(), "Bianchi fails at {d};{x}{y}{z}");
                }
            }
        }
    }
}

#[test]
fn curvature_is_homogeneous() {
    let c = h_algebra();
    let gt = build_ambient(&naive_extension()).unwrap();
    let riem = riemann_ambient(&levi_civita_ambient(&gt, &c).unwrap(), &c);
    let w = |x: usize| if x == 0 { 0 } else { 1 };
    for d in 0..7 {
        for x in 0..7 {
            for y in 0..7 {
                for z in 0..7 {
                    let v = riem.get(d, &[x, y, z]);
                    if !v.is_zero() {
                        // ∂t scales by 1/s under dilation, the other frame fields are invariant
                        let expected = w(x) + w(y) + w(z) - w(d) - 2;
                        assert_eq!(v.homogeneous_degree(), Some(expected), "R^{d}_{{{x},{y}{z}}}");
                    }
                }
            }
        }
    }
}

#[test]
fn three_form_is_parallel() {
    let c = h_algebra();
    assert!(check_parallel_form(&ambient_metric(), &c, &three_form()).unwrap());
}

#[test]
fn perturbed_three_form_is_not_parallel() {
    let c = h_algebra();
    let gt = ambient_metric();
    let mut phi = three_form();
    let bumped = phi.eval(1, 2, 5).scale(&rat(2, 1));
    phi.set(1, 2, 5, bumped);
    let conn = levi_civita_ambient(&gt, &c).unwrap();
    assert!(!parallel_form_violations(&conn, &phi).is_empty());
}

#[test]
fn stabilizer_is_fourteen_dimensional() {
    assert_eq!(stabilizer_dim(&ambient_metric(), &three_form()).unwrap(), (14, true));
}

#[test]
fn holonomy_rank() {
    let report = holonomy_span(&ambient_metric(), &h_algebra(), 1).unwrap();
    assert_eq!(report.ranks_by_depth, vec![6, 14]);
    assert_eq!(report.rank, 14);
    assert!(report.so_check);
    let depth0: Vec<Witness> = report.witnesses.iter().filter(|w| w.derivatives.is_empty()).cloned().collect();
    let expected: Vec<Witness> = [(1, 2), (1, 4), (1, 6), (2, 3), (2, 4), (2, 6)].iter().map(|&p| witness(&[], p)).collect();
    assert_eq!(depth0, expected);
}

#[test]
fn jet_and_exact_curvature_agree() {
    let gt = ambient_metric();
    let c = h_algebra();
    let exact = curvature_endomorphisms_exact(&gt, &c).unwrap();
    let jet = curvature_endomorphisms::<PowerSeries>(&gt.jet(3).unwrap(), &c, 0).unwrap();
    assert_eq!(exact, jet);
    let gu = gt.at_basepoint().unwrap();
    assert!(exact.values().all(|e| is_skew(e, &gu)));
}

#[test]
fn three_form_components_are_homogeneous() {
    let phi = three_form();
    for (&(i, j, k), v) in phi.components() {
        let deg = [i, j, k].iter().filter(|&&x| x != 0).count() as i32;
        assert_eq!(v.homogeneous_degree(), Some(deg), "Φ_{i}{j}{k}");
    }
    assert_eq!(phi.eval(0, 0, 1), AmbientScalar::zero());
}
