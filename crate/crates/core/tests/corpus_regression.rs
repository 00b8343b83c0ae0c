//! Published values for the shipped geometries.

use spin7_core::algebra::{load_algebra, AlgebraSpec};
use spin7_core::corpus::{canonical_form, corpus_algebra, corpus_geometries, phi_t, remark_b, PHI_T_VALUES};
use spin7_core::exterior::norm_sq;
use spin7_core::geometry::Geometry;
use spin7_core::spin7::project_lambda2;
use spin7_core::suite::{classify_fernandez, full_report};
use spin7_core::tensor::for_each_index;
use spin7_core::{Covector, Error, KForm};

const TOL: f64 = 1e-9;

fn geom(alg: &str, phi: &KForm) -> Geometry {
    Geometry::new(alg, &corpus_algebra(alg).unwrap(), phi).unwrap()
}

fn covector(pairs: &[(usize, f64)]) -> Covector {
    let mut a = [0.0; 8];
    for (i, v) in pairs {
        a[*i] = *v;
    }
    Covector::from_array(a)
}

#[test]
fn su2_squared_canonical_values() {
    let g = geom("su2su2u1u1", &canonical_form());
    assert!(g.frame_change.is_none());

    let t = KForm::from_terms(3, &[("123", 1.0), ("456", 1.0)]);
    assert!(g.torsion.distance(&t) < TOL, "T = {:?}", g.torsion);
    assert!(g.dt.max_abs() < TOL);

    let theta = covector(&[(3, -6.0 / 7.0), (4, 6.0 / 7.0)]);
    assert!((g.theta - theta).max_abs() < TOL, "theta = {:?}", g.theta);

    let dtheta = KForm::from_terms(2, &[("56", 6.0 / 7.0), ("12", -6.0 / 7.0)]);
    assert!(g.dtheta.distance(&dtheta) < TOL);
    let (p7, _) = project_lambda2(&g.dtheta, &g.phi).unwrap();
    assert!(p7.max_abs() < TOL);

    assert!(g.nabla_phi().max_abs() < TOL);
    assert!((g.ric + 7.0 / 6.0 * g.nabla_theta).amax() < TOL);

    assert!((norm_sq(&g.torsion, &g.metric) - 12.0).abs() < TOL);
    assert!((norm_sq(&KForm::from_covector(&g.theta), &g.metric) - 72.0 / 49.0).abs() < TOL);
    assert!((g.scal_g - g.scal - 3.0).abs() < TOL);
}

#[test]
fn su2_squared_family_lee_forms() {
    // the negated family members; the sign is fixed by the contraction identities
    let c = 6.0 / 7.0;
    let s = 6.0 * 2f64.sqrt() / 7.0;
    let expected = [covector(&[(0, -c), (7, c)]), covector(&[(0, -s)]), covector(&[(7, -s)])];
    for (t, want) in PHI_T_VALUES.iter().zip(expected) {
        let g = geom("su2su2u1u1", &phi_t(*t));
        assert!((g.theta - want).max_abs() < TOL, "t = {t}: {:?}", g.theta);
        assert!((norm_sq(&g.torsion, &g.metric) - 12.0).abs() < TOL);
    }
    let g = geom("su2su2u1u1", &remark_b());
    assert!((g.theta - covector(&[(0, -c), (7, c)])).max_abs() < TOL);
    assert!(g.dtheta.max_abs() < TOL);
}

#[test]
fn su3_is_flat_cartan() {
    let g = geom("su3", &canonical_form());
    let mut cartan = KForm::zero(3);
    for i in 0..8 {
        for j in i + 1..8 {
            for k in j + 1..8 {
                cartan = cartan + KForm::monomial(&[i, j, k], -g.alg.c(k, i, j));
            }
        }
    }
    assert!(g.torsion.distance(&cartan) < TOL);
    assert!(g.dt.max_abs() < TOL);
    let mut r = 0.0f64;
    for_each_index(4, |x| r = r.max(g.curvature.get(x[0], x[1], x[2], x[3]).abs()));
    assert!(r < TOL);

    let m = g.mirrored().unwrap();
    assert!((&m.torsion + &g.torsion).max_abs() < TOL);
    assert!(m.dt.max_abs() < TOL);
}

#[test]
fn su3_listed_equations_alone_fail_jacobi() {
    // the structure equations exactly as listed, before completing by ad-invariance
    let listed = r#"{"name": "su3-listed", "dim": 8, "convention": "structure_equations", "constants": [
        {"i": 1, "j": 2, "k": 3, "c": "-1"},
        {"i": 3, "j": 4, "k": 5, "c": "-1/2"},
        {"i": 1, "j": 5, "k": 6, "c": "1/2"},
        {"i": 2, "j": 4, "k": 6, "c": "-1/2"},
        {"i": 1, "j": 4, "k": 7, "c": "-1/2"},
        {"i": 2, "j": 5, "k": 7, "c": "-1/2"},
        {"i": 3, "j": 6, "k": 7, "c": "1/2"},
        {"i": 4, "j": 5, "k": 0, "c": "-sqrt(3)/2"},
        {"i": 6, "j": 7, "k": 0, "c": "-sqrt(3)/2"}
    ]}"#;
    let spec = AlgebraSpec::parse(listed).unwrap();
    assert!(matches!(load_algebra(&spec), Err(Error::Jacobi { .. })));
    corpus_algebra("su3").unwrap();
}

#[test]
fn every_corpus_geometry_passes() {
    for (id, alg, phi) in corpus_geometries() {
        let g = Geometry::new(id.clone(), &corpus_algebra(alg).unwrap(), &phi).unwrap();
        let r = full_report(&g, None, TOL).unwrap();
        assert!(r.all_passed(), "{id}: {:?}", r.failures().map(|e| &e.check_id).collect::<Vec<_>>());
        assert!(r.entries.len() >= 25);
    }
}

#[test]
fn fernandez_classes() {
    let lcb = "locally conformally balanced";
    let cases: [(&str, KForm, &[&str]); 5] = [
        ("abelian", canonical_form(), &["W0", "W1", "W2", lcb, "strong"]),
        ("su2su2u1u1", canonical_form(), &["strong"]),
        ("su2su2u1u1", remark_b(), &[lcb, "strong"]),
        ("su3", canonical_form(), &["strong"]),
        ("heisenberg", canonical_form(), &[lcb]),
    ];
    for (alg, phi, want) in cases {
        let got = classify_fernandez(&geom(alg, &phi), TOL).unwrap();
        assert_eq!(got, want, "{alg}");
    }
}
