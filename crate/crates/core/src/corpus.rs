//! Shipped algebras and Spin(7) 4-forms.

use std::f64::consts::FRAC_PI_4;

use crate::algebra::{load_algebra, AlgebraSpec, LieAlgebra8};
use crate::error::{Error, Result};
use crate::exterior::{hodge_star, interior_product, wedge, Covector, FrameMetric, KForm};
use crate::spin7::canonical_phi;

const ABELIAN: &str = include_str!("../corpus/algebras/abelian.json");
const SU2SU2U1U1: &str = include_str!("../corpus/algebras/su2su2u1u1.json");
const SU3: &str = include_str!("../corpus/algebras/su3.json");
const HEISENBERG: &str = include_str!("../corpus/algebras/heisenberg.json");

/// Name, embedded JSON and one-line provenance of each shipped algebra.
pub const ALGEBRAS: [(&str, &str, &str); 4] = [
    ("abelian", ABELIAN, "trivial baseline, the flat torus T^8"),
    ("heisenberg", HEISENBERG, "smoke entry, [e_2, e_3] = e_1, non-closed torsion"),
    ("su2su2u1u1", SU2SU2U1U1, "U(1) x SU(2) x SU(2) x U(1), de_1 = e_23 and cyclic"),
    ("su3", SU3, "SU(3), Gell-Mann structure constants with e_0 for the eighth generator"),
];

pub fn algebra_json(name: &str) -> Option<&'static str> {
    ALGEBRAS.iter().find(|(n, _, _)| *n == name).map(|(_, j, _)| *j)
}

pub fn corpus_algebra(name: &str) -> Result<LieAlgebra8> {
    let json = algebra_json(name).ok_or_else(|| Error::UnknownCorpus(name.to_string()))?;
    load_algebra(&AlgebraSpec::parse(json)?)
}

/// Stable listing, sorted by name.
pub fn corpus_listing() -> Vec<String> {
    let mut out: Vec<String> = ALGEBRAS.iter().map(|(n, _, p)| format!("{n} — {p}")).collect();
    out.push("structure canonical — the standard Cayley 4-form on R^8".into());
    out.push(
        "structure phi_t — -(e_0 ^ p_t + *7 p_t) from the SU(2) x SU(2) x U(1) G2 family, t in {0, pi/4, 3pi/4}".into(),
    );
    out.push("structure remark_b — 4-form built from three 2-forms F_1, F_2, F_3".into());
    out
}

pub fn canonical_form() -> KForm {
    canonical_phi().phi().clone()
}

/// 7-dimensional Hodge star on forms in `e_1 … e_7`: `⋆⁷β = (−1)^k e_0⌟⋆⁸β`.
pub fn star7(beta: &KForm) -> Result<KForm> {
    if beta.terms().any(|(idx, _)| idx.contains(0)) {
        return Err(Error::NotSpin7("7-dimensional star applied to a form containing e_0".into()));
    }
    let m = FrameMetric::identity();
    let sign = if beta.degree().is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(interior_product(&Covector::basis(0), &hodge_star(beta, &m), &m)?.scale(sign))
}

/// The G2 3-form `F∧e_7 + cos t ψ + sin t ψ̂`.
pub fn g2_form(t: f64) -> KForm {
    let f = KForm::from_terms(2, &[("14", 1.0), ("25", 1.0), ("36", -1.0)]);
    let psi = KForm::from_terms(3, &[("123", 1.0), ("156", 1.0), ("246", -1.0), ("345", -1.0)]);
    let psi_hat = KForm::from_terms(3, &[("456", 1.0), ("234", 1.0), ("135", -1.0), ("126", -1.0)]);
    let e7 = KForm::from_terms(1, &[("7", 1.0)]);
    wedge(&f, &e7).expect("degree 3") + psi.scale(t.cos()) + psi_hat.scale(t.sin())
}

/// `−(e_0∧p_t + ⋆⁷p_t)`.
///
/// The overall sign makes the form satisfy the contraction identities with
/// the `−4φ` term; with the opposite sign the two-index identity picks up
/// `+4φ` and the torsion connection no longer preserves the form.
pub fn phi_t(t: f64) -> KForm {
    let p = g2_form(t);
    let e0 = KForm::from_terms(1, &[("0", 1.0)]);
    let phi = wedge(&e0, &p).expect("degree 4") + star7(&p).expect("no e_0 factor");
    -phi.pruned(1e-15)
}

/// `−½(F_1∧F_1 + F_2∧F_2 − F_3∧F_3)`; sign as in [`phi_t`].
pub fn remark_b() -> KForm {
    let f1 = KForm::from_terms(2, &[("01", 1.0), ("23", 1.0), ("45", 1.0), ("67", 1.0)]);
    let f2 = KForm::from_terms(2, &[("02", 1.0), ("13", -1.0), ("46", 1.0), ("57", -1.0)]);
    let f3 = KForm::from_terms(2, &[("03", 1.0), ("12", 1.0), ("47", 1.0), ("56", 1.0)]);
    let sq = |f: &KForm| wedge(f, f).expect("degree 4");
    (sq(&f1) + sq(&f2) - sq(&f3)).scale(-0.5)
}

pub const PHI_T_VALUES: [f64; 3] = [0.0, FRAC_PI_4, 3.0 * FRAC_PI_4];

pub fn is_corpus_t(t: f64) -> bool {
    PHI_T_VALUES.iter().any(|v| (v - t).abs() < 1e-12)
}

/// Every shipped (algebra, structure) pair: `(id, algebra name, 4-form)`.
pub fn corpus_geometries() -> Vec<(String, &'static str, KForm)> {
    let mut out = vec![
        ("abelian/canonical".to_string(), "abelian", canonical_form()),
        ("heisenberg/canonical".to_string(), "heisenberg", canonical_form()),
        ("su2su2u1u1/canonical".to_string(), "su2su2u1u1", canonical_form()),
    ];
    for (label, t) in ["0", "pi/4", "3pi/4"].iter().zip(PHI_T_VALUES) {
        out.push((format!("su2su2u1u1/phi_t={label}"), "su2su2u1u1", phi_t(t)));
    }
    out.push(("su2su2u1u1/remark_b".to_string(), "su2su2u1u1", remark_b()));
    out.push(("su3/canonical".to_string(), "su3", canonical_form()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::norm_sq;
    use crate::geometry::Geometry;
    use crate::spin7::validate_phi;

    fn geom(alg: &str, phi: &KForm) -> Geometry {
        Geometry::new(alg, &corpus_algebra(alg).unwrap(), phi).unwrap()
    }

    #[test]
    fn all_algebras_load() {
        for (name, _, _) in ALGEBRAS {
            corpus_algebra(name).unwrap();
        }
        assert!(matches!(corpus_algebra("nope"), Err(Error::UnknownCorpus(_))));
    }

    #[test]
    fn star7_squares_to_identity() {
        let b = KForm::from_terms(3, &[("123", 1.0), ("157", -2.0)]);
        let s = star7(&b).unwrap();
        assert_eq!(s.degree(), 4);
        assert!(star7(&s).unwrap().distance(&b) < 1e-14);
        assert!(star7(&KForm::from_terms(1, &[("0", 1.0)])).is_err());
    }

    #[test]
    fn shipped_structures_are_admissible() {
        for (id, _, phi) in corpus_geometries() {
            let r = validate_phi(&phi);
            assert!(r.all_passed(), "{id}: {:?}", r.failures().collect::<Vec<_>>());
        }
        // the unnegated forms pick up +4φ in the two-index identity
        assert!(!validate_phi(&-remark_b()).all_passed());
        assert!(!validate_phi(&-phi_t(0.3)).all_passed());
    }

    #[test]
    fn su2_product_torsion() {
        let g = geom("su2su2u1u1", &canonical_form());
        let t = KForm::from_terms(3, &[("123", 1.0), ("456", 1.0)]);
        assert!(g.torsion.distance(&t) < 1e-12);
        let th = (6.0 / 7.0) * Covector::basis(4) - (6.0 / 7.0) * Covector::basis(3);
        assert!((g.theta - th).max_abs() < 1e-12);
        assert!((norm_sq(&g.torsion, &g.metric) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn su3_is_flat_cartan() {
        let g = geom("su3", &canonical_form());
        assert!(g.curvature.r.max_abs() < 1e-12);
        for k in 0..8 {
            for i in 0..8 {
                for j in 0..8 {
                    assert!((g.t.get(&[i, j, k]) + g.alg.c(k, i, j)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn family_lee_forms() {
        let s = 6.0 * 2f64.sqrt() / 7.0;
        let expected = [
            (6.0 / 7.0) * Covector::basis(7) - (6.0 / 7.0) * Covector::basis(0),
            (-s) * Covector::basis(0),
            (-s) * Covector::basis(7),
        ];
        for (t, th) in PHI_T_VALUES.iter().zip(expected) {
            let g = geom("su2su2u1u1", &phi_t(*t));
            assert!((g.theta - th).max_abs() < 1e-12, "t = {t}");
        }
        let g = geom("su2su2u1u1", &remark_b());
        assert!((g.theta - expected[0]).max_abs() < 1e-12);
    }
}
