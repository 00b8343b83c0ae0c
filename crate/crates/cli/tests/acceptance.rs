//! Acceptance criteria 1-9. Runs without the libtest harness so every
//! criterion prints its own PASS/FAIL line; exits non-zero if any fails.

use std::process::{Command, ExitCode};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spin7_core::corpus::{canonical_form, corpus_algebra, corpus_geometries};
use spin7_core::exterior::dense::{dense_full_contraction, dense_oracle, dense_star, dense_wedge};
use spin7_core::exterior::{full_contraction, hodge_star, norm_sq, wedge, Mat8};
use spin7_core::geometry::Geometry;
use spin7_core::spin7::{
    canonical_phi, d_operator, lambda4_projector_ranks, metric_from_phi, numerical_rank, omega_operator,
    operator_matrix, project_lambda2, project_lambda4, validate_phi,
};
use spin7_core::suite::full_report;
use spin7_core::tensor::for_each_index;
use spin7_core::{Covector, FrameMetric, KForm, MultiIndex};

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn require(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn geom(alg: &str, phi: &KForm) -> Geometry {
    Geometry::new(alg, &corpus_algebra(alg).expect("corpus algebra"), phi).expect("geometry")
}

/// Entries whose algebra carries a flat Cartan connection.
fn flat_cartan() -> Vec<Geometry> {
    corpus_geometries()
        .into_iter()
        .filter(|(_, alg, _)| *alg != "heisenberg")
        .map(|(id, alg, phi)| Geometry::new(id, &corpus_algebra(alg).unwrap(), &phi).unwrap())
        .collect()
}

fn canonical_battery() -> Outcome {
    let c = canonical_form();
    require(c.len() == 14, format!("{} monomials", c.len()))?;
    let r = validate_phi(&c);
    let worst = r.entries.iter().fold(0.0f64, |m, e| m.max(e.residual));
    require(r.all_passed() && worst < 1e-12, format!("validate_phi worst residual {worst:e}"))?;
    for id in [
        "phi.self_dual",
        "phi.contraction_full",
        "phi.contraction_one_free",
        "phi.contraction_two_free",
        "phi.contraction_three_free",
    ] {
        let e = r.get(id).ok_or(format!("missing {id}"))?;
        require(e.residual == 0.0, format!("{id} residual {:e}", e.residual))?;
    }
    require(*metric_from_phi(&c).unwrap().matrix() == Mat8::identity(), "metric is not the identity")?;
    Ok(format!("{} entries, every residual exactly 0", r.entries.len()))
}

fn representation_theory() -> Outcome {
    let phi = canonical_phi();
    let p7 = operator_matrix(2, 2, |b| project_lambda2(b, &phi).unwrap().0);
    let p21 = operator_matrix(2, 2, |b| project_lambda2(b, &phi).unwrap().1);
    let r2 = [numerical_rank(&p7, 1e-9), numerical_rank(&p21, 1e-9)];
    require(r2 == [7, 21], format!("Lambda^2 ranks {r2:?}"))?;
    let r4 = lambda4_projector_ranks(&phi);
    require(r4 == [1, 7, 27, 35], format!("Lambda^4 ranks {r4:?}"))?;

    let mut eig = 0.0f64;
    let mut d21 = 0.0f64;
    for idx in MultiIndex::all_of_degree(2) {
        let (a, b) = project_lambda2(&KForm::basis(idx), &phi).unwrap();
        eig = eig.max(phi.l_operator(&a).unwrap().distance(&a.scale(-3.0)));
        eig = eig.max(phi.l_operator(&b).unwrap().distance(&b));
        d21 = d21.max(d_operator(&b, &phi).unwrap().max_abs());
    }
    for idx in MultiIndex::all_of_degree(4) {
        let parts = project_lambda4(&KForm::basis(idx), &phi).unwrap();
        for (p, lambda) in parts.iter().zip([-24.0, -12.0, 4.0, 0.0]) {
            eig = eig.max(omega_operator(p, &phi).unwrap().distance(&p.scale(lambda)));
        }
    }
    require(eig < TOL, format!("eigenvalue residual {eig:e}"))?;
    require(d21 < TOL, format!("D on Lambda^2_21: {d21:e}"))?;
    Ok(format!("ranks 7/21 and 1/7/27/35, eigen residual {eig:.1e}, |D| on Lambda^2_21 {d21:.1e}"))
}

fn su2_squared() -> Outcome {
    let g = geom("su2su2u1u1", &canonical_form());
    let t = KForm::from_terms(3, &[("123", 1.0), ("456", 1.0)]);
    let theta = Covector::from_array([0.0, 0.0, 0.0, -6.0 / 7.0, 6.0 / 7.0, 0.0, 0.0, 0.0]);
    let dtheta = KForm::from_terms(2, &[("56", 6.0 / 7.0), ("12", -6.0 / 7.0)]);
    let (p7, _) = project_lambda2(&g.dtheta, &g.phi).unwrap();
    let checks = [
        ("T", g.torsion.distance(&t)),
        ("dT", g.dt.max_abs()),
        ("theta", (g.theta - theta).max_abs()),
        ("dtheta", g.dtheta.distance(&dtheta)),
        ("dtheta_7", p7.max_abs()),
        ("nabla phi", g.nabla_phi().max_abs()),
        ("Ric + (7/6) nabla theta", (g.ric + 7.0 / 6.0 * g.nabla_theta).amax()),
        ("|T|^2 - 12", norm_sq(&g.torsion, &g.metric) - 12.0),
        ("|theta|^2 - 72/49", norm_sq(&KForm::from_covector(&g.theta), &g.metric) - 72.0 / 49.0),
        ("Scal^g - Scal - 3", g.scal_g - g.scal - 3.0),
    ];
    for (name, r) in checks {
        require(r.abs() < TOL, format!("{name}: {r:e}"))?;
    }
    Ok(format!("{} values match", checks.len()))
}

fn su3() -> Outcome {
    let g = geom("su3", &canonical_form());
    let mut cartan = KForm::zero(3);
    for i in 0..8 {
        for j in i + 1..8 {
            for k in j + 1..8 {
                // T(e_i, e_j, e_k) = -g([e_i, e_j], e_k)
                cartan = cartan + KForm::monomial(&[i, j, k], -g.alg.c(k, i, j));
            }
        }
    }
    let mut r = 0.0f64;
    for_each_index(4, |x| r = r.max(g.curvature.get(x[0], x[1], x[2], x[3]).abs()));
    let mirror = g.mirrored().unwrap();
    let checks = [
        ("T = -g([.,.],.)", g.torsion.distance(&cartan)),
        ("dT", g.dt.max_abs()),
        ("max |R|", r),
        ("mirror T + T", (&mirror.torsion + &g.torsion).max_abs()),
    ];
    for (name, r) in checks {
        require(r < TOL, format!("{name}: {r:e}"))?;
    }
    Ok("Cartan torsion, closed, flat, mirror reverses T".into())
}

fn identity_suite() -> Outcome {
    let mut worst = 0.0f64;
    let mut n = 0;
    for (id, alg, phi) in corpus_geometries() {
        let g = Geometry::new(id.clone(), &corpus_algebra(alg).unwrap(), &phi).unwrap();
        let r = full_report(&g, None, TOL).unwrap();
        let fails: Vec<_> = r.failures().map(|e| e.check_id.clone()).collect();
        require(fails.is_empty(), format!("{id}: {fails:?}"))?;
        worst = worst.max(r.max_blocking_residual());
        n += 1;
    }
    let phi = canonical_form();
    let (idx, c) = phi.terms().next().unwrap();
    let bad = &phi - &KForm::monomial(&idx.to_vec(), 2.0 * c);
    let g = geom("su2su2u1u1", &bad);
    let r = full_report(&g, None, TOL).unwrap();
    let detected = r.max_blocking_residual();
    require(!r.all_passed() && detected > 1e-6, format!("sign flip undetected (max residual {detected:e})"))?;
    Ok(format!("{n} geometries pass (worst {worst:.1e}); one sign flip gives residual {detected:.2}"))
}

fn closed_torsion_chain() -> Outcome {
    let geoms = flat_cartan();
    for g in &geoms {
        let checks = [
            ("Ric", g.ric.amax()),
            ("nabla theta", g.nabla_theta.amax()),
            ("Scal", g.scal),
            ("delta theta", g.delta_theta),
            ("dT", g.dt.max_abs()),
            ("delta T", g.delta_t.max_abs()),
        ];
        for (name, r) in checks {
            require(r.abs() < TOL, format!("{}: {name} = {r:e}", g.id))?;
        }
        let r = full_report(g, None, TOL).unwrap();
        for id in ["closed.chain_equivalence", "closed.harmonic_torsion"] {
            let e = r.get(id).unwrap();
            require(e.passed && !e.not_applicable, format!("{}: {id}", g.id))?;
        }
    }
    Ok(format!("{} flat-Cartan entries", geoms.len()))
}

fn soliton() -> Outcome {
    let geoms = flat_cartan();
    for g in &geoms {
        let r = full_report(g, None, TOL).unwrap();
        for id in ["soliton.v_parallel", "soliton.killing", "soliton.preserves_phi", "soliton.dtheta"] {
            let e = r.get(id).ok_or(format!("missing {id}"))?;
            require(e.passed && !e.not_applicable, format!("{}: {id} residual {:e}", g.id, e.residual))?;
        }
    }
    Ok(format!("{} flat-Cartan entries with df = 0", geoms.len()))
}

fn random_form(rng: &mut StdRng, k: usize) -> KForm {
    let mut f = KForm::zero(k);
    for idx in MultiIndex::all_of_degree(k) {
        if rng.gen_bool(0.5) {
            f = f + KForm::monomial(&idx.to_vec(), rng.gen_range(-1.0..1.0));
        }
    }
    f
}

fn oracle() -> Outcome {
    // the norm convention first: a plain sum over all ordered triples
    let t = KForm::from_terms(3, &[("123", 1.0), ("456", 1.0)]);
    let dt = dense_oracle(&t);
    let mut brute = 0.0;
    for_each_index(3, |i| brute += dt.get(i) * dt.get(i));
    require(brute == 12.0, format!("brute-force |T|^2 = {brute}"))?;
    let g = geom("su2su2u1u1", &canonical_form());
    let r = full_report(&g, None, TOL).unwrap();
    require(r.get("torsion.norm_split").unwrap().passed, "norm split fails on SU(2)^2")?;

    let m = FrameMetric::identity();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut count = 0;
    for k in 0..=4 {
        for _ in 0..100 {
            let a = random_form(&mut rng, k);
            let l = rng.gen_range(0..=4 - k);
            let b = random_form(&mut rng, l);
            let c = random_form(&mut rng, k);
            let da = dense_oracle(&a);
            let mut comp = 0.0f64;
            for_each_index(k, |i| comp = comp.max((da.get(i) - a.component(i)).abs()));
            let w = dense_oracle(&wedge(&a, &b).unwrap()).distance(&dense_wedge(&da, &dense_oracle(&b)));
            let s = dense_oracle(&hodge_star(&a, &m)).distance(&dense_star(&da, &m));
            let fc = (full_contraction(&a, &c, &m).unwrap() - dense_full_contraction(&da, &dense_oracle(&c), &m)).abs();
            worst = worst.max(comp).max(w).max(s).max(fc);
            count += 1;
        }
    }
    require(worst < 1e-12, format!("sparse/dense disagreement {worst:e}"))?;
    Ok(format!("|T|^2 = 12 by brute force; {count} random forms, worst disagreement {worst:.1e}"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_spin7"))
            .args(["verify", "--algebra", "su2su2u1u1", "--structure", "canonical"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    require(a.status.success() && b.status.success(), "verify did not exit 0")?;
    require(!a.stdout.is_empty() && a.stdout == b.stdout, "reports differ")?;
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("canonical-form battery", canonical_battery),
        ("representation theory", representation_theory),
        ("SU(2)^2 x U(1)^2 regression", su2_squared),
        ("SU(3) regression", su3),
        ("unconditional identity suite", identity_suite),
        ("closed-torsion chain on flat Cartan entries", closed_torsion_chain),
        ("soliton suite on flat Cartan entries", soliton),
        ("oracle equivalence", oracle),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {}: {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
