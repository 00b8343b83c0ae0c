use std::fs;
use std::process::{Command, Output};

use spin7_core::corpus::canonical_form;
use spin7_core::{KForm, VerificationReport};

fn spin7(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spin7")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn corpus_algebras_verify_cleanly() {
    for alg in ["abelian", "heisenberg", "su2su2u1u1", "su3"] {
        let o = spin7(&["verify", "--algebra", alg]);
        assert_eq!(o.status.code(), Some(0), "{alg}: {}", stderr(&o));
        let r = VerificationReport::from_json(&stdout(&o)).unwrap();
        assert_eq!(r.geometry_id, format!("{alg}/canonical"));
        assert!(r.all_passed() && r.entries.len() >= 25);
    }
}

#[test]
fn shipped_structures_on_su2_squared() {
    for args in [
        vec!["--structure", "phi_t", "--t", "0"],
        vec!["--structure", "phi_t", "--t", "0.7853981633974483"],
        vec!["--structure", "remark_b"],
    ] {
        let mut full = vec!["verify", "--algebra", "su2su2u1u1"];
        full.extend(&args);
        let o = spin7(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).contains("warning"));
    }
    let o = spin7(&["verify", "--algebra", "su2su2u1u1", "--structure", "phi_t", "--t", "0.3"]);
    assert!(stderr(&o).contains("warning"));
    assert_eq!(spin7(&["verify", "--algebra", "su2su2u1u1", "--structure", "phi_t"]).status.code(), Some(2));
}

#[test]
fn corrupted_structure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let phi = canonical_form();
    let bad = &phi + &KForm::from_terms(4, &[("0127", 2.0)]);
    let path = dir.path().join("flipped.json");
    fs::write(&path, bad.to_json_string()).unwrap();
    let o = spin7(&["verify", "--algebra", "su3", "--structure", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let r = VerificationReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.geometry_id, "su3/flipped");
    assert!(r.max_blocking_residual() > 1e-6);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let not_jacobi = dir.path().join("broken.json");
    fs::write(
        &not_jacobi,
        r#"{"name": "broken", "dim": 8, "convention": "brackets", "constants": [
            {"i": 0, "j": 1, "k": 0, "c": 1}, {"i": 1, "j": 2, "k": 1, "c": 1}]}"#,
    )
    .unwrap();
    let two_form = dir.path().join("two.json");
    fs::write(&two_form, KForm::from_terms(2, &[("01", 1.0)]).to_json_string()).unwrap();
    let cases: [Vec<&str>; 5] = [
        vec!["verify", "--algebra", "no-such-algebra"],
        vec!["verify", "--algebra", not_jacobi.to_str().unwrap()],
        vec!["verify", "--algebra", "su3", "--structure", two_form.to_str().unwrap()],
        vec!["verify", "--algebra", "su3", "--soliton-df", "1,2,3"],
        vec!["decompose", two_form.to_str().unwrap(), "--degree", "5"],
    ];
    for args in cases {
        let o = spin7(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let args = ["verify", "--algebra", "heisenberg", "--soliton-df", "0,sqrt(2)/2,0,0,0,0,0,1"];
    let a = spin7(&args);
    let b = spin7(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    let c = spin7(&with_out);
    assert!(c.stdout.is_empty());
    assert_eq!(fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn text_format() {
    let o = spin7(&["verify", "--algebra", "su2su2u1u1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("PASS") && s.contains("connection.preserves_phi"));
}

#[test]
fn decompose_splits_and_reassembles() {
    let dir = tempfile::tempdir().unwrap();
    // dθ on SU(2)^2 lies in Λ²₂₁
    let path = dir.path().join("dtheta.json");
    fs::write(&path, KForm::from_terms(2, &[("56", 6.0 / 7.0), ("12", -6.0 / 7.0)]).to_json_string()).unwrap();
    let o = spin7(&["decompose", path.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("Lambda^2_7: norm^2 = 0.000000000000"), "{s}");
    assert!(s.contains("Lambda^2_21"));
    assert!(s.contains("reassembly residual"));

    let phi = dir.path().join("phi.json");
    fs::write(&phi, canonical_form().to_json_string()).unwrap();
    let s = stdout(&spin7(&["decompose", phi.to_str().unwrap(), "--degree", "4"]));
    assert!(s.contains("Lambda^4_1: norm^2 = 336.000000000000"), "{s}");
    assert!(s.contains("Lambda^4_35: norm^2 = 0.000000000000"), "{s}");

    assert_eq!(spin7(&["decompose", phi.to_str().unwrap(), "--degree", "3"]).status.code(), Some(2));
}

#[test]
fn corpus_listing() {
    let o = spin7(&["corpus"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("abelian — trivial baseline"));
    for name in ["heisenberg", "su2su2u1u1", "su3", "structure canonical", "structure phi_t", "structure remark_b"] {
        assert!(s.contains(name), "{name}");
    }
}
