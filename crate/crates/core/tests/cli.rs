use std::path::PathBuf;
use std::process::Command;

use hkg_core::io::parse_ideal_json;
use hkg_core::relations::{assemble_j, G0Mode};
use hkg_core::{Lattice, Tower, TowerSpec};

fn curve(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../curves").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hkg-canon")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn e9() -> String {
    curve("e9.json").to_string_lossy().into_owned()
}

#[test]
fn export_plain() {
    let (code, out, err) = run(&["export", "--curve", &e9()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().count(), 26);
    assert!(out.lines().any(|l| l == "w_0_3*w_0_4 - w_0_0*w_0_1 - w_2_0^2"));
    assert!(err.contains("(4,1)"));
}

#[test]
fn fidelity_listing_doubles_binomials() {
    let (code, out, _) = run(&["export", "--curve", &e9(), "--paper-fidelity"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 51);
    assert!(lines.contains(&"w_1_0^2 - w_0_0*w_2_0"));
    assert!(lines.contains(&"-w_1_0^2 + w_0_0*w_2_0"));
}

#[test]
fn canonical_coefficients() {
    let (_, out, _) = run(&["export", "--curve", &e9(), "--canonical-coeffs"]);
    assert!(out.lines().any(|l| l == "w_0_3*w_0_4 + 6*w_0_0*w_0_1 + 6*w_2_0^2"));
    assert!(!out.contains(" - "));
}

#[test]
fn json_export_round_trips() {
    let (code, out, _) = run(&["export", "--curve", &e9(), "--format", "json"]);
    assert_eq!(code, 0);
    let (p, forms) = parse_ideal_json(&out).unwrap();
    let lat = Lattice::new(Tower::new(TowerSpec::artin_schreier(7, 1, 4)).unwrap()).unwrap();
    assert_eq!(p, 7);
    assert_eq!(forms, assemble_j(&lat, G0Mode::AllPairs).unwrap().forms());
}

#[test]
fn scripts() {
    let (code, out, _) = run(&["export", "--curve", &e9(), "--format", "singular"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ring R = 7, (w_0_0, "));
    assert!(out.contains("  w_0_3*w_0_4 - w_0_0*w_0_1 - w_2_0^2;\n"));
    let (code, out, _) = run(&["export", "--curve", &e9(), "--format", "macaulay2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("R = ZZ/7[w_(0,0), "));
    assert!(out.contains("w_(0,3)*w_(0,4) - w_(0,0)*w_(0,1) - w_(2,0)^2\n);"));
}

#[test]
fn ideal_labels_origins() {
    let (code, out, _) = run(&["ideal", "--curve", &e9()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("G0 ")).count(), 25);
    assert!(out.lines().any(|l| l == "G(0,0),1\tw_0_3*w_0_4 - w_0_0*w_0_1 - w_2_0^2"));
    let (_, star, _) = run(&["ideal", "--curve", &e9(), "--star"]);
    assert_eq!(star.lines().count(), 21);
}

#[test]
fn info_and_basis() {
    let (code, out, _) = run(&["info", "--curve", &e9()]);
    assert_eq!(code, 0);
    assert!(out.contains("genus: 9\n"));
    assert!(out.contains("semigroup generators: 7, 4\n"));
    let (code, out, _) = run(&["info", "--curve", &e9(), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["genus"], 9);
    assert_eq!(v["petri"]["verdict"], true);
    let (code, out, _) = run(&["basis", "--curve", &e9()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 9);
    assert!(out.starts_with("(0,0)\tnorm 0\tw_0_0\n"));
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = run(&["verify", "--curve", &e9(), "--deg3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("dim kernel = 125"));
    assert!(out.ends_with("verdict: pass\n"));
    // a skipped check is not a pass
    let (code, out, _) = run(&["verify", "--curve", &e9(), "--deg3", "--deg3-ceiling", "10"]);
    assert_eq!(code, 2);
    assert!(out.contains("skipped (size)"));
    let (code, out, _) = run(&["verify", "--curve", &e9(), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["span_compare"]["dim_j"], 21);
    assert_eq!(v["quotient"]["survivors"], 24);
}

#[test]
fn corpus_verifies() {
    for name in ["as_q5_m4.json", "as_q9_m4.json", "as_q11_m4.json"] {
        let (code, out, err) = run(&["verify", "--curve", curve(name).to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {out}{err}");
    }
}

#[test]
fn petri_refusal() {
    let path = curve("y5_x3.json");
    let (code, out, _) = run(&["info", "--curve", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("non-trigonality        FAIL"));
    let (code, out, err) = run(&["ideal", "--curve", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("non-trigonality"));
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad_p = dir.path().join("bad_p.json");
    std::fs::write(&bad_p, r#"{"p": 9, "steps": [{"n": 1, "additive": [{"power": 0, "coeff": -1}], "rhs": [{"coeff": 1, "exps": [4]}]}]}"#).unwrap();
    let (code, _, err) = run(&["info", "--curve", bad_p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("p-not-prime"), "{err}");

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"p\": 7,").unwrap();
    assert_eq!(run(&["info", "--curve", broken.to_str().unwrap()]).0, 3);

    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["info", "--curve", missing.to_str().unwrap()]).0, 3);

    assert_eq!(run(&["export", "--curve", &e9(), "--format", "maple"]).0, 1);
    assert_eq!(run(&["info", "--curve", &e9(), "--format", "singular"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["info"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}
