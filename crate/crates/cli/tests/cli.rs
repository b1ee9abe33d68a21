//! End-to-end tests of the binary: exit codes, file input, JSON determinism.

use std::process::{Command, Output};

fn amalgenus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgenus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn genus_of_the_klein_amalgam_from_builtin_names() {
    let out = amalgenus(&["genus", "--g1", "d8", "--h1", "klein", "--g2", "d8", "--h2", "klein"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("genus(W) = 1"), "{text}");
    assert!(text.contains("iso classes = 2"), "{text}");
}

#[test]
fn genus_from_group_files() {
    let dir = std::env::temp_dir().join("amalgenus-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d8.json");
    let entry = amalgenus_core::catalog::builtin_entry("d8").unwrap();
    let file = amalgenus_core::io::group_file_of(&entry);
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let out = amalgenus(&["genus", "--g1", p, "--h1", "klein", "--g2", p, "--h2", "klein"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("genus(W) = 1"));
}

#[test]
fn aut_reports_the_klein_automorphism_count() {
    let out = amalgenus(&["aut", "--group", "klein"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("|Aut| = 6"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = [
        "genus", "--g1", "d8", "--h1", "klein", "--g2", "d8", "--h2", "klein", "--format", "json",
    ];
    let a = stdout(&amalgenus(&args));
    let b = stdout(&amalgenus(&args));
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["schema"], "amalgenus/1");
    assert_eq!(doc["value"], 1);
    assert_eq!(doc["iso_classes"], 2);
}

#[test]
fn unknown_group_fails_with_input_error_code() {
    let out = amalgenus(&["aut", "--group", "nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fictitious_amalgam_fails_with_input_error_code() {
    let out = amalgenus(&["genus", "--g1", "d8", "--h1", "whole", "--g2", "d8", "--h2", "whole"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tiny_budget_fails_with_budget_error_code() {
    let out = amalgenus(&["--budget-nodes", "1", "aut", "--group", "d8"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_amalgenus"))
        .args(["aut", "--group", "d8"])
        .env("AMALGENUS_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn small_oracle_sweep_agrees() {
    let out = amalgenus(&["oracle-sweep", "--max-order", "8", "--max-subgroup", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("all agree"), "{text}");
}

#[test]
fn sweep_accepts_a_catalog_file() {
    let dir = std::env::temp_dir().join("amalgenus-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    let groups: Vec<_> = ["c2", "c4", "klein", "s3"]
        .iter()
        .map(|n| amalgenus_core::io::group_file_of(&amalgenus_core::catalog::builtin_entry(n).unwrap()))
        .collect();
    let file = amalgenus_core::io::CatalogFile {
        schema: amalgenus_core::io::SCHEMA.into(),
        groups,
        pairs: Vec::new(),
    };
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let out = amalgenus(&[
        "oracle-sweep",
        "--catalog",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["all_agree"], true);
}

#[test]
fn sweep_runs_explicit_catalog_pairs() {
    let dir = std::env::temp_dir().join("amalgenus-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog_pairs.json");
    let d8 = amalgenus_core::io::group_file_of(&amalgenus_core::catalog::builtin_entry("d8").unwrap());
    let file = amalgenus_core::io::CatalogFile {
        schema: amalgenus_core::io::SCHEMA.into(),
        groups: vec![d8],
        pairs: vec![amalgenus_core::io::PairSpec {
            g1: "d8".into(),
            h1: "klein".into(),
            g2: "d8".into(),
            h2: "klein".into(),
        }],
    };
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let out = amalgenus(&[
        "oracle-sweep",
        "--catalog",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["all_agree"], true);
    assert_eq!(doc["instance_count"], 1);
    assert_eq!(doc["instances"][0]["family_orbit_count"], 2);
}

#[test]
fn abstract_genus_input_runs() {
    let dir = std::env::temp_dir().join("amalgenus-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("abstract.json");
    // Out(C7) is cyclic of order 6; trivial discrete images, full profinite
    // images, identity-only normalizer subset: six classes.
    let c7 = amalgenus_core::catalog::builtin_entry("c7").unwrap();
    let aut = amalgenus_core::morphism::compute_aut(&c7.group, &amalgenus_core::Limits::default())
        .unwrap();
    let id: Vec<usize> = (0..7).collect();
    let file = amalgenus_core::io::GenusInputFile {
        schema: amalgenus_core::io::SCHEMA.into(),
        h: amalgenus_core::io::group_file_of(&c7),
        mode: "profinitely-nonsymmetric".into(),
        a1: vec![id.clone()],
        a2: vec![id.clone()],
        ahat1: aut.maps().to_vec(),
        ahat2: aut.maps().to_vec(),
        nplus: vec![id],
        xi: None,
        n1: None,
        n2: None,
    };
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let out = amalgenus(&["genus", "--abstract", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["value"], 6);
}

#[test]
fn output_file_flag_writes_the_report() {
    let dir = std::env::temp_dir().join("amalgenus-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = amalgenus(&[
        "conditions",
        "--g1",
        "gl2f2",
        "--h1",
        "borel_upper",
        "--g2",
        "gl2f2_op",
        "--h2",
        "borel_lower",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["self_normalizing"], serde_json::json!([true, true]));
}
