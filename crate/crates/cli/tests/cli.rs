//! End-to-end runs of the `tamehecke` binary. JSON reports are compared byte for
//! byte against `tests/golden/`; set `TAMEHECKE_BLESS=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::Command;

use assert_cmd::prelude::*;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tamehecke"));
    c.env_remove("TAMEHECKE_MAX_DEGREE");
    c
}

fn fixture(name: &str) -> String {
    root().join("tests/fixtures").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = root().join("../../target/cli-test-output");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Run with `--json` and return the report text.
fn json_run(args: &[&str], out: &str, code: i32) -> String {
    let path = scratch(out);
    let path_s = path.display().to_string();
    let mut c = bin();
    c.args(args).args(["--quiet", "--json", &path_s]);
    c.assert().code(code);
    std::fs::read_to_string(&path).unwrap()
}

fn golden(name: &str, args: &[&str]) {
    let first = json_run(args, &format!("{name}.1.json"), 0);
    let second = json_run(args, &format!("{name}.2.json"), 0);
    assert_eq!(first, second, "{name}: report differs between runs");
    let gold: &Path = &root().join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("TAMEHECKE_BLESS").is_some() {
        std::fs::write(gold, &first).unwrap();
    }
    let want = std::fs::read_to_string(gold).unwrap_or_else(|_| panic!("missing golden {}", gold.display()));
    assert_eq!(first, want, "{name}: report differs from golden file");
}

#[test]
fn golden_resolve_hecke() {
    golden("resolve-hecke", &["resolve", "builtin:hecke", "--max-degree", "8"]);
}

#[test]
fn golden_resolve_lambda() {
    golden("resolve-lambda-3-2", &["resolve", "builtin:lambda-3-2", "--max-degree", "6"]);
}

#[test]
fn golden_hh_basis() {
    golden("hh-hecke", &["hh", "builtin:hecke", "--max-degree", "9", "--check-basis"]);
}

#[test]
fn golden_ext() {
    golden("ext-hecke", &["ext", "builtin:hecke", "--max-degree", "12", "--centre", "--fingen", "--krull"]);
}

#[test]
fn golden_projections() {
    golden("projections-hecke", &["projections", "builtin:hecke"]);
}

#[test]
fn bundled_lambda_specs_resolve() {
    for name in ["lambda-2-1", "lambda-3-1", "lambda-2-2", "lambda-3-2"] {
        let spec = format!("builtin:{name}");
        bin().args(["resolve", &spec, "--max-degree", "6", "--quiet"]).assert().success();
    }
}

#[test]
fn spec_files_on_disk_match_bundled() {
    let disk = root().join("specs/hecke.spec").display().to_string();
    let a = json_run(&["resolve", &disk, "--max-degree", "3"], "disk.json", 0);
    let b = json_run(&["resolve", "builtin:hecke", "--max-degree", "3"], "builtin.json", 0);
    assert_eq!(a, b);
}

#[test]
fn wrong_sign_relation_is_not_a_complex() {
    let out = bin().args(["resolve", &fixture("wrong-sign.spec"), "--max-degree", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("failure: NotAComplex at degree 1"), "{text}");
    assert!(text.contains("overall: FAIL"));
}

#[test]
fn parse_errors_name_the_line() {
    for (file, needle) in [("unknown-key.spec", "line 3: unknown key `colour`"), ("bad-word.spec", "line 14")] {
        let out = bin().args(["resolve", &fixture(file)]).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{file}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(needle), "{file}: {err}");
    }
}

#[test]
fn characteristic_two_basis_refused() {
    let out = bin().args(["hh", "builtin:hecke", "--field", "fp:2!", "--check-basis"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("characteristic not 2"));
    let out = bin().args(["hh", "builtin:hecke", "--field", "fp:2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hh_over_f5() {
    let report = json_run(&["hh", "builtin:hecke", "--field", "fp:5", "--check-basis", "--max-degree", "7"], "f5.json", 0);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["field"], "F5");
    let dims: Vec<u64> = v["sections"]["hh"]["degrees"].as_array().unwrap().iter().map(|r| r["dim_hh"].as_u64().unwrap()).collect();
    assert_eq!(dims, [5, 3, 3, 4, 5, 5, 5, 6]);
    assert_eq!(v["sections"]["hh-basis"]["degrees"][4]["basis_names"].as_array().unwrap().len(), 5);
}

#[test]
fn env_sets_default_degree() {
    let path = scratch("env.json");
    let path_s = path.display().to_string();
    bin()
        .env("TAMEHECKE_MAX_DEGREE", "3")
        .args(["resolve", "builtin:hecke", "--quiet", "--json", &path_s])
        .assert()
        .success();
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["sections"]["resolve"]["max_degree"], 3);
    assert_eq!(v["sections"]["resolve"]["degrees"].as_array().unwrap().len(), 4);
}

#[test]
fn family_flag_selects_the_differential() {
    let report = json_run(&["resolve", "builtin:hecke", "--family", "lambda", "--max-degree", "5"], "fam.json", 0);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["sections"]["resolve"]["differential"], "partial(r=2,s=1)");
    bin().args(["resolve", "builtin:lambda-3-1", "--family", "hecke"]).assert().code(2);
}

#[test]
fn verbs_for_a_refuse_other_algebras() {
    for verb in ["hh", "ext", "projections"] {
        bin().args([verb, "builtin:lambda-3-1"]).assert().code(2);
    }
    // a hecke-family spec with relations that do not present A
    bin().args(["ext", &fixture("wrong-sign.spec")]).assert().code(2);
}

#[test]
fn all_passes_on_a() {
    let out = bin().args(["all", "builtin:hecke"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for section in ["resolve", "hh", "hh-basis", "ext-dims", "ext-identities", "ext-centre", "ext-fingen", "ext-krull", "projections"] {
        assert!(text.contains(&format!("{section}: PASS")), "{section}");
    }
    assert!(text.contains("Krull dimension >= 2 evidence"));
}
