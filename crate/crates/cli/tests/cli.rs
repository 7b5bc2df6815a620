use std::process::{Command, Output};

use serde_json::Value;

fn fpg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpg")).args(args).output().expect("fpg runs")
}

fn code(args: &[&str]) -> i32 {
    fpg(args).status.code().unwrap()
}

fn report(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = fpg(&full);
    serde_json::from_slice(&out.stdout).unwrap()
}

fn tmp(name: &str) -> String {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).display().to_string()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["no-such-verb"]), 3);
    assert_eq!(code(&["parse", "/nonexistent/file"]), 3);
    assert_eq!(code(&["tc", "catalog:A5"]), 0);
    assert_eq!(code(&["tc", "catalog:A5", "--max-cosets", "10"]), 2);
    assert_eq!(code(&["uce", "catalog:cyclic:5"]), 3);
    assert_eq!(code(&["low-index", "catalog:free:2", "--bound", "4"]), 0);
}

#[test]
fn sc_check_verdicts() {
    let path = tmp("commutator.txt");
    std::fs::write(&path, "< a, b | a b a^-1 b^-1 >").unwrap();
    assert_eq!(code(&["sc-check", &path, "--m", "3"]), 0);
    assert_eq!(code(&["sc-check", &path, "--m", "4"]), 1);
    let r = report(&["sc-check", &path, "--m", "4"]);
    assert_eq!(r["outcome"], "NEGATIVE");
}

#[test]
fn exhausted_report_is_json() {
    let r = report(&["tc", "catalog:A5", "--max-cosets", "10"]);
    assert_eq!(r["outcome"], "EXHAUSTED");
    assert!(r["payload"]["error"].as_str().unwrap().contains("coset"));
}

#[test]
fn reports_are_reproducible() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    for args in [
        vec!["rips", "catalog:A5", "--m", "7"],
        vec!["--seed", "3", "dehn", "catalog:A5", "--word", "a b"],
        vec!["hom-search", "catalog:S3", "--target", "S3"],
        vec!["low-index", "catalog:A5", "--bound", "6"],
    ] {
        assert_eq!(strip(report(&args)), strip(report(&args)), "{args:?}");
    }
}

#[test]
fn written_presentations_round_trip() {
    let a = tmp("rt_a.txt");
    let b = tmp("rt_b.txt");
    let first = report(&["parse", "catalog:Bp:2", "--out", &a]);
    let second = report(&["parse", &a, "--out", &b]);
    assert_eq!(std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(first["payload"]["canonical_sha256"], second["payload"]["canonical_sha256"]);
    // the digest of an input file is the digest recorded when it was written
    assert_eq!(second["inputs"][0]["sha256"], first["payload"]["written"]["sha256"]);
}

#[test]
fn hom_search_with_explicit_target() {
    let r = report(&["hom-search", "catalog:free:2", "--target-gen", "(1,2)", "--target-gen", "(1,2,3)"]);
    assert_eq!(r["payload"]["homomorphisms"], 36);
    assert_eq!(r["payload"]["epimorphisms"], 18);
}

#[test]
fn dehn_decides_words() {
    let path = tmp("rips_a5_7.txt");
    assert_eq!(code(&["rips", "catalog:A5", "--m", "7", "--out", &path]), 0);
    assert_eq!(code(&["dehn", &path, "--word", "a_1"]), 1);
    let p = std::fs::read_to_string(&path).unwrap();
    let first = p.split('|').nth(1).unwrap().split(',').next().unwrap().trim().trim_end_matches('>').trim();
    assert_eq!(code(&["dehn", &path, "--word", first]), 0);
}

#[test]
fn evidence_and_h2_rank() {
    assert_eq!(code(&["evidence", "catalog:cyclic:5", "--bound", "3"]), 1);
    let r = report(&["h2-rank", "catalog:padded:1", "--aspherical"]);
    assert_eq!(r["payload"]["rank"], 1);
    assert_eq!(code(&["baumslag-iso", "--modulus", "25", "--unit", "6", "--k", "1"]), 0);
}
