//! The `iwmat` binary driven end to end from an empty directory.

use std::path::Path;
use std::process::{Command, Output};

fn iwmat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwmat")).current_dir(dir).args(args).output().expect("spawn iwmat")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "iwmat failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn build_library(dir: &Path, top: usize, weight: u64) {
    std::fs::create_dir_all(dir.join("lib")).unwrap();
    for s in 1..=top {
        let n = s.to_string();
        let k = weight.to_string();
        let out = format!("lib/iw{s}_{weight}.iwdb");
        stdout(&iwmat(dir, &["classify", "--rows", &n, "--cols", &n, "--weight", &k, "--out", &out]));
    }
}

#[test]
fn nsoks_count() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(stdout(&iwmat(dir.path(), &["nsoks", "200", "200", "--count-only"])).trim(), "27482");
    let recs: serde_json::Value = serde_json::from_str(&stdout(&iwmat(dir.path(), &["--format", "records", "nsoks", "25", "2"]))).unwrap();
    assert_eq!(recs, serde_json::json!([[[4, 1], [3, 1]], [[5, 1], [0, 1]]]));
}

#[test]
fn pipeline_from_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build_library(d, 4, 25);
    let count = |extra: &[&str]| {
        let mut args = vec!["count", "--size", "4", "--weight", "25", "--library", "lib/"];
        args.extend_from_slice(extra);
        stdout(&iwmat(d, &args)).trim().to_string()
    };
    assert_eq!(count(&[]), "37248");
    assert_eq!(count(&["--symmetric"]), "1084");
    assert_eq!(count(&["--antisymmetric"]), "60");
    // no W(4,25) exists
    assert_eq!(count(&["--weighing-only"]), "0");
    build_library(d, 4, 4);
    let hadamard = stdout(&iwmat(d, &["count", "--size", "4", "--weight", "4", "--library", "lib", "--weighing-only"]));
    assert_eq!(hadamard.trim(), "768");

    let v = stdout(&iwmat(d, &["validate", "--db", "lib/iw4_25.iwdb"]));
    assert_eq!(v.lines().last(), Some("PASS"));

    let a = stdout(&iwmat(d, &["assemble", "--size", "4", "--weight", "25", "--library", "lib"]));
    assert!(a.contains("total 5 5") && a.contains("cardinality 37248"), "{a}");
    let r = stdout(&iwmat(d, &["report", "--size", "4", "--weight", "25", "--library", "lib"]));
    assert!(r.contains("4.1 16 9216 - 5 4(8)+1(4)"), "{r}");
    let s = stdout(&iwmat(d, &["assemble-sym", "--size", "4", "--weight", "25", "--library", "lib", "--anti"]));
    assert!(s.contains("total 60"), "{s}");

    // a scrambled direct sum of [5] and the 2×2 class
    std::fs::write(d.join("m.txt"), "0 0 5\n3 4 0\n4 -3 0\n").unwrap();
    let dec = stdout(&iwmat(d, &["decompose", "--matrix", "m.txt", "--library", "lib"]));
    assert!(dec.contains("signature 1.1+2.1") && dec.contains("shape A+B"), "{dec}");
    assert_eq!(stdout(&iwmat(d, &["minclass", "--matrix", "m.txt"])), "-5 0 0\n0 -4 -3\n0 -3 4\n");
    let aut = stdout(&iwmat(d, &["aut", "--matrix", "m.txt", "--certify", "2"]));
    assert!(aut.starts_with("order 8\n"), "{aut}");
    std::fs::write(d.join("n.txt"), "5 0 0\n0 3 4\n0 4 -3\n").unwrap();
    assert!(stdout(&iwmat(d, &["iso", "--a", "m.txt", "--b", "n.txt"])).starts_with("equivalent"));
    let sym = stdout(&iwmat(d, &["symclasses", "--matrix", "n.txt"]));
    assert!(sym.starts_with("4 subclasses"), "{sym}");
}

#[test]
fn projective_verification() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&iwmat(dir.path(), &["projective", "--dim", "2", "--prime", "3", "--verify-symmetric"]));
    assert!(out.contains("|Aut| 11232 predicted 11232"), "{out}");
    assert!(out.contains("symmetric subclasses 2 predicted 2"), "{out}");
    assert_eq!(out.lines().last(), Some("PASS"));
    let m = stdout(&iwmat(dir.path(), &["projective", "--dim", "2", "--prime", "3"]));
    assert_eq!(m.lines().count(), 13);
}

#[test]
fn exit_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(iwmat(d, &["classify", "--rows", "2"]).status.code(), Some(2));
    assert_eq!(iwmat(d, &["projective", "--dim", "2", "--prime", "4"]).status.code(), Some(2));
    build_library(d, 2, 25);
    let short = iwmat(d, &["count", "--size", "3", "--weight", "25", "--library", "lib"]);
    assert_eq!(short.status.code(), Some(3));
    let db = d.join("lib/iw2_25.iwdb");
    let text = std::fs::read_to_string(&db).unwrap().replacen("-3", "-2", 1);
    std::fs::write(&db, text).unwrap();
    assert_eq!(iwmat(d, &["validate", "--db", "lib/iw2_25.iwdb"]).status.code(), Some(4));
}

#[test]
fn config_file_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("engine.toml"), "mindepth = 2\nthreads = 2\n").unwrap();
    let out = stdout(&iwmat(d, &["--config", "engine.toml", "classify", "--rows", "4", "--cols", "4", "--weight", "25"]));
    assert!(out.starts_with("5 classes\n"), "{out}");
    std::fs::write(d.join("bad.toml"), "tuple_length = 0\n").unwrap();
    assert_eq!(iwmat(d, &["--config", "bad.toml", "nsoks", "5", "2"]).status.code(), Some(2));
}
