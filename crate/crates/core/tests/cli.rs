use std::path::Path;
use std::process::{Command, Output};

use tristable::approx::amsm_ins_bound;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tristable")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(line: &str, key: &str) -> u64 {
    let v: serde_json::Value = serde_json::from_str(line).unwrap();
    v[key].as_u64().unwrap()
}

#[test]
fn gadget_exact_msm() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["gen", "gadget2", "-o", "g.inst"]).status.success());
    let o = run(dir.path(), &["exact", "g.inst", "--mode", "msm", "-o", "best.sol"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("stab=7 ins=1"), "{}", stdout(&o));
    let o = run(dir.path(), &["stab", "g.inst", "best.sol", "--list", "--format", "json"]);
    assert_eq!(field(stdout(&o).lines().next().unwrap(), "stab"), 7);
}

#[test]
fn amsm_respects_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["gen", "random", "--n", "6", "--seed", "1", "-o", "r.inst"]);
    let o = run(dir.path(), &["amsm", "r.inst", "--format", "json", "-o", "r.sol"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert!(field(line.trim(), "ins") <= amsm_ins_bound(6));
    assert_eq!(field(line.trim(), "bound"), amsm_ins_bound(6));
    let o = run(dir.path(), &["stab", "r.inst", "r.sol", "--format", "json"]);
    assert_eq!(field(stdout(&o).trim(), "ins"), field(line.trim(), "ins"));
}

#[test]
fn verify_adversarial() {
    let o = run(Path::new("."), &["verify", "--family", "adversarial", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "PASS n=2 min-ins=1 >= 1 over 4 marriages\n");
    // with lexicographic completion, n = 4 admits a stable marriage
    let o = run(Path::new("."), &["verify", "--family", "adversarial", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "FAIL n=4 min-ins=0 >= 1 over 576 marriages\n");
}

#[test]
fn verify_embed_and_random() {
    let o = run(Path::new("."), &["verify", "--family", "embed", "--n", "2", "--seeds", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 3);
    let o = run(Path::new("."), &["verify", "--family", "random", "--n", "4", "--seeds", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn bench_is_deterministic() {
    let args = ["bench", "--family", "random", "--n", "3,4", "--seeds", "3", "--exact", "--format", "json"];
    let a = run(Path::new("."), &args);
    let b = run(Path::new("."), &args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().all(|l| l.contains("\"runtimeMs\":null")));
}

#[test]
fn bench_csv_skips_exact_above_limit() {
    let o = run(Path::new("."), &["bench", "--family", "random", "--n", "3", "--exact", "--limit", "2", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "family,n,seed,algorithm,stab,ins,bound,runtimeMs");
    assert_eq!(text.lines().count(), 2);
    assert!(!text.contains("exact-msm"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.inst"), "3GSM 2\n0 1 2\n").unwrap();
    assert_eq!(run(dir.path(), &["amsm", "bad.inst"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    run(dir.path(), &["gen", "random", "--n", "7", "-o", "big.inst"]);
    assert_eq!(run(dir.path(), &["exact", "big.inst"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["gen", "adversarial", "--n", "3", "-o", "x.inst"]).status.code(), Some(2));
}

#[test]
fn reduce_solve_decode() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("f.sat"), "3SATB 2 3 3\n1 2\n-1 2\n1 -2\n").unwrap();
    let o = run(dir.path(), &["reduce", "sat3dm", "f.sat", "-o", "f.dm", "--layout", "f.layout"]);
    assert!(o.status.success());
    let o = run(dir.path(), &["exact", "f.dm", "-o", "f.match"]);
    assert!(stdout(&o).contains("uncovered=0"), "{}", stdout(&o));
    let o = run(dir.path(), &["reduce", "decode", "f.sat", "f.layout", "f.match"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("satisfied=3 of 3"), "{}", stdout(&o));
}

#[test]
fn embed_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["gen", "planted-dm", "--n", "2", "--extra", "1", "--seed", "4", "-o", "d.inst"]);
    let o = run(dir.path(), &["gen", "embed", "--in", "d.inst", "--witness", "w.sol", "-o", "e.inst"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(dir.path(), &["stab", "e.inst", "w.sol"]);
    assert!(stdout(&o).contains("stab=1728 ins=0"), "{}", stdout(&o));
}

#[test]
fn lift_and_asa() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["gen", "gadget2", "-o", "g.inst"]);
    run(dir.path(), &["gen", "lift", "--in", "g.inst", "-o", "p.inst"]);
    let o = run(dir.path(), &["asa", "p.inst"]);
    assert!(stdout(&o).contains("stab=19 ins=1"), "{}", stdout(&o));
    let o = run(dir.path(), &["exact", "p.inst"]);
    assert!(stdout(&o).contains("stab=19"), "{}", stdout(&o));
}
