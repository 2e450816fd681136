use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn ydcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ydcalc")).args(args).output().expect("spawn ydcalc")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn golden(args: &[&str], file: &str) {
    let o = ydcalc(args);
    assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let want = std::fs::read_to_string(data(file)).unwrap();
    assert!(String::from_utf8(o.stdout).unwrap() == want, "{args:?} differs from {file}");
}

#[test]
fn classification_reports_match_golden() {
    for p in ["2", "3", "4", "5"] {
        golden(&["classify", "report", "--p", p, "--format", "json"], &format!("classify_p{p}.json"));
    }
}

#[test]
fn lifting_presentations_match_golden() {
    golden(&["rewrite", "dim", "--p", "2", "--i", "1", "--j", "1", "--mu", "1", "--format", "json"], "lifting_quadratic_p2.json");
    golden(&["rewrite", "dim", "--p", "2", "--i", "3", "--j", "0", "--mu", "1", "--format", "json"], "lifting_cubic_p2.json");
    golden(&["rewrite", "dim", "--p", "2", "--mu", "1", "--nu", "-1", "--format", "json"], "lifting_pair_p2.json");
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["classify", "report", "--p", "3", "--format", "json"][..],
        &["classify", "report", "--p", "3"][..],
        &["yd", "braiding", "--p", "3", "--i", "1", "--j", "2", "--format", "json"][..],
    ] {
        let a = ydcalc(args);
        let b = ydcalc(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn golden_algebra_verifies_and_corruption_is_caught() {
    golden(&["hopf", "build", "--p", "2", "--format", "json"], "h_p2.json");
    let path = data("h_p2.json");
    let o = ydcalc(&["hopf", "verify", "--p", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);

    let dir = std::env::temp_dir().join(format!("ydcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let base: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // a·a scaled by 2; then a sign flip in Δ; then a structurally broken file.
    let mut bad_mult = base.clone();
    let entry = bad_mult["mult"].as_array_mut().unwrap().iter_mut().find(|e| e[0] == 1 && e[1] == 1).unwrap();
    entry[3] = "2".into();
    let mut bad_comult = base.clone();
    let entry = bad_comult["comult"].as_array_mut().unwrap().iter_mut().find(|e| e[3] == "-x").unwrap();
    entry[3] = "x".into();
    let mut truncated = base.clone();
    truncated["mult"].as_array_mut().unwrap().truncate(3);
    for (name, v) in [("mult", bad_mult), ("comult", bad_comult), ("truncated", truncated)] {
        let f = dir.join(format!("{name}.json"));
        std::fs::write(&f, serde_json::to_string_pretty(&v).unwrap()).unwrap();
        let o = ydcalc(&["hopf", "verify", "--p", "2", "--input", f.to_str().unwrap()]);
        assert_eq!(code(&o), 1, "{name}: {}", String::from_utf8_lossy(&o.stdout));
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&ydcalc(&["hopf", "verify"])), 2);
    assert_eq!(code(&ydcalc(&["hopf", "verify", "--p", "2", "--format", "xml"])), 2);
    assert_eq!(code(&ydcalc(&["yd", "make", "--p", "2", "--i", "1", "--j", "2"])), 2);
    assert_eq!(code(&ydcalc(&["rewrite", "dim", "--p", "2", "--i", "1", "--j", "2"])), 2);
    assert_eq!(code(&ydcalc(&["classify", "report", "--p", "6"])), 2);
    assert_eq!(code(&ydcalc(&["nichols", "dims", "--p", "2", "--i", "1", "--j", "1", "--cap", "2"])), 3);
    assert_eq!(code(&ydcalc(&["rewrite", "dim", "--p", "2", "--i", "1", "--j", "1", "--cap", "3"])), 3);
    // published sign of the (v₃v₁)^N relation at p = 3 is not in the ideal
    assert_eq!(code(&ydcalc(&["nichols", "verify-presentation", "--p", "3", "--i", "3", "--j", "1", "--k", "5"])), 1);
    assert_eq!(code(&ydcalc(&["nichols", "verify-presentation", "--p", "3", "--i", "3", "--j", "1", "--k", "5", "--derived-sign"])), 0);
    assert_eq!(code(&ydcalc(&["rewrite", "hopf-check", "--p", "2", "--i", "3", "--j", "0", "--mu", "1"])), 1);
}

#[test]
fn subcommands_run() {
    for args in [
        &["hopf", "double", "--p", "2"][..],
        &["hopf", "dual", "--p", "2"][..],
        &["yd", "make", "--p", "3", "--i", "1", "--j", "2"][..],
        &["yd", "dynkin", "--p", "2", "--i", "1", "--j", "1", "--chi", "1"][..],
        &["yd", "census", "--p", "2"][..],
        &["nichols", "quad", "--p", "3", "--i", "1", "--j", "2"][..],
        &["nichols", "verify-presentation", "--p", "2", "--i", "2", "--j", "1", "--k", "2", "--l", "3"][..],
        &["rewrite", "overlaps", "--p", "2", "--i", "1", "--j", "3"][..],
        &["rewrite", "hopf-check", "--p", "2", "--i", "1", "--j", "1", "--mu", "0"][..],
    ] {
        let o = ydcalc(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = ydcalc(&["nichols", "dims", "--p", "2", "--i", "1", "--j", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 8);
}
