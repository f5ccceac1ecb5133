use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_multistruct"));
    c.env_remove("MULTISTRUCT_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn analyze_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.problem", "field 32003\nvars x, y\nideal x^3; x*y; y^4\n");
    let o = run(&["analyze", &f, "--properties"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("type A      [1, 2, 1, 2]"));
    assert!(text.contains("criterion   not Gorenstein"));
    assert!(text.contains("property    ok   inclusions"));

    let o = run(&["analyze", &f, "--json", "--no-timing", "--field", "Q", "--mode", "embedded"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["input"]["field"], "Q");
    assert_eq!(v["dim_b"], 6);
    assert!(v["embedded"]["socle"].is_array());
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn analyze_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let not_local = write(dir.path(), "a.problem", "field Q\nvars x\nideal x^2 - 1\n");
    let o = run(&["analyze", &not_local]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("x^2 - 1"));

    let bad = write(dir.path(), "b.problem", "vars x\nideal x^2\n");
    assert_eq!(code(&run(&["analyze", &bad])), 2);
    assert_eq!(code(&run(&["analyze", "/nonexistent/file.problem"])), 2);

    let counterexample = write(
        dir.path(),
        "c.problem",
        "field 32003\nvars x, y, z\nideal x^4 + 3*y*z^2 + x*z; y^3 + y*z; z^4\n",
    );
    assert_eq!(code(&run(&["analyze", &counterexample])), 4);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["analyze", "x", "--field", "12"])), 1);
    assert_eq!(code(&run(&["batch", "not-a-spec"])), 1);
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["batch", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn batch_directory_with_non_local_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "good.problem", "field 32003\nvars x\nideal x^3\n");
    write(dir.path(), "bad.problem", "field Q\nvars x\nideal x^2 - 1\n");
    let out = dir.path().join("out");
    let o = run(&["batch", dir.path().to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    let names: Vec<&str> = summary["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["bad.problem", "good.problem"]);
    assert_eq!(summary["entries"][0]["error_kind"], "NotLocal");
    assert!(out.join("good.json").exists());
}

#[test]
fn batch_is_byte_identical_across_runs_and_workers() {
    let spec = "ci:count=10+monomial:count=10+random:count=5";
    let a = run(&["batch", spec, "--seed", "9", "--json", "--keep-going"]);
    let b = run(&["batch", spec, "--seed", "9", "--json", "--keep-going", "--jobs", "3"]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let c = bin()
        .args(["batch", spec, "--json", "--keep-going"])
        .env("MULTISTRUCT_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
    let d = run(&["batch", spec, "--seed", "10", "--json", "--keep-going"]);
    assert_ne!(a.stdout, d.stdout);
}

#[test]
fn gen_writes_parseable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus");
    let o = run(&["gen", "monomial", "--vars", "2", "--count", "4", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let mut names: Vec<String> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["monomial-0000.problem", "monomial-0001.problem", "monomial-0002.problem", "monomial-0003.problem"]);
    let text = fs::read_to_string(out.join("monomial-0000.problem")).unwrap();
    assert!(text.starts_with("field 32003\nvars x, y\nideal "));
    let o = run(&["batch", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    let printed = run(&["gen", "ci", "--vars", "1", "--deg", "3", "--count", "2"]);
    assert_eq!(
        String::from_utf8(printed.stdout).unwrap(),
        "# ci-0000.problem\nfield 32003\nvars x\nideal x^3\n\n# ci-0001.problem\nfield 32003\nvars x\nideal x^3\n"
    );
}

#[test]
fn batch_falsification_writes_reproducer() {
    let dir = tempfile::tempdir().unwrap();
    let inputs = dir.path().join("in");
    fs::create_dir(&inputs).unwrap();
    write(&inputs, "a.problem", "field 32003\nvars x, y, z\nideal x^4 + 3*y*z^2 + x*z; y^3 + y*z; z^4\n");
    write(&inputs, "b.problem", "field 32003\nvars x\nideal x^2\n");
    let repro = dir.path().join("repro");
    let o = run(&["batch", inputs.to_str().unwrap(), "--reproducer-dir", repro.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(repro.join("falsification-a.problem").exists());
    assert!(String::from_utf8_lossy(&o.stdout).contains("aborted at a.problem"));
}

#[test]
fn selftest_reports_each_check() {
    // Seed 0 includes a complete intersection where equal symmetric
    // dimensions do not make A_l -> M_l bijective.
    let o = run(&["selftest", "--seed", "0"]);
    assert_eq!(code(&o), 4);
    let out = String::from_utf8(o.stdout).unwrap();
    for line in out.lines() {
        if line.starts_with("FAIL") {
            assert!(line.starts_with("FAIL property battery, conditional:"), "{line}");
            assert!(line.ends_with("falsify symmetric_pieces_coincide"), "{line}");
        }
    }
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 5);
}
