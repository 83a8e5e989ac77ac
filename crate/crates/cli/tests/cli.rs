use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptangle"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (
        o.status.code().unwrap(),
        serde_json::from_slice(&o.stdout).unwrap(),
    )
}

#[test]
fn color_counts() {
    let o = run(&["color", &corpus("trefoil.pd"), "--mod", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "9 colorings, nontrivial: yes");

    let o = run(&["color", &corpus("trefoil.pd"), "--mod", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "5 colorings, nontrivial: no");

    let (code, v) = json(&[
        "color",
        &corpus("figure-eight.pd"),
        "--mod",
        "5",
        "--enumerate",
        "100",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], "25");
    assert_eq!(v["colorings"].as_array().unwrap().len(), 25);
    assert_eq!(v["schema"], 1);
}

#[test]
fn determinants() {
    let (_, v) = json(&["det", &corpus("figure-eight.pd")]);
    assert_eq!(v["determinant"], 5);
    let (_, v) = json(&["det", &corpus("6_2.pd")]);
    assert_eq!(v["determinant"], 11);
}

#[test]
fn certify_finds_and_verifies() {
    let (code, v) = json(&[
        "certify",
        &corpus("krebes.pd"),
        "--verify",
        "30",
        "--seed",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"]["fox"], 3);
    assert!(v["verification"]["checked"].as_u64().unwrap() > 0);
    assert!(v["verification"]["counterexample"].is_null());
}

#[test]
fn certify_reports_why_nothing_was_found() {
    let o = run(&["certify", &corpus("no-monochromatic-coloring.pd")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("inconsistency at crossing"));

    let o = run(&["certify", &corpus("irreducible-5-3.pd")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("krebes gcd = 1"));
}

#[test]
fn cut_writes_a_checkable_certificate() {
    let o = run(&["cut", &corpus("trefoil.pd"), "--arc", "1", "--mod", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no nontrivial coloring mod 5"));

    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("cut");
    let o = run(&[
        "cut",
        &corpus("8_16.pd"),
        "--arc",
        "1",
        "--mod",
        "5",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let pd = dir.path().join("cut.pd");
    assert!(pd.exists() && dir.path().join("cut.cert.json").exists());
    let (code, v) = json(&["certify", pd.to_str().unwrap(), "--mods", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"]["fox"], 5);
}

#[test]
fn build_closures() {
    let (code, v) = json(&["build", "--rational", "3", "--closure", "n"]);
    assert_eq!(code, 0);
    assert_eq!(v["closure"]["determinant"], 3);
    let (_, v) = json(&["build", "--rational", "2,3", "--closure", "n"]);
    assert_eq!(
        (&v["fraction"]["p"], &v["fraction"]["q"]),
        (&7.into(), &2.into())
    );
    assert_eq!(v["closure"]["determinant"], 7);

    let (code, v) = json(&["build", "--t-plus-tstar", "2,3,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["kind"]["fox"], 7);
    let (code, _) = json(&["build", "--t-plus-tstar", "-2"]);
    assert_eq!(code, 1);
}

#[test]
fn krebes_and_report() {
    let (_, v) = json(&["krebes", &corpus("krebes.pd")]);
    assert_eq!(v["gcd"], 3);
    let (_, v) = json(&["report", "--twists", "2,3"]);
    assert_eq!(v["verdict"], "rational by construction; not irreducible");
    let (_, v) = json(&["report", &corpus("irreducible-5-3.pd")]);
    assert_eq!(v["verdict"], "consistent with irreducible");
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "--json",
        "certify",
        &corpus("t-plus-tstar.pd"),
        "--verify",
        "10",
        "--seed",
        "3",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pd");
    std::fs::write(&bad, "X 1 2 3\n").unwrap();
    let (code, v) = json(&["det", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
}
