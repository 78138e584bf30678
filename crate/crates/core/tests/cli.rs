use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittforge")).args(args).env_remove("WITTFORGE_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const EIGHT_ONES: &str = r#"{"field":"Q","diag":["1","1","1","1","1","1","1","1"]}"#;

#[test]
fn ideal_level_three_on_eight_ones() {
    let o = run(&["ideal", "--level", "3", "--form", EIGHT_ONES]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn clifford_summary() {
    let o = run(&["clifford", "--n", "6", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["center_kind"], "Z4");
    assert_eq!(v["ed"], 4);
    assert_eq!(v["order"], 64);
    let o = run(&["clifford", "--n", "10", "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["center_kind"].as_str(), v["ed"].as_u64()), (Some("Z4"), Some(16)));
    let o = run(&["clifford", "--n", "4", "--mul", "+e{1,2}", "+e{1,2}"]);
    assert!(stdout(&o).contains("= -e{}"), "{}", stdout(&o));
}

#[test]
fn bounds_at_twenty() {
    let o = run(&["bounds", "--n", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lower 326, upper 342"), "{}", stdout(&o));
    let o = run(&["bounds", "--n", "20", "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["lower"].as_str(), v["upper"].as_str()), (Some("326"), Some("342")));
}

#[test]
fn form_round_trip_through_invariants() {
    let input = r#"{"field":"Q","diag":["-3/5","2","7"]}"#;
    let o = run(&["invariants", "--form", input, "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["form"], serde_json::from_str::<serde_json::Value>(input).unwrap());
    let fp = r#"{"field":{"Fp":7},"diag":["3","6"]}"#;
    let o = run(&["invariants", "--form", fp, "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["form"], serde_json::from_str::<serde_json::Value>(fp).unwrap());
}

#[test]
fn forms_from_files_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let form = dir.path().join("q.json");
    std::fs::write(&form, r#"{"field":"Q","diag":["1","-1"]}"#).unwrap();
    let out = dir.path().join("out.txt");
    let o = run(&["hyperbolic", "--form", form.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(out).unwrap().trim(), "true");
}

#[test]
fn witt_equiv_and_decompose() {
    let a = r#"{"field":"Q","diag":["1","1","1","1"]}"#;
    let b = r#"{"field":"Q","diag":["2","2","5","5"]}"#;
    let o = run(&["witt-equiv", "--form", a, "--form", b]);
    assert_eq!(stdout(&o).trim(), "true");
    let c = r#"{"field":"Q","diag":["2","2","3","3"]}"#;
    assert_eq!(stdout(&run(&["witt-equiv", "--form", a, "--form", c])).trim(), "false");
    let o = run(&["decompose", "--level", "2", "--form", a, "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["count"].as_u64().unwrap() <= 2);
    assert_eq!(v["terms"][0]["fold"], 2);
}

#[test]
fn pfister_expand_and_phi() {
    let o =
        run(&["pfister-expand", "--pfister", r#"{"fold":3,"sign":"+","slots":["2","3","5"]}"#, "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["diag"], serde_json::json!(["1", "2", "3", "5", "6", "10", "15", "30"]));
    let triple = r#"[{"fold":3,"sign":"+","slots":["1","1","1"]},{"fold":3,"sign":"+","slots":["2","3","5"]}]"#;
    let o = run(&["phi", "--pfister", triple, "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 14);
}

#[test]
fn exit_codes() {
    // malformed coefficient: usage error naming the field
    let o = run(&["invariants", "--form", r#"{"field":"Q","diag":["1","1/0"]}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("diag[1]"), "{}", stderr(&o));
    assert_eq!(run(&["invariants"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["ideal", "--level", "4", "--form", EIGHT_ONES]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--form", "/nonexistent/q.json"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--form", EIGHT_ONES, "--field", "Fp:5"]).status.code(), Some(2));
    // well-formed but outside the operation's contract
    let o = run(&["decompose", "--level", "2", "--form", r#"{"field":"Q","diag":["1","2"]}"#]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["ed", "--n", "1"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "--n", "1"]).status.code(), Some(1));
}

#[test]
fn table_is_deterministic_and_matches_golden() {
    let a = run(&["table", "--kind", "all", "--format", "machine"]);
    let b = run(&["table", "--kind", "all", "--format", "machine"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rost = run(&["table", "--kind", "rost"]);
    assert_eq!(stdout(&rost), include_str!("golden/rost_table.tsv"));
    let spin = run(&["table", "--kind", "spin"]);
    assert_eq!(stdout(&spin), include_str!("golden/spin_sweep.tsv"));
}

#[test]
fn selftest_honours_seed() {
    let with = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_wittforge")).arg("selftest").env("WITTFORGE_SEED", seed).output().unwrap()
    };
    let a = with("42");
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert!(stdout(&a).starts_with("seed 42\n"));
    assert_eq!(a.stdout, with("42").stdout);
    assert_eq!(with("not-a-number").status.code(), Some(2));
}
