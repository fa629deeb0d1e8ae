use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablecat")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn dims(v: &Value) -> Vec<u64> {
    v["results"]["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect()
}

#[test]
fn resolve_k_over_square_zero() {
    let r = json(&["resolve", "local_sq_zero(2,2)", "builtin:k", "--length", "3", "--direction", "proj"]);
    assert_eq!(&dims(&r)[..3], &[3, 6, 12]);
    assert_eq!(r["ring"], "local_sq_zero(2,2)");
}

#[test]
fn resolve_periodic_and_projective() {
    let r = json(&["resolve", "trunc_poly(2,2)", "builtin:k", "--length", "4"]);
    assert_eq!(dims(&r), [2, 2, 2, 2, 2]);
    let r = json(&["resolve", "trunc_poly(3,2)", "builtin:R"]);
    assert_eq!(r["results"]["length"], 0);
    assert_eq!(dims(&r), [3]);
}

#[test]
fn resolve_injective_direction() {
    let r = json(&["resolve", "local_sq_zero(2,2)", "k", "--direction", "inj", "--length", "2"]);
    assert_eq!(dims(&r), [3, 6, 12]);
}

#[test]
fn ext_and_tor_tables() {
    assert_eq!(dims(&json(&["ext", "local_sq_zero(2,2)", "k", "k", "--degrees", "0..3"])), [1, 2, 4, 8]);
    assert_eq!(dims(&json(&["tor", "trunc_poly(2,2)", "k", "k", "--degrees", "0..3"])), [1, 1, 1, 1]);
    assert_eq!(dims(&json(&["ext", "local_sq_zero(2,3)", "m", "J", "--degrees", "1..3"])), [0, 0, 0]);
}

#[test]
fn tsv_table() {
    let out = run(&["ext", "local_sq_zero(2,2)", "k", "k", "--degrees", "0..2", "--format", "tsv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n\tdim\n0\t1\n1\t2\n2\t4\n");
}

#[test]
fn tate_and_stable_hom() {
    let r = json(&["tate", "5", "1", "--range", "-4..4"]);
    assert_eq!(dims(&r), [1; 9]);
    let r = json(&["stable-hom", "local_sq_zero(2,2)", "k", "k", "--variant", "inj"]);
    assert_eq!(r["results"]["dim"], 1);
    let r = json(&["stable-hom", "cyclic_group(3,3)", "R", "k", "--variant", "proj"]);
    assert_eq!(r["results"]["dim"], 0);
}

#[test]
fn counterexample_verdicts() {
    let r = json(&["counterexample", "inj-exact-not-total", "--p", "2", "--depth", "4"]);
    let v = &r["results"]["verdicts"];
    assert_eq!(v["exact_interior"], true);
    assert_eq!(v["inj_acyclic"], false);
    assert_eq!(r["metadata"]["window"], serde_json::json!([0, 4]));
    let notes = r["metadata"]["collapse_notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("Noetherian")));

    let r = json(&["counterexample", "proj-firm-not-exact", "--p", "3"]);
    let v = &r["results"]["verdicts"];
    assert_eq!(v["exact_interior"], false);
    assert_eq!(v["ac_acyclic"], true);
    assert_eq!(v["firmly_acyclic"], true);
}

#[test]
fn duality_check_agrees() {
    let r = json(&["duality-check", "proj-exact-not-firm", "--p", "2", "--depth", "4"]);
    assert_eq!(r["results"]["all_agree"], true);
    assert_eq!(r["results"]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn fp_probe_counts() {
    let r = json(&["fp-probe", "--p", "2", "--n-range", "1..4"]);
    assert_eq!(r["results"]["mu_omega1"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(r["results"]["mu_omega2"], serde_json::json!([1, 4, 9, 16]));
}

#[test]
fn suite_passes() {
    let r = json(&["suite"]);
    assert_eq!(r["results"]["all_pass"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["counterexample", "proj-exact-not-firm", "--emit-complex"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    assert_eq!(run(&["suite"]).stdout, run(&["suite"]).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["ext", "local_sq_zero(2,x)", "k", "k"]).status.code(), Some(2));
    assert_eq!(run(&["ext", "local_sq_zero(2,4)", "k", "k"]).status.code(), Some(2));
    assert_eq!(run(&["resolve", "trunc_poly(2,2)", "builtin:q"]).status.code(), Some(2));
    assert_eq!(run(&["counterexample", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["stable-hom", "trunc_poly(2,2)", "k", "k", "--format", "tsv"]).status.code(), Some(2));
    // J (x) P is not exact, so no filtration exists.
    assert_eq!(run(&["filtration", "proj-exact-not-firm", "--depth", "3"]).status.code(), Some(3));
    assert_eq!(run(&["counterexample", "inj-exact-not-total", "--depth", "2"]).status.code(), Some(2));
}

#[test]
fn emitted_complex_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["inj-acyclic-not-exact", "proj-exact-not-firm"] {
        let r = json(&["counterexample", name, "--emit-complex"]);
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(&r["results"]["complex"]).unwrap()).unwrap();
        let c = json(&["classify", path.to_str().unwrap()]);
        let key = if name.starts_with("inj") { "injective" } else { "projective" };
        assert_eq!(c["results"][key]["verdicts"], r["results"]["verdicts"]);
        if key == "projective" {
            let d = json(&["duality-check", path.to_str().unwrap()]);
            assert_eq!(d["results"]["all_agree"], true);
        } else {
            assert_eq!(run(&["duality-check", path.to_str().unwrap()]).status.code(), Some(3));
        }
    }
}

#[test]
fn module_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    std::fs::write(
        &path,
        r#"{"ring":"local_sq_zero(2,2)","side":"left","dim":1,"action":{"x":[[0]],"y":[[0]]}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(dims(&json(&["ext", "local_sq_zero(2,2)", p, "k", "--degrees", "0..2"])), [1, 2, 4]);
    // Wrong side for the first Tor argument.
    assert_eq!(run(&["tor", "local_sq_zero(2,2)", p, "k"]).status.code(), Some(2));
    // Not a module: x acts with x^2 != 0.
    std::fs::write(&path, r#"{"ring":"trunc_poly(2,2)","side":"left","dim":2,"action":{"x":[[0,0],[1,1]]}}"#).unwrap();
    assert_eq!(run(&["resolve", "trunc_poly(2,2)", p]).status.code(), Some(2));
}
