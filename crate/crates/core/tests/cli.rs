use std::path::{Path, PathBuf};
use std::process::Command;

use intsim::cli::without_timing;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
}

fn intsim(args: &[&str], envs: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_intsim"));
    cmd.args(args).env_remove("INTSIM_BUDGET");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run { code: out.status.code().expect("exit code"), stdout: String::from_utf8(out.stdout).unwrap() }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).expect("json document")
}

fn verify_only(dir: &Path, command: &str, body: &str) -> Value {
    let report = write(dir, "report.json", body);
    let run = intsim(&[command, "--verify-only", "--in", report.to_str().unwrap()], &[]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    json(&run)["result"].clone()
}

#[test]
fn decide_embeds_a_verifiable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"ring":"Z","rows":2,"cols":2,"entries":[[0,2],[3,5]]}"#);
    let run = intsim(&["decide", "--problem", "tri", "--level", "ring", "--in", m.to_str().unwrap()], &[]);
    assert_eq!(run.code, 0);
    let doc = json(&run);
    assert_eq!(doc["result"]["decision"]["verdict"], "yes");
    assert!(doc["result"]["decision"]["witness"].is_array());
    assert_eq!(doc["tool"], "intsim");
    assert!(doc["version"].is_string());
    assert!(doc["timing"]["elapsed_ms"].is_u64());
    assert_eq!(doc["input"]["matrix"]["entries"], serde_json::json!([[0, 2], [3, 5]]));
    let v = verify_only(dir.path(), "decide", &run.stdout);
    assert_eq!(v["checked"], 1);
    assert_eq!(v["verified"], true);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"ring":"Z","entries":[[1,1],[0,4]]}"#);
    let args = ["report", "--kind", "diag", "--in", m.to_str().unwrap(), "--prime-bound", "30"];
    let a = intsim(&args, &[]);
    let b = intsim(&args, &[]);
    assert_eq!(a.code, 0);
    assert_eq!(without_timing(&a.stdout).unwrap(), without_timing(&b.stdout).unwrap());
    let doc = json(&a);
    let conditions = doc["result"]["conditions"].as_array().unwrap();
    assert_eq!(conditions.len(), 6);
    assert_eq!(conditions[0]["verdict"], "no");
    assert_eq!(conditions[0]["certificate"]["type"], "DetThetaObstruction");
    assert_eq!(conditions[4]["verdict"], "yes");
    for c in conditions {
        assert!(c["primes_checked"].is_array());
    }
    let v = verify_only(dir.path(), "report", &a.stdout);
    assert_eq!(v["verified"], true);
    assert!(v["checked"].as_u64().unwrap() >= 2);
}

#[test]
fn quadratic_report_witnesses_verify() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"ring":"Qsqrt","d":-5,"entries":[[[4,-2],[2,2]],[[-2,-2],[4,0]]]}"#);
    let run = intsim(&["report", "--kind", "tri", "--in", m.to_str().unwrap(), "--prime-bound", "20"], &[]);
    assert_eq!(run.code, 0);
    let doc = json(&run);
    assert_eq!(doc["result"]["conditions"][0]["verdict"], "no");
    assert_eq!(doc["result"]["conditions"][4]["verdict"], "yes");
    let v = verify_only(dir.path(), "report", &run.stdout);
    assert_eq!(v["verified"], true);
}

#[test]
fn tampered_witness_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"ring":"Z","entries":[[0,2],[3,5]]}"#);
    let run = intsim(&["decide", "--problem", "tri", "--in", m.to_str().unwrap()], &[]);
    let mut doc = json(&run);
    doc["witnesses"][0]["witness"] = serde_json::json!([[1, 0], [0, 1]]);
    let report = write(dir.path(), "bad.json", &doc.to_string());
    let check = intsim(&["decide", "--verify-only", "--in", report.to_str().unwrap()], &[]);
    assert_eq!(check.code, 4);
    assert_eq!(json(&check)["result"]["verified"], false);
}

#[test]
fn counterexample_with_certification() {
    let dir = tempfile::tempdir().unwrap();
    let run = intsim(&["counterexample", "--kind", "tri", "--d", "-5", "--n", "2", "--certify", "--prime-bound", "100"], &[]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let doc = json(&run);
    let cert = &doc["result"]["certification"];
    assert_eq!(cert["passed"], true);
    assert_eq!(cert["legs"].as_array().unwrap().len(), 3);
    assert_eq!(doc["result"]["recipe"]["M"], serde_json::json!([[[4, -2], [2, 2]], [[-2, -2], [4, 0]]]));
    assert_eq!(verify_only(dir.path(), "counterexample", &run.stdout)["verified"], true);

    let run = intsim(&["counterexample", "--kind", "diag", "--d", "-5", "--certify"], &[]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert_eq!(json(&run)["result"]["certification"]["passed"], true);
    let v = verify_only(dir.path(), "counterexample", &run.stdout);
    assert_eq!(v["checked"], 3);
}

#[test]
fn certify_command_reports_failed_leg() {
    let dir = tempfile::tempdir().unwrap();
    // Triangular already over the ring, so the global-ring leg fails.
    let m = write(dir.path(), "m.json", r#"{"ring":"Qsqrt","d":-5,"entries":[[[1,0],[1,0]],[[0,0],[2,0]]]}"#);
    let run = intsim(&["certify", "--kind", "tri", "--in", m.to_str().unwrap()], &[]);
    assert_eq!(run.code, 0);
    let doc = json(&run);
    assert_eq!(doc["result"]["passed"], false);
    assert_eq!(doc["result"]["failed_leg"], "global-ring");
}

#[test]
fn strata_audit_smallest_shape() {
    let run = intsim(&["strata", "--m", "1", "--n", "2", "--lambda", "0", "--q", "2", "--audit"], &[]);
    assert_eq!(run.code, 0);
    let audit = &json(&run)["result"]["audits"][0];
    assert_eq!(audit["union_ok"], true);
    assert_eq!(audit["presentation_ok"], true);
    assert_eq!(audit["shape"], "m=1,n=2,lambda=0");
    assert_eq!(audit["q"], 2);
    assert_eq!(audit["counts"]["V(1)"], 24);
    assert_eq!(audit["counts"]["V(2)"], 24);
    assert_eq!(audit["counts"]["X"], 40);
}

#[test]
fn strata_table_is_csv() {
    let run = intsim(&["strata", "--m", "1", "--n", "2", "--q", "2,3"], &[]);
    assert_eq!(run.code, 0);
    let mut lines = run.stdout.lines();
    assert_eq!(lines.next(), Some("r,equations,dim,count_q2,count_q3"));
    assert!(lines.next().unwrap().starts_with("(1),3,7,24,"));
}

#[test]
fn audit_commands() {
    let y = intsim(&["audit", "--check", "y", "--values", "1,1,2", "--q", "3"], &[]);
    assert_eq!(y.code, 0);
    assert_eq!(json(&y)["result"]["audit"]["total"], 288);
    let t = intsim(&["audit", "--check", "transport", "--values", "1,2", "--q", "5", "--target", "x"], &[]);
    assert_eq!(t.code, 0);
    assert_eq!(json(&t)["result"]["audit"]["bijective"], true);
    let d = intsim(&["audit", "--check", "dims", "--m", "1", "--n", "2"], &[]);
    assert_eq!(d.code, 0);
    assert_eq!(json(&d)["result"]["ok"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // Usage errors.
    assert_eq!(intsim(&["decide"], &[]).code, 1);
    assert_eq!(intsim(&["frobnicate"], &[]).code, 1);
    let bad_d = write(dir.path(), "d10.json", r#"{"ring":"Qsqrt","d":10,"entries":[[[1,0]]]}"#);
    let run = intsim(&["decide", "--problem", "tri", "--in", bad_d.to_str().unwrap()], &[]);
    assert_eq!(run.code, 1);
    assert!(json(&run)["error"]["message"].as_str().unwrap().contains("invalid input"));
    let malformed = write(dir.path(), "bad.json", "{\"ring\": \"Z\",\n \"entries\": [[1, 2]");
    let run = intsim(&["decide", "--problem", "tri", "--in", malformed.to_str().unwrap()], &[]);
    assert_eq!(run.code, 1);
    assert!(json(&run)["error"]["message"].as_str().unwrap().contains("line 2"));
    // Unsupported: repeated eigenvalue over a non-principal order.
    let rep = write(dir.path(), "rep.json", r#"{"ring":"Qsqrt","d":-5,"entries":[[[1,0],[1,0]],[[0,0],[1,0]]]}"#);
    assert_eq!(intsim(&["decide", "--problem", "tri", "--in", rep.to_str().unwrap()], &[]).code, 2);
    // Capacity, with the budget taken from the environment.
    let run = intsim(&["strata", "--m", "1", "--n", "2", "--q", "2", "--audit"], &[("INTSIM_BUDGET", "10")]);
    assert_eq!(run.code, 3);
    let run = intsim(&["strata", "--m", "1", "--n", "2", "--q", "2", "--audit", "--budget", "1000"], &[("INTSIM_BUDGET", "10")]);
    assert_eq!(run.code, 0);
}

#[test]
fn local_levels_need_a_prime() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"ring":"Z","entries":[[1,2],[0,5]]}"#);
    let p = m.to_str().unwrap();
    assert_eq!(intsim(&["decide", "--problem", "diag", "--level", "local", "--in", p], &[]).code, 1);
    let run = intsim(&["decide", "--problem", "diag", "--level", "local", "--prime", "2", "--in", p], &[]);
    assert_eq!(json(&run)["result"]["places"][0]["decision"]["verdict"], "no");
    let run = intsim(&["decide", "--problem", "diag", "--level", "residue", "--prime", "2", "--k", "1", "--in", p], &[]);
    assert_eq!(json(&run)["result"]["places"][0]["decision"]["verdict"], "yes");
    assert_eq!(verify_only(dir.path(), "decide", &run.stdout)["verified"], true);
}

#[test]
fn output_file_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let run = intsim(&["strata", "--m", "1", "--n", "2", "--q", "2", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    assert!(std::fs::read_to_string(out).unwrap().starts_with("r,equations"));
}
