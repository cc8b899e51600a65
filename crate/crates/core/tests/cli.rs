use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn topoflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topoflow"))
        .args(args)
        .env_remove("TOPOFLOW_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let file = dir.join(name).to_string_lossy().into_owned();
    let mut all = vec!["--out", &file, "gen"];
    all.extend_from_slice(args);
    let o = topoflow(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    file
}

#[test]
fn gen_then_bounds_on_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen(dir.path(), "p6.json", &["path", "--buses", "6"]);
    let o = topoflow(&["--format", "json", "bounds", &file]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["cb"], "1024");
    assert_eq!(v["bblsy"], "252");
    assert_eq!(v["ap"], "32");
    assert_eq!(v["bkk"], "32");
    assert_eq!(v["seed"], 0);
}

#[test]
fn ring_and_bridged_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let ring = gen(dir.path(), "r7.json", &["ring", "--buses", "7"]);
    let v = json(&topoflow(&["--format", "json", "bounds", &ring]));
    assert_eq!((v["ap"].as_str(), v["bkk"].as_str()), (Some("224"), Some("224")));
    let bridged = gen(dir.path(), "b33.json", &["bridged", "--c1", "3", "--c2", "3"]);
    let v = json(&topoflow(&["--format", "json", "bounds", "--skip-bkk", &bridged]));
    assert_eq!(v["ap"], "72");
    assert!(v.get("bkk").is_none_or(Value::is_null));
}

#[test]
fn solve_counts_every_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen(dir.path(), "p4.json", &["path", "--buses", "4"]);
    let v = json(&topoflow(&["--format", "json", "--seed", "3", "solve", &file]));
    assert_eq!(v["bkk"], "8");
    assert_eq!(v["counts"]["nondeficient"], 8);
    assert_eq!(v["counts"]["failures"], 0);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 8);
    assert_eq!(v["seed"], 3);
}

#[test]
fn generated_case_solves_in_its_own_mode() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen(dir.path(), "case.json", &["ring", "--buses", "4", "--case", "--mode", "independent"]);
    let v = json(&topoflow(&["--format", "json", "solve", &file]));
    assert_eq!(v["mode"], "independent");
    assert_eq!(v["counts"]["nondeficient"], 16);
}

#[test]
fn path_table_without_solving_matches() {
    let o = topoflow(&["--format", "csv", "table", "path", "--max-size", "8", "--no-solve"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ap: Vec<&str> = text.lines().filter(|l| l.contains(",AP,")).collect();
    assert_eq!(ap.len(), 7);
    for (line, want) in ap.iter().zip([2, 4, 8, 16, 32, 64, 128]) {
        assert!(line.ends_with(&format!(",{want},{want},MATCH")), "{line}");
    }
}

#[test]
fn grid_tables() {
    let text = stdout(&topoflow(&["--format", "csv", "table", "glued2", "--max-size", "4"]));
    assert!(text.contains("glued2,\"c1=4,c2=4\",BKK,200,200,MATCH"), "{text}");
    assert!(text.contains("glued2,\"c1=4,c2=4\",BBLSY,252,252,MATCH"));
    let o = topoflow(&["--format", "csv", "table", "chain", "--max-size", "c=3,m=3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("chain,\"c=3,m=3\",AP,864,864,MATCH"));
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: [&[&str]; 5] = [
        &["gen", "glued", "--c1", "2", "--c2", "2", "--shared", "2"],
        &["table", "nonsense"],
        &["table", "ieee14"],
        &["bounds", "/definitely/not/here.json"],
        &["gen", "path", "--buses", "1"],
    ];
    for args in cases {
        assert_eq!(topoflow(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn malformed_topology_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, r#"{"buses": 3, "edges": [[0, 5]]}"#).unwrap();
    let o = topoflow(&["bounds", file.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn output_is_stable_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen(dir.path(), "g.json", &["glued", "--c1", "3", "--c2", "3", "--shared", "2"]);
    let one = dir.path().join("one.json");
    let four = dir.path().join("four.json");
    for (threads, out) in [("1", &one), ("4", &four)] {
        let o = topoflow(&["--threads", threads, "--format", "json", "--out", out.to_str().unwrap(), "solve", &file]);
        assert!(o.status.success());
    }
    let a = std::fs::read(&one).unwrap();
    assert_eq!(a, std::fs::read(&four).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["counts"]["nondeficient"], 18);
}

#[test]
fn json_output_keeps_stderr_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen(dir.path(), "p3.json", &["path", "--buses", "3"]);
    let o = topoflow(&["--format", "json", "bounds", &file]);
    assert!(o.stderr.is_empty(), "{}", String::from_utf8_lossy(&o.stderr));
}
