use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_overlap-lab")).args(args).env_remove("OVERLAP_LAB_CACHE").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn hilton_grid_values() {
    // max{C(n,k), m C(n-1,k-1)}
    let out = lab(&["bounds", "--name", "hilton", "--n", "8", "--k", "2", "--m", "3,5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["rows"][0]["value"], "28");
    assert_eq!(v["rows"][1]["value"], "35");
    assert_eq!(v["summary"]["rows"], 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&lab(&["bounds", "--name", "nope", "--n", "4"])), 2);
    assert_eq!(code(&lab(&["bounds", "--name", "hilton", "--n", "4", "--k", "2", "--m", "1", "--s", "1"])), 2);
    assert_eq!(code(&lab(&["verify", "--suite", "cyclic", "--ci"])), 2);
    assert_eq!(code(&lab(&["verify", "--suite", "missing", "--seed", "1"])), 2);
}

#[test]
fn node_limit_exits_three() {
    let out = lab(&["search", "--n", "8", "--k", "2", "--weights", "2,1", "--limit-nodes", "3"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn both_solvers_agree_from_cli() {
    let out = lab(&["search", "--n", "4", "--k", "2", "--weights", "2,1", "--solver", "both"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert_eq!(row["optimum"], "9");
        assert_eq!(row["status"], "ok");
    }
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let args = ["bounds", "--name", "hilton", "--n", "5,6,7", "--k", "2", "--m", "1,2,3"];
    let j = json(&lab(&args));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let out = lab(&csv_args);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "value").unwrap();
    let from_csv: Vec<String> = reader.records().map(|r| r.unwrap()[col].to_string()).collect();
    let from_json: Vec<String> =
        j["rows"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap().to_string()).collect();
    assert_eq!(from_csv, from_json);
    assert_eq!(from_csv.len(), 9);
}

#[test]
fn seeded_verify_is_reproducible_and_jobs_keep_order() {
    let base = ["verify", "--suite", "konig", "--seed", "5", "--trials", "50", "--format", "csv"];
    let a = lab(&base);
    let b = lab(&base);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let mut parallel = base.to_vec();
    parallel.extend(["--jobs", "3"]);
    assert_eq!(lab(&parallel).stdout, a.stdout);
}

#[test]
fn resume_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.csv");
    let part = dir.path().join("part.csv");
    let path = |p: &Path| p.to_str().unwrap().to_string();
    let grid = ["bounds", "--name", "hilton", "--n", "5,6,7,8", "--k", "2", "--m", "1,2,3", "--format", "csv"];

    let mut args: Vec<String> = grid.iter().map(|s| s.to_string()).collect();
    args.extend(["--output".into(), path(&full)]);
    assert_eq!(code(&lab(&args.iter().map(String::as_str).collect::<Vec<_>>())), 0);
    let expected = std::fs::read_to_string(&full).unwrap();

    // keep the header and the first four rows, then resume
    let truncated: Vec<&str> = expected.lines().take(5).collect();
    std::fs::write(&part, truncated.join("\n") + "\n").unwrap();
    let resumed = dir.path().join("resumed.csv");
    let mut args: Vec<String> = grid.iter().map(|s| s.to_string()).collect();
    args.extend(["--resume".into(), path(&part), "--output".into(), path(&resumed)]);
    assert_eq!(code(&lab(&args.iter().map(String::as_str).collect::<Vec<_>>())), 0);
    assert_eq!(std::fs::read_to_string(&resumed).unwrap(), expected);
}

#[test]
fn cache_directory_is_populated_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_overlap-lab"))
            .args(["search", "--n", "6", "--k", "2", "--weights", "3,1", "--format", "csv"])
            .env("OVERLAP_LAB_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(code(&first), 0);
    assert!(dir.path().join("shifted-n6-k2.json").exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, lab(&["search", "--n", "6", "--k", "2", "--weights", "3,1", "--format", "csv"]).stdout);
}
