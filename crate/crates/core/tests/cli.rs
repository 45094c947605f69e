use std::process::{Command, Output};

fn khoma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khoma")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn bracket_of_trefoil() {
    let out = khoma(&["bracket", "--torus", "2,3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "A^-7 - A^-3 - A^5\n");
    let out = khoma(&["bracket", "--torus", "2,3", "--unreduced"]);
    assert_eq!(stdout(&out), "-A^-9 + A^-1 + A^3 + A^7\n");
    let out = khoma(&["bracket", "--pd", "O"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn bracket_oracle_agrees() {
    let out = khoma(&["bracket", "--pd", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", "--oracle"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("agree\n"));
}

#[test]
fn hopf_markdown() {
    let out = khoma(&["homology", "--torus", "2,2", "--format", "markdown"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("| b \\\\ a | -2 | 0 | 2 |\n"));
    assert_eq!(text.matches(" Z |").count(), 4);
}

#[test]
fn json_is_deterministic() {
    let a = khoma(&["homology", "--torus", "2,5", "--format", "json"]);
    let b = khoma(&["homology", "--torus", "2,5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with(r#"{"entries":[{"a":5,"b":9,"free":1,"torsion":[]}"#));
    assert_eq!(text.matches(r#""torsion":[2]"#).count(), 2);
}

#[test]
fn t2_12_json_rows() {
    let out = khoma(&["homology", "--torus", "2,12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let mut rows: Vec<i64> = entries.iter().map(|e| e["b"].as_i64().unwrap()).collect();
    rows.dedup();
    assert_eq!(rows.len(), 14);
    let torsion: Vec<i64> = entries
        .iter()
        .filter(|e| !e["torsion"].as_array().unwrap().is_empty())
        .map(|e| e["b"].as_i64().unwrap())
        .collect();
    assert_eq!(torsion, vec![4, -4, -12, -20, -28]);
}

#[test]
fn pd_file_and_matrix_dump() {
    let dir = tempfile::tempdir().unwrap();
    let pd = dir.path().join("in.pd");
    let dump = dir.path().join("d.txt");
    std::fs::write(&pd, "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n\nO\n").unwrap();
    let out = khoma(&[
        "homology",
        "--pd-file",
        pd.to_str().unwrap(),
        "--format",
        "csv",
        "--dump-matrices",
        dump.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("b \\ a").count(), 2);
    let text = std::fs::read_to_string(dump).unwrap();
    assert!(text.contains("# diagram 0 d(-1,-5) -> (-3,-5)\n3 3\n"));
}

#[test]
fn verify_reports() {
    let out = khoma(&["verify", "closedform", "--max-n", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "PASS T(2,6): 10 entries"));
    let last = text.lines().last().unwrap();
    let summary: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(summary["ok"], true);
}

#[test]
fn errors_exit_nonzero() {
    let out = khoma(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown verification suite"));
    let out = khoma(&["bracket", "--pd", "X(1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = khoma(&["bracket", "--torus", "3,4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = khoma(&["homology", "--torus", "2,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_khoma"))
        .args(["homology", "--torus", "2,4", "--format", "csv"])
        .env("KHOMA_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_khoma"))
        .args(["homology", "--torus", "2,4"])
        .env("KHOMA_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
