use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prodlabel"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn complete_three() {
    let out = run(&["label", "--alg", "complete", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["verdicts"]["one-edge"], true);
    assert_eq!(r["labelling"]["edges"], serde_json::json!([[0, 1, 1], [0, 2, 2], [1, 2, 2]]));
}

#[test]
fn auto_on_k4_is_four_chromatic_and_verifies() {
    let dir = TempDir::new().unwrap();
    let k4 = write(dir.path(), "k4.g6", "C~\n");
    let report = dir.path().join("report.json");
    let out = run(&["label", "--alg", "auto", "--in", s(&k4), "--out", s(&report)]);
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["algorithm"], "four-chromatic");
    assert_eq!(r["verdicts"]["p-proper"], true);
    let v = run(&["verify", "--graph", s(&k4), "--labelling", s(&report), "--require", "p-proper"]);
    assert_eq!(code(&v), 0);
}

#[test]
fn bipartite_on_triangle_is_a_precondition_error() {
    let dir = TempDir::new().unwrap();
    let k3 = write(dir.path(), "k3.g6", "Bw\n");
    let out = run(&["label", "--alg", "bipartite", "--in", s(&k3)]);
    assert_eq!(code(&out), 2);
    let r = json(&out);
    assert!(r["error"].as_str().unwrap().contains("odd cycle"));
}

#[test]
fn label_reports_round_trip_through_verify() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("generic", "s1-matching", "E~~w"),
        ("generic", "s1-matching", "FhCKG"),
        ("total", "p-proper", "E~~w"),
        ("subcubic", "forests", "I?h]@eOWG"),
        ("bipartite", "one-star", "Es\\o"),
        ("four-chromatic", "p-proper", "EUZw"),
    ];
    for (i, (alg, require, g6)) in cases.iter().enumerate() {
        let g = write(dir.path(), &format!("g{i}.g6"), g6);
        let report = dir.path().join(format!("r{i}.json"));
        let out = run(&["label", "--alg", alg, "--in", s(&g), "--out", s(&report)]);
        assert_eq!(code(&out), 0, "{alg} on {g6}: {}", String::from_utf8_lossy(&out.stderr));
        let v = run(&["verify", "--graph", s(&g), "--labelling", s(&report), "--require", require]);
        assert_eq!(code(&v), 0, "{alg} on {g6} does not verify as {require}");
    }
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let k3 = write(dir.path(), "k3.g6", "Bw\n");
    let good = write(dir.path(), "good.json", r#"{"schema":1,"k":3,"edges":[[0,1,1],[0,2,2],[1,2,3]]}"#);
    let ones = write(dir.path(), "ones.json", r#"{"schema":1,"k":3,"edges":[[0,1,1],[0,2,1],[1,2,1]]}"#);
    let partial = write(dir.path(), "partial.json", r#"{"schema":1,"k":3,"edges":[[0,1,1],[0,2,1]]}"#);

    let ok = run(&["verify", "--graph", s(&k3), "--labelling", s(&good), "--require", "p-proper"]);
    assert_eq!(code(&ok), 0);

    let cyc = run(&["verify", "--graph", s(&k3), "--labelling", s(&ones), "--require", "forests"]);
    assert_eq!(code(&cyc), 1);
    let r = json(&cyc);
    assert_eq!(r["violating_classes"][0]["product"], "1");
    assert_eq!(r["violating_classes"][0]["shape"], "cyclic");

    let missing = run(&["verify", "--graph", s(&k3), "--labelling", s(&partial), "--require", "forests"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn oracle_queries() {
    let dir = TempDir::new().unwrap();
    let p3 = write(dir.path(), "p3.edges", "0 1\n1 2\n");
    let k2 = write(dir.path(), "k2.g6", "A_\n");
    let k3 = write(dir.path(), "k3.g6", "Bw\n");
    let k4 = write(dir.path(), "k4.g6", "C~\n");

    let out = run(&["oracle", "--param", "chi-p", "--in", s(&p3)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["value"], 2);

    let out = run(&["oracle", "--param", "chi-p", "--in", s(&k2)]);
    assert_eq!(json(&out)["result"]["value"], "undefined (not nice)");

    let out = run(&["oracle", "--param", "forest2", "--in", s(&k3)]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["result"]["witness"].is_object());

    let out = run(&["oracle", "--param", "chi-p", "--in", s(&k4), "--max-nodes", "3"]);
    assert_eq!(code(&out), 4);

    let out = run(&["oracle", "--param", "regular-obs", "--in", s(&p3)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweeps_over_the_builtin_enumerator() {
    let dir = TempDir::new().unwrap();
    for check in ["p123", "weak-forest"] {
        let csv = dir.path().join(format!("{check}.csv"));
        let out = run(&["sweep", "--check", check, "--max-n", "6", "--csv", s(&csv)]);
        assert_eq!(code(&out), 0, "{check}");
        let text = fs::read_to_string(&csv).unwrap();
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(rows.len(), 143);
        assert!(rows.iter().all(|r| r.contains(",pass,") || r.contains("skipped: not nice")));
    }
    let out = run(&["sweep", "--check", "p123", "--max-n", "9"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn stream_rows_and_strict_mode() {
    let dir = TempDir::new().unwrap();
    let anomalies = dir.path().join("anomalies");
    let args = ["sweep", "--check", "p123", "--anomaly-dir", s(&anomalies)];
    let out = run_with_stdin(&args, "A_\nBw\nnot-a-graph\n");
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id,graph6,n,m,verdict,value,nodes,ms");
    assert!(lines[1].starts_with("0,A_,2,1,skipped: not nice,"));
    assert!(lines[2].starts_with("1,Bw,3,3,pass,3,"));
    assert!(lines[3].contains("skipped: malformed"));
    assert!(!anomalies.exists());

    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(code(&run_with_stdin(&strict, "Bw\nnot-a-graph\n")), 2);
}

#[test]
fn sweep_output_does_not_depend_on_jobs() {
    let strip_ms = |o: Output| -> Vec<String> {
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    let one = strip_ms(run(&["sweep", "--check", "total", "--max-n", "6", "--jobs", "1"]));
    let four = strip_ms(run(&["sweep", "--check", "total", "--max-n", "6", "--jobs", "4"]));
    assert_eq!(one, four);
    assert_eq!(one.len(), 144);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["label"])), 2);
    assert_eq!(code(&run(&["label", "--alg", "nonsense", "--n", "3"])), 2);
    assert_eq!(code(&run(&["label", "--alg", "generic", "--n", "3"])), 2);
}
