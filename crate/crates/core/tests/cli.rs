use std::path::Path;
use std::process::{Command, Output};

fn emrate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emrate"))
        .args(args)
        .env("EMRATE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn eval_f(line: &str) -> f64 {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix("f="))
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(emrate(&["--help"]).status.code(), Some(0));
    assert_eq!(emrate(&["--version"]).status.code(), Some(0));
    assert_eq!(emrate(&["curve", "--help"]).status.code(), Some(0));
}

#[test]
fn bad_invocations_exit_one() {
    for args in [
        vec!["frobnicate"],
        vec!["curve", "--q", "0.5"],
        vec!["figure", "--id", "9"],
        vec![
            "eval", "--q", "0.5", "--eps-re", "1.5", "--eps-im", "0.5", "--zeta-a", "0.4",
        ],
        vec![
            "eval", "--q", "0.5", "--eps-re", "1.5", "--eps-im", "-0.5", "--zeta-a", "1",
        ],
        vec![
            "eval", "--q", "0.5", "--eps-re", "1.5", "--zeta-a", "1", "--method", "magic",
        ],
        vec!["verify", "--suite", "everything"],
    ] {
        let out = emrate(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn bad_thread_setting_exits_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_emrate"))
        .args(["methods"])
        .env("EMRATE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn eval_prints_one_machine_readable_line() {
    let out = emrate(&["eval", "--q", "0.5", "--eps-re", "1", "--zeta-a", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("f=0 terms="), "{text}");
    assert!(text.trim_end().ends_with("converged=true"));
}

#[test]
fn point_scatterer_eval_matches_the_preset_curve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let out = emrate(&["figure", "--id", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&path);
    let row = table
        .iter()
        .skip(1)
        .min_by(|a, b| {
            let da = (a[0].parse::<f64>().unwrap() - 1.0).abs();
            let db = (b[0].parse::<f64>().unwrap() - 1.0).abs();
            da.total_cmp(&db)
        })
        .unwrap();
    let out = emrate(&[
        "eval", "--q", "0", "--eps-re", "1.5", "--eps-im", "0.5", "--zeta-a", &row[0],
    ]);
    assert_eq!(out.status.code(), Some(0));
    let f = eval_f(&stdout(&out));
    let expected: f64 = row[1].parse().unwrap();
    assert!(
        (f - expected).abs() < 1e-9 * expected.abs(),
        "{f} vs {expected}"
    );
}

#[test]
fn curve_with_two_points_has_three_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = emrate(&[
        "curve",
        "--q",
        "0.5",
        "--eps-re",
        "1.5",
        "--eps-im",
        "0.5",
        "--zeta-min",
        "1",
        "--zeta-max",
        "4",
        "--points",
        "2",
        "--grid",
        "log",
        "--orientation",
        "par",
        "--asymptotes",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&path);
    assert_eq!(table.len(), 3);
    assert_eq!(
        table[0].join(","),
        "zeta_a,f,f_asym_far,f_asym_near,terms_used,tail_estimate,converged"
    );
    assert_eq!(table[1][0], "1.00000000000e0");
    assert_eq!(table[2][0], "4.00000000000e0");
    for r in &table[1..] {
        assert_eq!(r.len(), 7);
        assert!(!r[2].is_empty() && !r[3].is_empty());
        assert_eq!(r[6], "true");
    }
}

#[test]
fn vacuum_curve_is_identically_zero() {
    let out = emrate(&[
        "curve",
        "--q",
        "0.5",
        "--eps-re",
        "1",
        "--zeta-min",
        "0.6",
        "--zeta-max",
        "3",
        "--points",
        "5",
        "--asymptotes",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<_> = line.split(',').collect();
        assert_eq!(fields[1], "0.00000000000e0");
        assert_eq!(fields[2], "0.00000000000e0");
        assert_eq!(fields[3], "");
    }
}

#[test]
fn unconverged_points_exit_two_and_are_still_written() {
    let out = emrate(&[
        "curve",
        "--q",
        "0.5",
        "--eps-re",
        "1.5",
        "--eps-im",
        "0.5",
        "--zeta-min",
        "0.6",
        "--zeta-max",
        "1",
        "--points",
        "3",
        "--lmax-cap",
        "4",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).any(|l| l.ends_with(",false")));
}

#[test]
fn unwritable_output_exits_one() {
    let out = emrate(&["figure", "--id", "1", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_writes_json_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = emrate(&[
        "verify",
        "--suite",
        "integrals",
        "--json-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let list = json.as_array().unwrap();
    assert_eq!(list.len(), 4);
    for item in list {
        for field in ["check_id", "max_rel_err", "tolerance", "passed", "samples"] {
            assert!(item.get(field).is_some(), "{field}");
        }
    }
}

#[test]
fn failing_verification_exits_nonzero() {
    let out = emrate(&[
        "verify",
        "--suite",
        "asymptotics",
        "--tol-override",
        "asymptotics.near_contact=1e-9",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAILED"));
}
