use std::io::Write;
use std::process::{Command, Output, Stdio};

use verma::format::{pbw_from_json, pbw_to_json, series_from_json};

fn verma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verma")).args(args).output().expect("binary runs")
}

fn verma_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_verma"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const SL4_VECTOR: &[&str] = &["singular", "--n", "4", "--root", "1,4", "--m", "1", "--lambda", "symbolic"];

#[test]
fn singular_sl4_latex() {
    let o = verma(&[SL4_VECTOR, &["--format", "latex"]].concat());
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).trim(),
        r"\left(\lambda_1^{2} + \lambda_1\lambda_2\right)E_{4,1}v_\lambda + \left(\lambda_1 + \lambda_2\right)E_{2,1}E_{4,2}v_\lambda + \lambda_1E_{3,1}E_{4,3}v_\lambda + E_{2,1}E_{3,2}E_{4,3}v_\lambda"
    );
    assert!(stderr(&o).is_empty());
}

#[test]
fn singular_sl4_text() {
    let o = verma(&[SL4_VECTOR, &["--format", "text"]].concat());
    assert_eq!(
        stdout(&o).trim(),
        "(l1^2 + l1*l2) E41 v + (l1 + l2) E21 E42 v + l1 E31 E43 v + E21 E32 E43 v"
    );
}

#[test]
fn singular_small_cases() {
    let o = verma(&["singular", "--n", "2", "--root", "1,2", "--m", "3", "--lambda", "3", "--format", "text"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "E21^3 v"));
    let o = verma(&["singular", "--n", "3", "--root", "1,3", "--m", "1", "--lambda", "1/2,1/2"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "1/2 E31 v + E21 E32 v"));
}

#[test]
fn monic_leading_matches_raw() {
    let raw = verma(&["singular", "--n", "3", "--root", "1,3", "--m", "2", "--lambda", "1/2,3/2"]);
    let monic = verma(&["singular", "--n", "3", "--root", "1,3", "--m", "2", "--lambda", "1/2,3/2", "--monic-leading"]);
    assert_eq!(code(&raw), 0);
    assert_eq!(stdout(&raw), stdout(&monic));
}

#[test]
fn pairing_violation_is_bad_input() {
    let o = verma(&["singular", "--n", "3", "--root", "1,3", "--m", "2", "--lambda", "1/2,1/3"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("5/6"), "{}", stderr(&o));
}

#[test]
fn solve_examples() {
    let o = verma(&["solve", "--n", "2", "--word", "1", "--lambda", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "x21^2\ncomplete: true\n");

    let o = verma(&["solve", "--n", "3", "--word", "1,2,1", "--lambda", "symbolic", "--bound", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("x21^(l1 + l2) x32^(l1 + l2) + (l1^2 + l1*l2) x21^(l1 + l2 - 1) x32^(l1 + l2 - 1) x31"));
    assert!(out.contains("x31^3") && !out.contains("x31^4"));
    assert!(out.ends_with("complete: false\n"));

    let o = verma(&["solve", "--n", "3", "--root", "1,3", "--lambda", "1/3,1/3", "--bound", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("complete: false\n"));
}

#[test]
fn solve_needs_bound_for_infinite_series() {
    let o = verma(&["solve", "--n", "3", "--root", "1,3", "--lambda", "1/3,1/3"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("bound"));
}

#[test]
fn solve_needs_exactly_one_target() {
    assert_eq!(code(&verma(&["solve", "--n", "3", "--lambda", "1,1"])), 2);
    assert_eq!(code(&verma(&["solve", "--n", "3", "--lambda", "1,1", "--word", "1", "--root", "1,2"])), 2);
}

#[test]
fn solve_json_round_trips() {
    let o = verma(&["solve", "--n", "3", "--word", "1,2", "--lambda", "symbolic", "--bound", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let (series, complete) = series_from_json(&stdout(&o)).unwrap();
    assert_eq!(complete, Some(true));
    assert_eq!(series.n(), 3);
}

#[test]
fn verify_sl4_vector_both_oracles() {
    let json = stdout(&verma(&[SL4_VECTOR, &["--format", "json"]].concat()));
    let o = verma_stdin(&["verify", "--n", "4", "--lambda", "1/4,1/4,1/2", "--vector", "-"], &json);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    for i in 1..=3 {
        assert!(out.contains(&format!("i={i} ug: 0")));
        assert!(out.contains(&format!("i={i} diff: 0")));
    }
    assert!(out.ends_with("singular: true\n"));
}

#[test]
fn verify_highest_weight_vector() {
    let o = verma_stdin(&["verify", "--n", "3", "--lambda", "2,5", "--vector", "-"], r#"[{"index":[],"coeff":[{"lambda":[],"value":"1"}]}]"#);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_reports_residual() {
    let e21 = r#"[{"index":[[2,1,1]],"coeff":[{"lambda":[],"value":"1"}]}]"#;
    for oracle in ["ug", "diff", "both"] {
        let o = verma_stdin(&["verify", "--n", "2", "--lambda", "2", "--vector", "-", "--oracle", oracle], e21);
        assert_eq!(code(&o), 1, "{oracle}");
        assert!(stdout(&o).ends_with("singular: false\n"));
    }
    let o = verma_stdin(&["verify", "--n", "2", "--lambda", "2", "--vector", "-", "--oracle", "ug"], e21);
    assert!(stdout(&o).contains("i=1 ug: v"), "{}", stdout(&o));
}

#[test]
fn verify_reads_files() {
    let path = std::env::temp_dir().join(format!("verma-cli-{}.json", std::process::id()));
    std::fs::write(&path, stdout(&verma(&["singular", "--n", "2", "--root", "1,2", "--m", "2", "--lambda", "2", "--format", "json"])))
        .unwrap();
    let o = verma(&["verify", "--n", "2", "--lambda", "2", "--vector", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_error_codes() {
    let args = ["verify", "--n", "3", "--lambda", "1,1", "--vector", "-"];
    assert_eq!(code(&verma_stdin(&args, "not json")), 3);
    assert_eq!(code(&verma_stdin(&args, r#"[{"index":[[1,2,1]],"coeff":[]}]"#)), 3);
    let mixed = r#"[{"index":[[2,1,1]],"coeff":[{"lambda":[],"value":"1"}]},{"index":[],"coeff":[{"lambda":[],"value":"1"}]}]"#;
    let o = verma_stdin(&args, mixed);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).is_empty());
    assert_eq!(code(&verma(&["verify", "--n", "3", "--lambda", "1,1", "--vector", "/nonexistent/v.json"])), 3);
}

#[test]
fn emitted_json_round_trips_bit_exactly() {
    for args in [
        SL4_VECTOR,
        &["singular", "--n", "3", "--root", "1,3", "--m", "2", "--lambda", "-1/2,5/2"],
        &["singular", "--n", "4", "--root", "2,4", "--m", "2", "--lambda", "symbolic"],
    ] {
        let text = stdout(&verma(&[args, &["--format", "json"]].concat()));
        let n: usize = args[2].parse().unwrap();
        let v = pbw_from_json(&text, n).unwrap();
        assert_eq!(pbw_to_json(&v), text.trim_end());
    }
}

#[test]
fn linkage_examples() {
    let o = verma(&["linkage", "--n", "2", "--lambda", "2", "--mu", "-2"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "e1-e2"));
    let o = verma(&["linkage", "--n", "3", "--lambda", "2,3", "--mu", "2,3"]);
    assert_eq!(stdout(&o).trim(), "(empty)");
    let o = verma(&["linkage", "--n", "2", "--lambda", "2", "--mu", "3"]);
    assert_eq!(stdout(&o).trim(), "none");
    let o = verma(&["linkage", "--n", "3", "--lambda", "2,3", "--orbit"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = verma(&["linkage", "--n", "3", "--lambda", "2,3", "--orbit", "--format", "json"]);
    let items: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(items.len(), 6);
}

#[test]
fn linkage_rejects_symbolic() {
    assert_eq!(code(&verma(&["linkage", "--n", "3", "--lambda", "symbolic", "--orbit"])), 2);
    assert_eq!(code(&verma(&["linkage", "--n", "3", "--lambda", "1,1", "--mu", "symbolic"])), 2);
}

#[test]
fn help_goes_to_stdout() {
    let o = verma(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("singular") && stderr(&o).is_empty());
    let o = verma(&["frobnicate"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty() && !stderr(&o).is_empty());
}
