//! End-to-end runs of the `kenmotsu` binary: exit codes, report formats
//! and manifold files read from disk.

use std::io::Write;
use std::process::{Command, Output};

use kenmotsu_cli::manifest::KENMOTSU3;
use kenmotsu_cli::{Report, Status};
use sha2::{Digest, Sha256};

const POTENTIAL: &str = "2*f1*@f1 + 2*f2*@f2 + f3*@f3";

fn kenmotsu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kenmotsu"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn manifold_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = kenmotsu(&all);
    let report = Report::from_json(&stdout(&out)).unwrap_or_else(|e| panic!("{e}\n{}", stderr(&out)));
    (code(&out), report)
}

#[test]
fn example_passes_and_unknown_example_is_usage() {
    let out = kenmotsu(&["example", "kenmotsu3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("14 pass, 0 fail, 0 error, 0 skipped"));
    let out = kenmotsu(&["example", "nope"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown example"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&kenmotsu(&[])), 2);
    assert_eq!(code(&kenmotsu(&["check"])), 2);
    assert_eq!(code(&kenmotsu(&["connection", "kenmotsu3"])), 2);
    assert_eq!(code(&kenmotsu(&["connection", "kenmotsu3", "--cl"])), 2);
    assert_eq!(
        code(&kenmotsu(&[
            "soliton",
            "kenmotsu3",
            "--kind",
            "bogus",
            "--potential",
            "xi"
        ])),
        2
    );
    assert_eq!(code(&kenmotsu(&["--version"])), 0);
    assert_eq!(code(&kenmotsu(&["--help"])), 0);
}

#[test]
fn json_report_round_trips() {
    let out = kenmotsu(&["--json", "check", "kenmotsu3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.to_json(), text.trim_end());
    assert_eq!(report.fixture.as_deref(), Some("kenmotsu3"));
    assert!(report.checks.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn file_input_matches_fixture_and_digest() {
    let file = manifold_file(KENMOTSU3);
    let path = file.path().to_str().unwrap();
    let (code, from_file) = json(&["check", path]);
    assert_eq!(code, 0);
    let (_, builtin) = json(&["check", "kenmotsu3"]);
    assert_eq!(from_file.checks, builtin.checks);
    assert_eq!(from_file.fixture, None);
    let hex: String = Sha256::digest(KENMOTSU3.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let digest = format!("sha256:{hex}");
    assert_eq!(from_file.input, digest);
    assert_eq!(builtin.input, digest);
}

#[test]
fn missing_file_is_input_error() {
    let out = kenmotsu(&["check", "/nonexistent/manifold.txt"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("/nonexistent/manifold.txt"));
}

#[test]
fn parse_errors_report_line_and_column() {
    let file = manifold_file("dim 3\ncoords x y z\nmetric g x x = 1/q\n");
    let out = kenmotsu(&["check", file.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(stderr(&out).trim(), "error: line 3, column 18: unknown identifier `q`");

    let file = manifold_file("dim 3\ncoords x y z\nwarp 7\n");
    let out = kenmotsu(&["check", file.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn singular_frame_and_metric_exit_3() {
    let file =
        manifold_file("dim 3\ncoords f1 f2 f3\nframe T1 = @f1\nframe T2 = @f1\nframe T3 = @f3\nmetric orthonormal\n");
    let out = kenmotsu(&["check", file.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("singular"));

    let file = manifold_file("dim 3\ncoords x y z\nmetric g x x = 1\nmetric g y y = 1\n");
    let out = kenmotsu(&["check", file.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn flat_space_fails_kenmotsu_checks() {
    let (code, r) = json(&["check", "euclid3"]);
    assert_eq!(code, 1);
    assert_eq!(r.get("nabla-xi").unwrap().status, Status::Fail);
    assert_eq!(r.get("star-ricci").unwrap().status, Status::Skipped);
}

#[test]
fn soliton_solve_and_residuals() {
    let (code, r) = json(&[
        "soliton",
        "kenmotsu3",
        "--kind",
        "star-eta-schouten",
        "--potential",
        POTENTIAL,
    ]);
    assert_eq!(code, 0);
    let solve = r.get("soliton-solve").unwrap();
    assert_eq!(solve.values["β"], "-1/2");
    assert_eq!(solve.values["μ"], "0");

    let base = [
        "soliton",
        "kenmotsu3",
        "--kind",
        "star-eta-schouten",
        "--potential",
        POTENTIAL,
    ];
    let (code, r) = json(&[&base[..], &["--beta", "-1/2", "--mu", "0"]].concat());
    assert_eq!(code, 0);
    assert_eq!(r.get("soliton-residual").unwrap().status, Status::Pass);
    let (code, r) = json(&[&base[..], &["--beta", "0", "--mu", "0"]].concat());
    assert_eq!(code, 1);
    assert_eq!(
        r.get("soliton-residual").unwrap().values["residual (frame)"],
        "diag(1, 1, 1)"
    );
}

#[test]
fn bad_potential_is_input_error() {
    let out = kenmotsu(&["soliton", "kenmotsu3", "--kind", "ricci", "--potential", "2*q*@f1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("q"));
}

#[test]
fn connection_reports() {
    let (code, r) = json(&["connection", "kenmotsu3", "--cl", "--rho", "eta", "--alpha", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r.get("b-tensor").unwrap().values["B (frame)"], "diag(1, 1, -1)");

    let (code, r) = json(&["connection", "kenmotsu3", "--svk"]);
    assert_eq!(code, 0);
    assert_eq!(r.get("svk-ricci").unwrap().values["S~ (frame)"], "diag(0, 0, 0)");
}

/// The Schouten–Van Kampen soliton residual at the Levi-Civita solution
/// is `3g` away from the Levi-Civita residual plus the invariance
/// residual, so the check reports a failure.
#[test]
fn svk_soliton_check_reports_its_residual() {
    let (code, r) = json(&[
        "connection",
        "kenmotsu3",
        "--svk",
        "--potential",
        POTENTIAL,
        "--beta",
        "-1/2",
        "--mu",
        "0",
    ]);
    assert_eq!(code, 1);
    let c = r.get("svk-soliton").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.values["residual - LC - invariance (frame)"], "diag(3, 3, 3)");
}
