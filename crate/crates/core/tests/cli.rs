use std::path::PathBuf;
use std::process::{Command, Output};

use pglcent::cli::{ReportJson, SuiteJson};

fn pglcent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pglcent"))
        .args(args)
        .output()
        .unwrap()
}

fn problem(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn paper_text_matches_golden() {
    let out = pglcent(&["paper"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), include_str!("golden/paper.txt"));
}

#[test]
fn runs_are_byte_identical() {
    for format in ["text", "json"] {
        let a = pglcent(&["paper", "--format", format, "--seed", "11"]);
        let b = pglcent(&["paper", "--format", format, "--seed", "11"]);
        assert_eq!(a.stdout, b.stdout);
    }
    let p = problem(
        "heis.txt",
        "order = 3\ngen = [[1,0,0],[0,z,0],[0,0,z^2]]\ngen = [[0,1,0],[0,0,1],[1,0,0]]\n",
    );
    let p = p.to_str().unwrap();
    let a = pglcent(&[
        "component-group",
        "--input",
        p,
        "--format",
        "json",
        "--seed",
        "5",
    ]);
    let b = pglcent(&[
        "component-group",
        "--input",
        p,
        "--format",
        "json",
        "--seed",
        "5",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn injected_wrong_expectation_fails() {
    let out = pglcent(&["paper", "--expect", "steinberg3=Z/3Z"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let row = text.lines().find(|l| l.starts_with("steinberg3")).unwrap();
    assert!(row.trim_end().ends_with("no"));
}

#[test]
fn json_and_text_tables_agree() {
    let json: SuiteJson =
        serde_json::from_str(&stdout(&pglcent(&["paper", "--format", "json"]))).unwrap();
    let text = stdout(&pglcent(&["paper"]));
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .map(|l| l.split('|').map(|c| c.trim().to_string()).collect())
        .collect();
    assert_eq!(rows.len(), json.cases.len());
    assert_eq!(rows.len(), 6);
    assert!(json.all_match);
    for (row, case) in rows.iter().zip(&json.cases) {
        let nonempty: Vec<String> = case
            .strata
            .iter()
            .filter(|s| s.witness.is_some())
            .map(|s| {
                let e: Vec<String> = s.twist.iter().map(u32::to_string).collect();
                format!("({})", e.join(","))
            })
            .collect();
        assert_eq!(row[0], case.case);
        assert_eq!(row[1], case.centralizer_dim.to_string());
        assert_eq!(row[2], format!("{{{}}}", nonempty.join(",")));
        assert_eq!(row[3], case.iso_label);
        assert_eq!(row[4], if case.matches_paper { "yes" } else { "no" });
    }
    let labels: Vec<&str> = json.cases.iter().map(|c| c.iso_label.as_str()).collect();
    assert_eq!(
        labels,
        ["trivial", "Z/3Z", "trivial", "trivial", "trivial", "trivial"]
    );
}

#[test]
fn cube_root_report() {
    let p = problem(
        "cube.txt",
        "order = 3\ndim = 3\ngen = [[z,0,0],[0,z^2,0],[0,0,1]]\n",
    );
    let p = p.to_str().unwrap();
    let out = pglcent(&["component-group", "--input", p, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let raw = stdout(&out);
    assert!(raw.contains("\"invariant_factors\": [\n    3\n  ]"));
    let report: ReportJson = serde_json::from_str(&raw).unwrap();
    assert_eq!(report.invariant_factors, vec![3]);
    let twists: Vec<Vec<u32>> = report.strata.iter().map(|s| s.twist.clone()).collect();
    assert_eq!(twists, vec![vec![0], vec![1], vec![2]]);
    assert_eq!(
        report.strata[1].witness.as_deref(),
        Some("[[0,1,0],[0,0,1],[1,0,0]]")
    );
    let text = stdout(&pglcent(&["component-group", "--input", p]));
    assert!(text.contains("component group: Z/3Z"));
}

#[test]
fn trivial_report_text() {
    let p = problem(
        "ps.txt",
        "family = principal-series; a1 = 2; a2 = 3\nexpected = trivial\n",
    );
    let out = pglcent(&["component-group", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("component group: trivial"));
}

#[test]
fn centralizer_subcommand() {
    let p = problem("st3.txt", "family = steinberg3\n");
    let out = pglcent(&["centralizer", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("centralizer dim: 1"));
    assert!(text.contains("invertible element: [[1,0,0],[0,1,0],[0,0,1]]"));
}

#[test]
fn exit_codes() {
    let code = |name: &str, text: &str| {
        let p = problem(name, text);
        pglcent(&["component-group", "--input", p.to_str().unwrap()])
            .status
            .code()
    };
    assert_eq!(code("ok.txt", "gen = [[0,1],[1,0]]"), Some(0));
    assert_eq!(
        code("singular.txt", "dim = 2\ngen = [[1,1],[2,2]]"),
        Some(1)
    );
    assert_eq!(code("shape.txt", "dim = 3\ngen = [[1,0],[0,1]]"), Some(1));
    assert_eq!(
        code("mismatch.txt", "family = steinberg3\nexpected = Z/3Z"),
        Some(1)
    );
    assert_eq!(code("syntax.txt", "gen = [[1,0],[0,1]"), Some(2));
    assert_eq!(code("token.txt", "gen = [[1,0],[0,y]]"), Some(2));
    assert_eq!(code("family.txt", "family = supercuspidal"), Some(2));
    let missing = pglcent(&["component-group", "--input", "/nonexistent/problem.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn parse_errors_report_position() {
    let p = problem("pos.txt", "order = 3\n\ngen = [[1,0],[0,1 +]]\n");
    let out = pglcent(&["component-group", "--input", p.to_str().unwrap()]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column"), "{err}");
}
