use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lsa_core::bialgebroid::s_bracket;
use lsa_core::io::{read_algebroid, Reader};
use serde_json::Value;
use sha2::{Digest, Sha256};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn lsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsa"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = lsa(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().unwrap())
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn abelian_structure_passes() {
    let (r, code) = json(&["check-lsa", "abelian.json"]);
    assert_eq!(code, 0);
    assert_eq!(r["passed"], true);
    assert_eq!(r["command"], "check-lsa");
}

#[test]
fn non_left_symmetric_structure_fails_with_a_triple() {
    let (r, code) = json(&["check-lsa", "not_left_symmetric.json"]);
    assert_eq!(code, 1);
    let c = check(&r, "left-symmetric/associator-symmetry");
    assert_eq!(c["passed"], false);
    let inputs = c["witness"]["inputs"].as_str().unwrap();
    assert_eq!(inputs.matches('e').count(), 3, "{inputs}");
}

#[test]
fn malformed_file_is_an_input_error() {
    let out = lsa(&["check-lsa", "malformed.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("/products/1,3"));
}

#[test]
fn usage_and_io_errors_exit_with_two() {
    assert_eq!(lsa(&[]).status.code(), Some(2));
    assert_eq!(
        lsa(&["check-lsa", "abelian.json", "--no-such-flag"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(lsa(&["check-lsa", "missing.json"]).status.code(), Some(2));
    assert_eq!(lsa(&["search", "--dim", "5"]).status.code(), Some(2));
    assert_eq!(
        lsa(&["check-lsa", "point.json", "--max-degree", "0"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn degree_guard_rejects_large_inputs() {
    let out = lsa(&["check-lsa", "flat2.json", "--max-degree", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    std::fs::write(
        &path,
        r#"{"variables": ["x"], "rank": 1, "anchor": {"1": {"x": "x^9"}}}"#,
    )
    .unwrap();
    let out = lsa(&["check-lsa", path.to_str().unwrap(), "--max-degree", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/anchor/1/x"));
}

#[test]
fn report_lists_input_digests() {
    let (r, _) = json(&["check-bialgebroid", "point.json", "abelian.json"]);
    let inputs = r["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 2);
    let bytes = std::fs::read(fixtures().join("point.json")).unwrap();
    assert_eq!(inputs[0]["sha256"], hex::encode(Sha256::digest(&bytes)));
    assert_eq!(inputs[0]["name"], "point.json");
}

#[test]
fn overall_verdict_is_the_conjunction() {
    for args in [
        vec!["check-lsa", "flat2.json"],
        vec!["check-lsa", "not_left_symmetric.json"],
        vec!["mc", "point.json", "abelian.json", "h_offdiag.json"],
        vec!["hessian", "--metric", "metric_diag.json", "--vars", "x1,x2"],
    ] {
        let (r, code) = json(&args);
        let all = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["passed"] == true);
        assert_eq!(r["passed"], all);
        assert_eq!(code, if all { 0 } else { 1 });
    }
}

#[test]
fn off_diagonal_h_is_not_maurer_cartan() {
    let (r, code) = json(&["mc", "point.json", "abelian.json", "h_offdiag.json"]);
    assert_eq!(code, 1);
    let w = &check(&r, "maurer-cartan")["witness"];
    assert_eq!(w["inputs"], "(ε1, ε2, ε2)");
    assert_eq!(w["residual"], "1");
    assert_eq!(check(&r, "agreement")["passed"], true);
    let (r, code) = json(&["mc", "point.json", "abelian.json", "h_e1.json"]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn first_half_of_the_double_is_dirac() {
    let (r, code) = json(&["dirac", "double_point.json", "first_half.json"]);
    assert_eq!(code, 0, "{r}");
    // The constituents named by the file are digested too.
    assert_eq!(r["inputs"].as_array().unwrap().len(), 4);
    let (_, code) = json(&[
        "manin",
        "double_point.json",
        "first_half.json",
        "second_half.json",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn repeated_half_is_no_manin_triple() {
    let (r, code) = json(&[
        "manin",
        "double_point.json",
        "first_half.json",
        "first_half.json",
    ]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "manin/transversal")["passed"], false);
}

#[test]
fn written_double_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("double.json");
    let (r, code) = json(&[
        "double",
        "flat2.json",
        "zero_flat2.json",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{r}");
    let half = fixtures().join("first_half.json");
    let (r, code) = json(&["dirac", out.to_str().unwrap(), half.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn double_refuses_a_non_bialgebroid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("double.json");
    let (_, code) = json(&[
        "double",
        "not_left_symmetric.json",
        "abelian.json",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(!out.exists());
}

#[test]
fn cubic_potential_runs_the_whole_pipeline() {
    let (r, code) = json(&["hessian", "--potential", "x1^2*x2/2", "--vars", "x1,x2"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(check(&r, "pseudo-hessian/coboundary")["passed"], true);
    assert_eq!(check(&r, "pipeline/double/condition-ii")["passed"], true);
}

#[test]
fn non_hessian_metric_fails_with_the_coboundary_witness() {
    let (r, code) = json(&["hessian", "--metric", "metric_diag.json", "--vars", "x1,x2"]);
    assert_eq!(code, 1);
    let w = &check(&r, "pseudo-hessian/coboundary")["witness"];
    assert_eq!(
        (w["inputs"].as_str(), w["residual"].as_str()),
        (Some("(∂1, ∂2, ∂2)"), Some("1"))
    );
}

#[test]
fn degenerate_potential_is_an_input_error() {
    assert_eq!(
        lsa(&["hessian", "--potential", "x1 + x2", "--vars", "x1,x2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn line_search_finds_every_scalar_product() {
    let (r, code) = json(&["search", "--dim", "1", "--count", "5", "--density", "0.9"]);
    assert_eq!(code, 0);
    let mut lambdas: Vec<String> = r["output"]["instances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            f["algebra"]["products"]["1,1"]["1"]
                .as_str()
                .unwrap_or("0")
                .to_string()
        })
        .collect();
    lambdas.sort();
    assert_eq!(lambdas, ["-1", "-2", "0", "1", "2"]);
}

#[test]
fn searched_solutions_are_reverified() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    let (_, code) = json(&[
        "search",
        "--dim",
        "2",
        "--count",
        "5",
        "--seed",
        "7",
        "--mc",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let catalog: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let items = catalog["instances"].as_array().unwrap();
    assert_eq!(items.len(), 5);
    for item in items {
        let alg = read_algebroid(&item["algebra"], 64).unwrap();
        assert!(alg.check_left_symmetric().passed());
        let h = Reader::new(alg.vars().clone(), 64)
            .sym_tensor(&item["h"], 2, "")
            .unwrap();
        assert!(s_bracket(&alg, &h).unwrap().is_zero());
    }
}

#[test]
fn text_report_ends_with_the_verdict() {
    let out = lsa(&["check-lsa", "not_left_symmetric.json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().starts_with("FAIL"));
    assert!(text.contains("FAIL left-symmetric/associator-symmetry at (e1, e2, e1)"));
}
