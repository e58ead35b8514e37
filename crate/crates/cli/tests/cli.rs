use std::path::PathBuf;

use assert_cmd::Command;

fn mipkit() -> Command {
    Command::cargo_bin("mipkit").unwrap()
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

fn stdout(args: &[&str]) -> (Option<i32>, String) {
    let out = mipkit().args(args).output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn witness_for_the_5_6_pair_passes() {
    let wit = root().join("fixtures/553_554.wit");
    let (code, out) = stdout(&[
        "smallalg",
        "verify",
        "catalog:5_6_553",
        "catalog:5_6_554",
        "--witness",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0));
    assert!(out.trim_end().ends_with("PASS"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn wrong_witness_fails_with_exit_1() {
    let dir = std::env::temp_dir().join(format!("mipkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let wit = dir.join("bad.wit");
    std::fs::write(
        &wit,
        "htilde1 = g1\nhtilde2 = g2\nhtilde3 = g3\nhtilde4 = g4\n",
    )
    .unwrap();
    let (code, out) = stdout(&[
        "--json",
        "smallalg",
        "verify",
        "catalog:5_6_553",
        "catalog:5_6_554",
        "--witness",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(1));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "FAIL");
}

#[test]
fn compare_5_6_pair_is_indistinguishable() {
    let (code, out) = stdout(&["--json", "compare", "catalog:5_6_553", "catalog:5_6_554"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "indistinguishable-by-battery");
    assert!(v["fields"]
        .as_array()
        .unwrap()
        .iter()
        .all(|f| f["status"] != "differs"));
}

#[test]
fn compare_distinguishes_c9_from_c3xc3() {
    let (code, out) = stdout(&["compare", "catalog:c9", "catalog:c3xc3"]);
    assert_eq!(code, Some(1));
    assert!(out.contains("verdict: distinguished"));
}

#[test]
fn missing_file_is_exit_2() {
    mipkit().args(["series", "nonexistent.pc"]).assert().code(2);
    mipkit()
        .args(["series", "catalog:nonexistent"])
        .assert()
        .code(2);
}

#[test]
fn parse_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("mipkit-cli-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.pc");
    std::fs::write(&f, "p 3\ngens 3\ncomm g2 g1 = g1\n").unwrap();
    let out = mipkit()
        .args(["series", f.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("line 3") && err.contains("non-weighted presentation"),
        "{err}"
    );
}

#[test]
fn inconsistent_presentation_is_exit_2() {
    let dir = std::env::temp_dir().join(format!("mipkit-cli-inc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("inc.pc");
    std::fs::write(&f, "p 3\ngens 3\npow g1 = g2\ncomm g2 g1 = g3\n").unwrap();
    mipkit()
        .args(["series", f.to_str().unwrap()])
        .assert()
        .code(2);
}

#[test]
fn brute_limit_is_a_resource_error() {
    mipkit()
        .env("MIPKIT_BRUTE_LIMIT", "4")
        .args(["algebra", "ideal-dims", "catalog:d8", "--max", "3"])
        .assert()
        .code(3);
    let (code, out) = stdout(&[
        "--json",
        "algebra",
        "ideal-dims",
        "catalog:d8",
        "--max",
        "5",
    ]);
    assert_eq!(code, Some(0));
    let dims: Vec<usize> = serde_json::from_str(&out).unwrap();
    assert_eq!(dims, [7, 5, 3, 1, 0]);
}

#[test]
fn invariants_json_matches_golden() {
    for g in ["heis3", "maxclass_3_4", "d8"] {
        let (code, out) = stdout(&["invariants", &format!("catalog:{g}"), "--json"]);
        assert_eq!(code, Some(0));
        assert_eq!(out, golden(&format!("invariants_{g}.json")), "{g}");
    }
    let (_, out) = stdout(&["--json", "obelisk", "catalog:obelisk_5_5_framed"]);
    assert_eq!(out, golden("obelisk_5_5_framed.json"));
}

#[test]
fn relabeled_file_gives_the_same_invariants() {
    let dir = std::env::temp_dir().join(format!("mipkit-cli-relabel-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for seed in ["1", "2"] {
        let (code, text) = stdout(&["relabel", "catalog:maxclass_3_4", "--seed", seed]);
        assert_eq!(code, Some(0));
        let f = dir.join(format!("r{seed}.pc"));
        std::fs::write(&f, text).unwrap();
        let (code, out) = stdout(&["invariants", f.to_str().unwrap(), "--json"]);
        assert_eq!(code, Some(0));
        assert_eq!(out, golden("invariants_maxclass_3_4.json"));
    }
}

#[test]
fn series_and_jennings_json() {
    let (code, out) = stdout(&["--json", "series", "catalog:d8"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lower_central"], serde_json::json!([3, 1, 0]));
    assert_eq!(v["dimension_subgroups"], serde_json::json!([3, 1, 0]));
    let (_, out) = stdout(&["--json", "jennings", "catalog:heis3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dims"], serde_json::json!([2, 1]));
}

#[test]
fn smallalg_check_passes_on_maximal_class_81() {
    let (code, out) = stdout(&["smallalg", "check", "catalog:maxclass_3_4"]);
    assert_eq!(code, Some(0));
    assert!(!out.contains("FAIL"), "{out}");
}

#[test]
fn smallalg_check_rejects_groups_outside_the_hypothesis() {
    // gamma_4 of the class 4 group is non-trivial
    mipkit()
        .args(["smallalg", "check", "catalog:maxclass_3_5"])
        .assert()
        .code(2);
}

#[test]
fn catalog_show_round_trips_through_the_parser() {
    let (code, text) = stdout(&["catalog", "show", "heis5"]);
    assert_eq!(code, Some(0));
    assert!(text.contains("p 5"));
    let (_, list) = stdout(&["catalog", "list"]);
    assert!(list.lines().count() >= 40);
    mipkit().args(["catalog", "show", "nope"]).assert().code(2);
}

#[test]
fn obelisk_search_is_seeded() {
    let a = stdout(&[
        "--json",
        "search-obelisks",
        "--p",
        "5",
        "--family",
        "class3",
        "--attempts",
        "5",
    ]);
    let b = stdout(&[
        "--json",
        "search-obelisks",
        "--p",
        "5",
        "--family",
        "class3",
        "--attempts",
        "5",
    ]);
    assert_eq!(a, b);
    assert_eq!(a.0, Some(0));
    mipkit()
        .args(["search-obelisks", "--p", "3"])
        .assert()
        .code(2);
}
