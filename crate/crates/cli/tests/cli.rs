use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ncpara::formats::{parse_gold_file, parse_system_output};
use ncpara_core::scoring::score_system;
use ncpara_core::{Mode, ScoringConfig};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn ncpara(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncpara"))
        .args(args)
        .env_remove(ncpara::DETERMINERS_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compile_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gold.tsv");
    let o = ncpara(&["compile", s(&fixture("raw.tsv")), "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "air\tfilter\t0\t3\tfilter for air\nair\tfilter\t1\t2\tfilter of air\nair\tfilter\t2\t1\tfilter that cleans air\n"
    );
}

#[test]
fn compile_warns_on_ill_formed() {
    let o = ncpara(&["compile", s(&fixture("raw_bad.tsv"))]);
    assert_eq!(o.status.code(), Some(0));
    let err = stderr(&o);
    assert_eq!(err.lines().filter(|l| l.starts_with("warning:")).count(), 1, "{err}");
    assert!(err.contains("line 3") && err.contains("no-linking-phrase"), "{err}");
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn compile_empty_fails() {
    let o = ncpara(&["compile", s(&fixture("empty.tsv"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no records"), "{}", stderr(&o));
    let o = ncpara(&["compile", "/nonexistent/raw.tsv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_reports_each_line() {
    let o = ncpara(&["validate", s(&fixture("raw_bad.tsv"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    let bad: Vec<&str> = out.lines().filter(|l| l.contains("invalid")).collect();
    assert_eq!(bad.len(), 1);
    assert!(bad[0].starts_with("line 3: invalid: no-linking-phrase"), "{}", bad[0]);
}

#[test]
fn verbatim_gold_submission() {
    let o = ncpara(&["score", "--gold", s(&fixture("gold5.tsv")), "--system", s(&fixture("gold5_system.tsv"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    // iso recovers every entry; noniso is the mean rank multiplier per compound
    let m = |r: f64| 8.0 / (8.0 + r);
    let per_compound = [
        (m(0.0) + m(1.0) + m(2.0) + m(2.0)) / 4.0,
        (m(0.0) + m(1.0)) / 2.0,
        (m(0.0) + m(1.0) + m(2.0)) / 3.0,
        (m(0.0) + m(0.0) + m(1.0) + m(1.0)) / 4.0,
        (m(0.0) + m(1.0)) / 2.0,
    ];
    let noniso = per_compound.iter().sum::<f64>() / 5.0;
    assert_eq!(row.split('\t').nth(1).unwrap(), format!("100.0 / {}", ncpara::report::percent(noniso)), "{out}");
}

#[test]
fn baseline_scores_match_library() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("baseline.tsv");
    let gold = fixture("gold5.tsv");
    let o = ncpara(&["baseline", "--gold", s(&gold), "--out", s(&base)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&base).unwrap().lines().count(), 50);

    let o = ncpara(&["score", "--gold", s(&gold), "--system", s(&base), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();

    let gold_lists = parse_gold_file(std::fs::read(&gold).unwrap().as_slice()).unwrap();
    let sub = parse_system_output(std::fs::read(&base).unwrap().as_slice()).unwrap();
    let rep = score_system(&sub, &gold_lists, Mode::Both, &ScoringConfig::default()).unwrap();
    assert_eq!(doc["systems"][0]["iso"].as_f64(), rep.iso);
    assert_eq!(doc["systems"][0]["noniso"].as_f64(), rep.noniso);
    assert!(rep.iso.unwrap() > 0.0 && rep.noniso.unwrap() > rep.iso.unwrap());
}

#[test]
fn two_systems_keep_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("baseline.tsv");
    let gold = fixture("gold5.tsv");
    assert!(ncpara(&["baseline", "--gold", s(&gold), "-o", s(&base)]).status.success());
    let perfect = fixture("gold5_system.tsv");
    let o = ncpara(&["score", "--gold", s(&gold), "--system", s(&base), "--system", s(&perfect)]);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with(s(&base)));
    assert!(rows[1].starts_with(s(&perfect)));
}

#[test]
fn output_is_deterministic() {
    let (gold, sys) = (fixture("gold5.tsv"), fixture("gold5_system.tsv"));
    let args = ["score", "--gold", s(&gold), "--system", s(&sys), "--format", "json", "--per-compound"];
    let a = ncpara(&args);
    let b = ncpara(&args);
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["systems"][0]["compounds"].as_array().unwrap().len(), 5);
}

#[test]
fn malformed_system_names_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tsv");
    std::fs::write(&bad, "air\tfilter\t1\tfilter of air\nair\tfilter\ttwo\tfilter in air\n").unwrap();
    let o = ncpara(&["score", "--gold", s(&fixture("gold5.tsv")), "--system", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("bad.tsv") && err.contains("line 2"), "{err}");
}

#[test]
fn config_errors_exit_3() {
    let gold = fixture("gold5.tsv");
    let sys = fixture("gold5_system.tsv");
    let o = ncpara(&["score", "--gold", s(&gold), "--system", s(&sys), "--rank-r", "0"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = ncpara(&["score", "--gold", s(&gold), "--system", s(&sys), "--rank-r", "-2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = ncpara(&["score", "--gold", s(&gold), "--system", s(&sys), "--mode", "bogus"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn modes_and_formats() {
    let gold = fixture("gold5.tsv");
    let sys = fixture("gold5_system.tsv");
    let o = ncpara(&[
        "score",
        "--gold",
        s(&gold),
        "--system",
        s(&sys),
        "--mode",
        "iso",
        "--format",
        "tsv",
        "--per-compound",
    ]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "system\tcompound\tiso\tnoniso");
    assert!(lines[1].ends_with("\tALL\t100.0\t-"), "{out}");
    assert_eq!(lines.len(), 7);
}

#[test]
fn determiners_from_env_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold.tsv");
    let sys = dir.path().join("sys.tsv");
    std::fs::write(&gold, "air\tfilter\t0\t1\tfilter for air\n").unwrap();
    std::fs::write(&sys, "air\tfilter\t1\tthat filter for air\n").unwrap();
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_ncpara"));
        cmd.args(["score", "--gold", s(&gold), "--system", s(&sys)]).args(extra);
        match env {
            Some(v) => cmd.env(ncpara::DETERMINERS_ENV, v),
            None => cmd.env_remove(ncpara::DETERMINERS_ENV),
        };
        stdout(&cmd.output().unwrap())
    };
    assert!(!run(None, &[]).contains("100.0 / 100.0"));
    assert!(run(Some("a,the,that"), &[]).contains("100.0 / 100.0"));
    assert!(!run(Some("a,the,that"), &["--determiners", "a,the"]).contains("100.0 / 100.0"));
}

#[test]
fn baseline_from_compound_list() {
    let o = ncpara(&["baseline", "--compounds", s(&fixture("compounds.txt"))]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 20);
    assert_eq!(out.lines().next().unwrap(), "air\tfilter\t1\tfilter of air");
    assert_eq!(out.lines().nth(10).unwrap(), "work\tarea\t1\tarea of work");
    assert_eq!(ncpara(&["baseline", "--compounds", "/nonexistent"]).status.code(), Some(2));
}

#[test]
fn trained_baseline_cli() {
    let o = ncpara(&[
        "baseline",
        "--compounds",
        s(&fixture("compounds.txt")),
        "--train-gold",
        s(&fixture("gold5.tsv")),
        "--top-k",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    // "for" carries 4 + 2 + 1 annotations across the fixture
    assert_eq!(out.lines().next().unwrap(), "air\tfilter\t1\tfilter for air");
}

#[test]
fn stats_layout() {
    let o = ncpara(&["stats", "--gold", s(&fixture("gold5.tsv"))]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("Gold (5 NCs)"));
    assert!(lines[1].starts_with("paraphrases") && lines[1].ends_with("4 / 8 / 6.0"), "{out}");
    assert!(lines[2].starts_with("unique paraphrases") && lines[2].ends_with("2 / 4 / 3.0"), "{out}");

    let o = ncpara(&["stats", "--gold", s(&fixture("gold5.tsv")), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["paraphrases"]["total"], 30);
    assert_eq!(doc["unique_paraphrases"]["total"], 15);
}
