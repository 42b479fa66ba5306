mod common;

use std::path::Path;

use kdd_ffr::cli::main as run;
use kdd_ffr::evaluation::EvalReport;

use common::fixture_path;

fn fixture() -> String {
    fixture_path().to_str().unwrap().to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(run(["kdd-ffr", "--help"]), 0);
    assert_eq!(run(["kdd-ffr", "--version"]), 0);
    assert_eq!(run(["kdd-ffr", "frobnicate"]), 1);
    assert_eq!(run(["kdd-ffr", "bench", "--bogus"]), 1);
    assert_eq!(run(["kdd-ffr"]), 1);
}

#[test]
fn missing_input_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    assert_eq!(run(["kdd-ffr", "bench", "--data", "/nonexistent/kdd.csv", "--out", p(&out)]), 2);
    assert!(!out.exists());
}

#[test]
fn bad_argument_values_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let code = run(["kdd-ffr", "select", "--data", &fixture(), "--method", "ffr", "--count", "99", "--out", p(&out)]);
    assert_eq!(code, 1);
}

#[test]
fn bench_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let code = run([
        "kdd-ffr", "bench", "--data", &fixture(), "--counts", "10,20", "--folds", "3", "--seed", "42", "--out", p(&report),
    ]);
    assert_eq!(code, 0);
    let parsed: EvalReport = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed.cells.len(), 2 * (1 + 4 * 2));
    assert_eq!(parsed.config.seed, 42);
    assert_eq!(parsed.dataset.rows, 1000);

    let md = dir.path().join("report.md");
    assert_eq!(run(["kdd-ffr", "report", "--in", p(&report), "--format", "markdown", "--out", p(&md)]), 0);
    let text = std::fs::read_to_string(&md).unwrap();
    assert!(text.contains("| Over all |"));
    assert_eq!(run(["kdd-ffr", "report", "--in", p(&report), "--format", "yaml"]), 1);

    let mut names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names, ["report.json", "report.md"]);
}

#[test]
fn select_similarity_ingest_classify() {
    let dir = tempfile::tempdir().unwrap();
    let sel = dir.path().join("sel.json");
    let scores = dir.path().join("scores.csv");
    assert_eq!(
        run(["kdd-ffr", "select", "--data", &fixture(), "--method", "ffr", "--count", "10", "--dump-scores", p(&scores), "--out", p(&sel)]),
        0
    );
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&sel).unwrap()).unwrap();
    assert_eq!(json["kept"].as_array().unwrap().len(), 10);
    assert_eq!(json["names"].as_array().unwrap().len(), 10);
    assert_eq!(json["config"]["input"]["seed"], 42);
    let score_csv = std::fs::read_to_string(&scores).unwrap();
    assert_eq!(score_csv.lines().count(), 42);
    assert!(score_csv.starts_with("feature_index,name,mean_normal,mean_dos,mean_probe,mean_r2l,mean_u2r,score"));

    let mici = dir.path().join("mici.json");
    assert_eq!(run(["kdd-ffr", "select", "--data", &fixture(), "--method", "mici", "--count", "20", "--out", p(&mici)]), 0);

    let sim = dir.path().join("sim.csv");
    assert_eq!(run(["kdd-ffr", "similarity", "--data", &fixture(), "--measure", "lsre", "--out", p(&sim)]), 0);
    let sim_text = std::fs::read_to_string(&sim).unwrap();
    assert!(sim_text.starts_with("# kdd-ffr similarity"));
    assert_eq!(sim_text.lines().count(), 1 + 1 + 41);

    let matrix = dir.path().join("matrix.csv");
    assert_eq!(run(["kdd-ffr", "ingest", "--data", &fixture(), "--subsample", "100", "--out", p(&matrix)]), 0);
    let lines: Vec<String> = std::fs::read_to_string(&matrix).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 2 + 100);
    assert!(lines[1].starts_with("duration,protocol_type,service,flag"));

    let preds = dir.path().join("preds.csv");
    assert_eq!(
        run(["kdd-ffr", "classify", "--data", &fixture(), "--classifier", "knn", "--k", "3", "--features", p(&sel), "--out", p(&preds)]),
        0
    );
    let text = std::fs::read_to_string(&preds).unwrap();
    assert_eq!(text.lines().count(), 2 + 1000);
    assert_eq!(text.lines().nth(1).unwrap(), "sample_index,true_category,predicted_category");

    let held = dir.path().join("held.csv");
    assert_eq!(
        run(["kdd-ffr", "classify", "--data", &fixture(), "--test", &fixture(), "--classifier", "bayes", "--out", p(&held)]),
        0
    );
    assert_eq!(std::fs::read_to_string(&held).unwrap().lines().count(), 2 + 1000);
}

#[test]
fn thread_count_does_not_change_selection() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out = dir.path().join(format!("sel{threads}.json"));
        assert_eq!(
            run(["kdd-ffr", "--threads", threads, "select", "--data", &fixture(), "--method", "cc", "--count", "10", "--out", p(&out)]),
            0
        );
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        v["elapsed_seconds"] = 0.into();
        outputs.push(v);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(run(["kdd-ffr", "--threads", "0", "select", "--data", &fixture(), "--method", "cc", "--count", "10", "--out", "/dev/null"]), 1);
}
