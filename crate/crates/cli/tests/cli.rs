use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn nbhl(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbhl"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_train_predict_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = nbhl(
        &[
            "generate",
            "moons",
            "--n",
            "60",
            "--noise",
            "0.1",
            "--seed",
            "3",
            "--out",
            "train.csv",
        ],
        d,
    );
    assert!(o.status.success(), "{o:?}");
    let csv = std::fs::read_to_string(d.join("train.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("x0,x1,label"));
    assert_eq!(csv.lines().count(), 61);

    let o = nbhl(
        &[
            "train",
            "train.csv",
            "--k",
            "5",
            "--e",
            "0.5",
            "--b",
            "5",
            "--out",
            "model.json",
            "--json",
        ],
        d,
    );
    assert!(o.status.success(), "{o:?}");
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["instances"], 60);

    let o = nbhl(
        &[
            "generate", "moons", "--n", "10", "--noise", "0.1", "--seed", "4", "--out", "test.csv",
        ],
        d,
    );
    assert!(o.status.success());
    let o = nbhl(
        &[
            "predict",
            "--model",
            "model.json",
            "test.csv",
            "--label-column",
            "last",
            "--mode",
            "stateless",
        ],
        d,
    );
    assert!(o.status.success(), "{o:?}");
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 10);
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["index"], i);
        let h: f64 = l["h"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_f64().unwrap())
            .sum();
        assert!((h - 1.0).abs() < 1e-9);
    }
}

#[test]
fn growth_predictions_can_save_the_grown_model() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(nbhl(
        &["train", &data("iris.csv"), "--k", "7", "--out", "m.json"],
        d
    )
    .status
    .success());
    let o = nbhl(
        &[
            "predict",
            "--model",
            "m.json",
            &data("iris.csv"),
            "--label-column",
            "last",
            "--save-model",
            "grown.json",
        ],
        d,
    );
    assert!(o.status.success(), "{o:?}");
    let grown: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("grown.json")).unwrap()).unwrap();
    let attached = grown["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|n| n["attached"] == true)
        .count();
    assert_eq!(attached, 150);
}

#[test]
fn empty_prediction_input_is_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("empty.csv"), "x0,x1,x2,x3\n").unwrap();
    assert!(nbhl(
        &["train", &data("iris.csv"), "--k", "3", "--out", "m.json"],
        d
    )
    .status
    .success());
    let o = nbhl(&["predict", "--model", "m.json", "empty.csv"], d);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).is_empty());
}

#[test]
fn invalid_flags_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        vec!["generate", "moons", "--noise", "-0.1"],
        vec!["generate", "spirals"],
        vec!["train", "missing.csv", "--k", "0", "--out", "m.json"],
        vec![
            "train",
            "missing.csv",
            "--k",
            "3",
            "--alpha",
            "1.5",
            "--out",
            "m.json",
        ],
        vec!["evaluate", "--k", "3"],
        vec!["sweep", "--generate", "moons", "--k", "1,x"],
        vec!["frobnicate"],
    ] {
        let o = nbhl(&args, d);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    assert!(!d.join("m.json").exists());
}

#[test]
fn runtime_failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = nbhl(&["train", "missing.csv", "--k", "3", "--out", "m.json"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.csv"));
    std::fs::write(d.join("bad.json"), "{}").unwrap();
    let o = nbhl(&["predict", "--model", "bad.json", &data("iris.csv")], d);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn evaluate_and_sweep_print_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = nbhl(
        &[
            "evaluate",
            "--generate",
            "moons",
            "--n",
            "60",
            "--k",
            "5",
            "--e",
            "0.5",
            "--b",
            "5",
            "--folds",
            "5",
            "--json",
        ],
        d,
    );
    assert!(o.status.success(), "{o:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        report["cells"][0]["fold_accuracies"]
            .as_array()
            .unwrap()
            .len(),
        5
    );

    let o = nbhl(
        &[
            "sweep",
            "--data",
            &data("iris.csv"),
            "--k",
            "3,7",
            "--alpha",
            "0.5,1.0",
            "--train-fraction",
            "0.75",
            "--folds",
            "3",
            "--scale",
        ],
        d,
    );
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    assert!(text.starts_with("experiment"));
    let (_, cells) = text.split_once("\n\n").expect("per-cell table");
    assert_eq!(cells.lines().count(), 5);
}

#[test]
fn reproduce_reports_bounds_through_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let manifest = |lo: f64| {
        format!(
            r#"
            seed = 5
            [[experiment]]
            name = "moons"
            source = {{ kind = "moons", n = 40, noise = 0.0 }}
            grid = {{ k = [5], e = [0.5], b = [5], alpha = [1.0] }}
            protocol = {{ kind = "cross_validation", folds = 4 }}
            bounds = {{ min = {lo}, max = 100.0 }}
            "#
        )
    };
    std::fs::write(d.join("ok.toml"), manifest(50.0)).unwrap();
    std::fs::write(d.join("strict.toml"), manifest(100.5)).unwrap();

    let o = nbhl(&["reproduce", "ok.toml", "--out", "report.json"], d);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("PASS"));
    let first = std::fs::read(d.join("report.json")).unwrap();
    assert!(nbhl(&["reproduce", "ok.toml", "--out", "report.json"], d)
        .status
        .success());
    assert_eq!(first, std::fs::read(d.join("report.json")).unwrap());

    let o = nbhl(&["reproduce", "strict.toml"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));

    std::fs::write(d.join("empty.toml"), "seed = 1\n").unwrap();
    assert!(nbhl(&["reproduce", "empty.toml"], d).status.success());
    assert_eq!(nbhl(&["reproduce", "nope.toml"], d).status.code(), Some(1));
}
