use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fakecue::corpus::save_corpus;
use fakecue::synthetic::{generate, SyntheticSpec};
use fakecue_cli::CONFIG_KEYS;
use tempfile::TempDir;

fn fakecue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fakecue")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn synthetic(dir: &Path, name: &str, documents: usize, planted: bool, seed: u64) -> PathBuf {
    let corpus = generate(&SyntheticSpec { name: name.into(), documents, planted, seed, ..Default::default() });
    let path = dir.join(format!("{name}.jsonl"));
    save_corpus(&corpus, &path).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_lists_every_config_key() {
    let o = fakecue(&["--help"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for (key, _) in CONFIG_KEYS {
        assert!(text.contains(key), "--help is missing `{key}`");
    }
    assert!(text.contains("Exit codes"));
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = tmp.path().join("run.json");
    std::fs::write(&cfg, r#"{"seed": 1, "sede": 2}"#).unwrap();
    let o = fakecue(&["--config", s(&cfg), "ingest"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("sede"), "{}", stderr(&o));
}

#[test]
fn bad_label_is_a_data_error_naming_the_row() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("bad.csv");
    std::fs::write(&path, "id,label,title,body\na,REAL,t,one\nb,FAKE,t,two\nc,MAYBE,t,three\n").unwrap();
    let o = fakecue(&["--out", s(&tmp.path().join("out")), "--dataset", s(&path), "ingest"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("MAYBE") && err.contains('3'), "{err}");
}

#[test]
fn ingest_is_byte_stable_and_summarises_classes() {
    let tmp = TempDir::new().unwrap();
    let data = synthetic(tmp.path(), "news", 182, true, 1);
    let out = tmp.path().join("out");
    let run = || {
        let o = fakecue(&["--out", s(&out), "--dataset", s(&data), "ingest"]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("news: 182 items, 91 real / 91 fake"), "{}", stdout(&o));
        (std::fs::read(out.join("corpus/news.jsonl")).unwrap(), std::fs::read(out.join("corpus/summary.json")).unwrap())
    };
    assert_eq!(run(), run());
}

#[test]
fn feature_matrices_have_the_set_widths() {
    let tmp = TempDir::new().unwrap();
    let data = synthetic(tmp.path(), "news", 120, true, 2);
    let out = tmp.path().join("out");
    let o = fakecue(&["--out", s(&out), "--dataset", s(&data), "features"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for (fset, width) in [("fset1", 18), ("fset2", 8)] {
        for part in ["train", "test"] {
            let tsv = std::fs::read_to_string(out.join(format!("features/news.{fset}.{part}.tsv"))).unwrap();
            let header: Vec<&str> = tsv.lines().next().unwrap().split('\t').collect();
            assert!(header.contains(&"label"), "{header:?}");
            let features = header.iter().filter(|h| !matches!(**h, "id" | "label")).count();
            assert_eq!(features, width, "{fset} {part}: {header:?}");
        }
    }
    assert!(out.join("features/news.stats.json").is_file());
}

#[test]
fn empty_documents_are_listed_in_the_warnings_sidecar() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("tiny.csv");
    let mut csv = String::from("id,label,title,body\n");
    for i in 0..20 {
        let label = if i % 2 == 0 { "REAL" } else { "FAKE" };
        let body = if i == 4 { "the of and" } else { "markets rallied strongly after the terrible report" };
        csv.push_str(&format!("d{i},{label},,{body}\n"));
    }
    std::fs::write(&path, csv).unwrap();
    let out = tmp.path().join("out");
    let o = fakecue(&["--out", s(&out), "--dataset", s(&path), "features"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let warnings = std::fs::read_to_string(out.join("features/tiny.warnings.tsv")).unwrap();
    let mut lines = warnings.lines();
    assert_eq!(lines.next(), Some("id\tsplit\twarning"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 1, "{warnings}");
    assert!(rows[0].starts_with("d4\t"));
    assert!(stderr(&o).contains("1 empty documents"));
}

#[test]
fn selection_keeps_the_planted_cues_and_reports_weights() {
    let tmp = TempDir::new().unwrap();
    let data = synthetic(tmp.path(), "planted", 1200, true, 4);
    let out = tmp.path().join("out");
    let o = fakecue(&["--out", s(&out), "--dataset", s(&data), "select"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("selection/planted.json")).unwrap()).unwrap();
    let ranked: Vec<&str> = report["ranked_features"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    for cue in ["unique", "negative", "positive", "CN"] {
        assert!(ranked.contains(&cue), "{cue} not ranked: {ranked:?}");
    }
    let kept = report["wrapper_kept"].as_array().unwrap();
    assert!(!kept.is_empty());
    assert!(kept.iter().all(|k| ranked.contains(&k.as_str().unwrap())));
    for row in ["ent", "div", "wgt"] {
        assert_eq!(report["entropy_weights"][row].as_array().unwrap().len(), 5, "{row}");
    }
    assert!(report["verified"].is_boolean());
}

#[test]
fn selection_on_noise_fails_the_floor() {
    let tmp = TempDir::new().unwrap();
    let data = synthetic(tmp.path(), "noise", 2000, false, 5);
    let cfg = tmp.path().join("run.json");
    std::fs::write(&cfg, r#"{"selection": {"auc_floor": 0.6}}"#).unwrap();
    let o = fakecue(&["--config", s(&cfg), "--out", s(&tmp.path().join("out")), "--dataset", s(&data), "select"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stderr(&o).contains("no feature reaches validation PR-AUC 0.6"), "{}", stderr(&o));
}

#[test]
fn eval_grid_writes_all_cells_and_valid_charts() {
    let tmp = TempDir::new().unwrap();
    let a = synthetic(tmp.path(), "alpha", 240, true, 6);
    let b = synthetic(tmp.path(), "beta", 240, true, 7);
    let out = tmp.path().join("out");
    let args = ["--out", s(&out), "--dataset", s(&a), "--dataset", s(&b), "eval"];
    let o = fakecue(&args);
    assert!(o.status.success(), "{}", stderr(&o));

    let tsv = std::fs::read_to_string(out.join("eval/comparison.tsv")).unwrap();
    let rows: Vec<&str> = tsv.lines().skip(1).collect();
    assert_eq!(rows.len(), 2 * 2 * 6);
    assert!(rows.iter().all(|r| r.ends_with("\tok")), "{tsv}");
    for name in ["auc_pr_fset1", "auc_pr_fset2", "f1_fset1", "f1_fset2"] {
        let svg = std::fs::read_to_string(out.join(format!("eval/{name}.svg"))).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        assert!(svg.contains("alpha") && svg.contains("beta"));
    }

    let first = std::fs::read(out.join("eval/comparison.json")).unwrap();
    assert!(fakecue(&args).status.success());
    assert_eq!(first, std::fs::read(out.join("eval/comparison.json")).unwrap());

    let o = fakecue(&["--out", s(&out), "report"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let md = std::fs::read_to_string(out.join("report.md")).unwrap();
    assert!(md.contains("| alpha | fset2 | adaboost |"), "{md}");
}

#[test]
fn train_writes_loadable_models() {
    let tmp = TempDir::new().unwrap();
    let data = synthetic(tmp.path(), "news", 200, true, 8);
    let out = tmp.path().join("out");
    let o = fakecue(&["--out", s(&out), "--dataset", s(&data), "--fset", "fset2", "--classifier", "knn", "train"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let json = std::fs::read_to_string(out.join("models/news.fset2.knn.json")).unwrap();
    let model = fakecue::classifiers::Model::from_json(&json).unwrap();
    assert_eq!(model.feature_names.len(), 8);
}
