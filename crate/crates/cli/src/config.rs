//! JSON run configuration. Unknown keys are rejected; relative paths resolve against
//! the directory holding the config file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fakecue::classifiers::{ClassifierKind, GridMetric, HyperParams, ParamGrid};
use fakecue::corpus::Format;
use fakecue::features::StatsSource;
use fakecue::selection::{Orientation, SelectionConfig};
use fakecue::FeatureSet;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Every accepted key with a one-line description. `--help` prints this table.
pub const CONFIG_KEYS: &[(&str, &str)] = &[
    ("datasets", "list of dataset entries (keys below)"),
    ("datasets[].name", "dataset name; defaults to the file stem"),
    ("datasets[].path", "labelled corpus (id,label,title,body) or stance file"),
    ("datasets[].format", "csv | json | jsonl; guessed from the extension if absent"),
    ("datasets[].layout", "labelled (default) | stances (id,headline,body,stance)"),
    ("datasets[].bodies", "two-file stance layout: bodies CSV (Body ID,articleBody)"),
    ("datasets[].stances", "two-file stance layout: stances CSV (Headline,Body ID,Stance)"),
    ("fsets", "feature sets to run: fset1 | fset2 | all (default [fset1, fset2])"),
    ("classifiers", "classifier kinds (default all six)"),
    ("params", "per-kind hyperparameter overrides, e.g. {\"adaboost\": {\"estimators\": 400}}"),
    ("grids", "per-kind grid axes for `train`, e.g. {\"adaboost\": {\"estimators\": [50, 400]}}"),
    ("grid_metric", "auc_pr (default) | f1"),
    ("seed", "master seed (default 0)"),
    ("split_fraction", "training share of each corpus, in (0, 1) (default 0.7)"),
    ("validation_fraction", "share of the training split held out for selection and grid search (default 0.3)"),
    ("repeats", "extra seeds for mean/spread reporting in `eval` (default 0)"),
    ("decision_threshold", "score at or above which a row is called FAKE for F1 (default 0.5)"),
    ("train_variance", "pooled (default) | train_class_means: variance-feature reference for training rows"),
    ("out", "output directory (default \"out\")"),
    ("lexicon_dir", "directory with stopwords.txt, tag_lexicon.tsv, valence.tsv (default bundled)"),
    ("selection", "feature-selection settings (keys below)"),
    ("selection.threshold", "minimum |corr(feature, class)| to enter the ranking (default 0.1)"),
    ("selection.auc_floor", "PR-AUC the first kept feature must reach (default 0.5)"),
    ("selection.tolerance", "PR-AUC gain a later feature must add (default 0.005)"),
    ("selection.learner", "wrapper classifier kind (default gaussian_nb)"),
    ("selection.orientation", "paper (default) | standard TOPSIS closeness"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    #[default]
    Labelled,
    Stances,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default)]
    pub layout: Layout,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bodies: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stances: Option<PathBuf>,
}

impl DatasetConfig {
    pub fn labelled(path: PathBuf) -> Self {
        DatasetConfig { path: Some(path), ..Default::default() }
    }

    /// Explicit name, else the stem of the main file.
    pub fn resolved_name(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        self.path
            .as_ref()
            .or(self.stances.as_ref())
            .and_then(|p| p.file_stem())
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SelectionSettings {
    pub threshold: f64,
    pub auc_floor: f64,
    pub tolerance: f64,
    pub learner: ClassifierKind,
    pub orientation: Orientation,
}

impl Default for SelectionSettings {
    fn default() -> Self {
        let d = SelectionConfig::default();
        SelectionSettings {
            threshold: d.threshold,
            auc_floor: d.auc_floor,
            tolerance: d.tolerance,
            learner: d.learner,
            orientation: d.orientation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub datasets: Vec<DatasetConfig>,
    pub fsets: Vec<FeatureSet>,
    pub classifiers: Vec<ClassifierKind>,
    pub params: BTreeMap<ClassifierKind, BTreeMap<String, f64>>,
    pub grids: BTreeMap<ClassifierKind, BTreeMap<String, Vec<f64>>>,
    pub grid_metric: GridMetric,
    pub seed: u64,
    pub split_fraction: f64,
    pub validation_fraction: f64,
    pub repeats: usize,
    pub decision_threshold: f64,
    pub train_variance: StatsSource,
    pub out: PathBuf,
    pub lexicon_dir: Option<PathBuf>,
    pub selection: SelectionSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            datasets: Vec::new(),
            fsets: vec![FeatureSet::Fset1, FeatureSet::Fset2],
            classifiers: ClassifierKind::ALL.to_vec(),
            params: BTreeMap::new(),
            grids: BTreeMap::new(),
            grid_metric: GridMetric::AucPr,
            seed: 0,
            split_fraction: 0.7,
            validation_fraction: 0.3,
            repeats: 0,
            decision_threshold: 0.5,
            train_variance: StatsSource::Pooled,
            out: PathBuf::from("out"),
            lexicon_dir: None,
            selection: SelectionSettings::default(),
        }
    }
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, CliError> {
        serde_json::from_str(text).map_err(|e| config_error(format!("config: {e}")))
    }

    /// Reads a config file and makes its relative paths relative to the file's directory.
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        let mut cfg = RunConfig::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.rebase(base);
        Ok(cfg)
    }

    fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for d in &mut self.datasets {
            for p in [&mut d.path, &mut d.bodies, &mut d.stances].into_iter().flatten() {
                fix(p);
            }
        }
        fix(&mut self.out);
        if let Some(p) = &mut self.lexicon_dir {
            fix(p);
        }
    }

    /// Hyperparameters for `kind` with config overrides and the run seed applied.
    pub fn hyper_params(&self, kind: ClassifierKind) -> Result<HyperParams, CliError> {
        let mut hp = HyperParams::default_for(kind).with_seed(self.seed);
        if let Some(over) = self.params.get(&kind) {
            for (name, v) in over {
                hp.set(name, *v).map_err(|e| config_error(format!("params.{}.{name}: {e}", kind.as_str())))?;
            }
        }
        hp.validate().map_err(|e| config_error(format!("params.{}: {e}", kind.as_str())))?;
        Ok(hp)
    }

    pub fn grid(&self, kind: ClassifierKind) -> Option<ParamGrid> {
        self.grids.get(&kind).map(|axes| {
            axes.iter().fold(ParamGrid::new(), |g, (name, values)| g.axis(name, values))
        })
    }

    pub fn selection_config(&self) -> SelectionConfig {
        let s = &self.selection;
        SelectionConfig {
            threshold: s.threshold,
            auc_floor: s.auc_floor,
            tolerance: s.tolerance,
            learner: s.learner,
            orientation: s.orientation,
            seed: self.seed,
        }
    }

    /// Checks fractions, hyperparameters and that every referenced file exists.
    pub fn validate(&self) -> Result<(), CliError> {
        for (key, v) in [("split_fraction", self.split_fraction), ("validation_fraction", self.validation_fraction)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(config_error(format!("{key} must lie in (0, 1), got {v}")));
            }
        }
        if !(0.0..=1.0).contains(&self.decision_threshold) {
            return Err(config_error("decision_threshold must lie in [0, 1]"));
        }
        if self.fsets.is_empty() || self.classifiers.is_empty() {
            return Err(config_error("fsets and classifiers must not be empty"));
        }
        for &kind in &self.classifiers {
            self.hyper_params(kind)?;
        }
        for (kind, axes) in &self.grids {
            if axes.values().any(Vec::is_empty) {
                return Err(config_error(format!("grids.{}: empty axis", kind.as_str())));
            }
        }
        let mut names = std::collections::HashSet::new();
        for d in &self.datasets {
            let two_file = d.bodies.is_some() || d.stances.is_some();
            match (&d.path, two_file) {
                (Some(_), true) | (None, false) => {
                    return Err(config_error(format!(
                        "dataset `{}`: give either `path` or both `bodies` and `stances`",
                        d.resolved_name()
                    )))
                }
                (None, true) if d.bodies.is_none() || d.stances.is_none() => {
                    return Err(config_error(format!("dataset `{}`: `bodies` and `stances` go together", d.resolved_name())))
                }
                _ => {}
            }
            for p in [&d.path, &d.bodies, &d.stances].into_iter().flatten() {
                if !p.is_file() {
                    return Err(config_error(format!("dataset file {} does not exist", p.display())));
                }
            }
            if let Some(p) = &d.path {
                if d.format.is_none() && Format::from_path(p).is_none() {
                    return Err(config_error(format!("cannot tell the format of {}; set `format`", p.display())));
                }
            }
            if !names.insert(d.resolved_name()) {
                return Err(config_error(format!("dataset name `{}` appears twice", d.resolved_name())));
            }
        }
        if let Some(dir) = &self.lexicon_dir {
            if !dir.is_dir() {
                return Err(config_error(format!("lexicon_dir {} is not a directory", dir.display())));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn keys(prefix: &str, v: &Value, out: &mut Vec<String>) {
        if let Value::Object(m) = v {
            for (k, child) in m {
                let key = format!("{prefix}{k}");
                out.push(key.clone());
                if k == "selection" {
                    keys(&format!("{key}."), child, out);
                }
            }
        }
    }

    #[test]
    fn key_table_covers_schema() {
        let mut found = Vec::new();
        keys("", &serde_json::to_value(RunConfig::default()).unwrap(), &mut found);
        let ds = DatasetConfig {
            name: Some("n".into()),
            path: Some("p".into()),
            format: Some(Format::Csv),
            bodies: Some("b".into()),
            stances: Some("s".into()),
            ..Default::default()
        };
        keys("datasets[].", &serde_json::to_value(ds).unwrap(), &mut found);
        let table: Vec<&str> = CONFIG_KEYS.iter().map(|(k, _)| *k).collect();
        for k in &found {
            assert!(table.contains(&k.as_str()), "undocumented key {k}");
        }
        for k in &table {
            assert!(found.iter().any(|f| f == k), "documented key {k} is not in the schema");
        }
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(RunConfig::parse(r#"{"sed": 3}"#).is_err());
        assert!(RunConfig::parse(r#"{"selection": {"treshold": 0.2}}"#).is_err());
        assert!(RunConfig::parse(r#"{"datasets": [{"pth": "x"}]}"#).is_err());
        let c = RunConfig::parse(r#"{"seed": 3, "params": {"adaboost": {"estimators": 400}}}"#).unwrap();
        assert_eq!(c.seed, 3);
        assert_eq!(c.split_fraction, 0.7);
    }

    #[test]
    fn validation_errors() {
        let mut c = RunConfig { split_fraction: 1.0, ..Default::default() };
        assert!(c.validate().is_err());
        c.split_fraction = 0.7;
        assert!(c.validate().is_ok());
        c.datasets.push(DatasetConfig::labelled("/definitely/missing.csv".into()));
        assert!(c.validate().is_err());
        let c = RunConfig::parse(r#"{"params": {"knn": {"k": 0}}}"#).unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn relative_paths_follow_the_config() {
        let mut c = RunConfig::parse(r#"{"datasets": [{"path": "d.csv"}], "out": "o"}"#).unwrap();
        c.rebase(Path::new("/cfg"));
        assert_eq!(c.datasets[0].path.as_deref(), Some(Path::new("/cfg/d.csv")));
        assert_eq!(c.out, Path::new("/cfg/o"));
        assert_eq!(c.datasets[0].resolved_name(), "d");
    }
}
