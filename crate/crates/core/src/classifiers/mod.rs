//! Six from-scratch binary classifiers behind one fit/score interface.
//!
//! Every learner produces a score in `[0, 1]` where higher means more likely FAKE.
//! Fitted models are plain data and serialize to versioned JSON.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Label;
use crate::features::FeatureMatrix;

pub mod adaboost;
pub mod forest;
mod grid;
pub mod knn;
pub mod naive_bayes;
mod scaler;
pub mod svm;
pub mod tree;

pub use grid::{grid_search, GridMetric, GridPoint, GridResult, ParamGrid};
pub use scaler::Scaler;

/// Version tag written into persisted models.
pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("training data needs at least one real and one fake row")]
    SingleClassCorpus,
    #[error("non-finite feature value at row {row}, column {column}")]
    NonFiniteFeature { row: usize, column: usize },
    #[error("feature columns {found:?} do not match the model's {expected:?}")]
    ColumnMismatch { expected: Vec<String>, found: Vec<String> },
    #[error("invalid hyperparameter: {0}")]
    InvalidParam(String),
    #[error("model format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Eval(#[from] crate::evaluation::EvalError),
}

pub type Result<T> = std::result::Result<T, ClassifierError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifierKind {
    GaussianNb,
    DecisionTree,
    RandomForest,
    Knn,
    Adaboost,
    LinearSvm,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 6] = [
        ClassifierKind::GaussianNb,
        ClassifierKind::DecisionTree,
        ClassifierKind::RandomForest,
        ClassifierKind::Knn,
        ClassifierKind::Adaboost,
        ClassifierKind::LinearSvm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassifierKind::GaussianNb => "gaussian_nb",
            ClassifierKind::DecisionTree => "decision_tree",
            ClassifierKind::RandomForest => "random_forest",
            ClassifierKind::Knn => "knn",
            ClassifierKind::Adaboost => "adaboost",
            ClassifierKind::LinearSvm => "linear_svm",
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassifierKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        ClassifierKind::ALL
            .into_iter()
            .find(|k| k.as_str() == norm)
            .ok_or_else(|| {
                let names: Vec<_> = ClassifierKind::ALL.iter().map(|k| k.as_str()).collect();
                format!("unknown classifier `{s}` (one of {})", names.join(", "))
            })
    }
}

/// Per-kind hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelParams {
    GaussianNb {
        var_floor: f64,
    },
    DecisionTree {
        max_depth: Option<usize>,
        min_samples_leaf: usize,
    },
    RandomForest {
        trees: usize,
        /// Features tried per split; `None` means `ceil(sqrt(d))`.
        max_features: Option<usize>,
        max_depth: Option<usize>,
        min_samples_leaf: usize,
        bootstrap: bool,
    },
    Knn {
        k: usize,
    },
    Adaboost {
        estimators: usize,
        learning_rate: f64,
        base_depth: usize,
    },
    LinearSvm {
        c: f64,
        epochs: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    pub seed: u64,
    #[serde(flatten)]
    pub model: ModelParams,
}

impl HyperParams {
    pub fn default_for(kind: ClassifierKind) -> HyperParams {
        let model = match kind {
            ClassifierKind::GaussianNb => ModelParams::GaussianNb { var_floor: 1e-9 },
            ClassifierKind::DecisionTree => {
                ModelParams::DecisionTree { max_depth: None, min_samples_leaf: 1 }
            }
            ClassifierKind::RandomForest => ModelParams::RandomForest {
                trees: 100,
                max_features: None,
                max_depth: None,
                min_samples_leaf: 1,
                bootstrap: true,
            },
            ClassifierKind::Knn => ModelParams::Knn { k: 5 },
            ClassifierKind::Adaboost => {
                ModelParams::Adaboost { estimators: 50, learning_rate: 1.0, base_depth: 1 }
            }
            ClassifierKind::LinearSvm => ModelParams::LinearSvm { c: 1.0, epochs: 100 },
        };
        HyperParams { seed: 0, model }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn kind(&self) -> ClassifierKind {
        match self.model {
            ModelParams::GaussianNb { .. } => ClassifierKind::GaussianNb,
            ModelParams::DecisionTree { .. } => ClassifierKind::DecisionTree,
            ModelParams::RandomForest { .. } => ClassifierKind::RandomForest,
            ModelParams::Knn { .. } => ClassifierKind::Knn,
            ModelParams::Adaboost { .. } => ClassifierKind::Adaboost,
            ModelParams::LinearSvm { .. } => ClassifierKind::LinearSvm,
        }
    }

    // `!(x > 0.0)` also rejects NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(ClassifierError::InvalidParam(m.to_string()));
        match self.model {
            ModelParams::GaussianNb { var_floor } if !(var_floor > 0.0) => bad("var_floor must be > 0"),
            ModelParams::DecisionTree { min_samples_leaf: 0, .. }
            | ModelParams::RandomForest { min_samples_leaf: 0, .. } => bad("min_samples_leaf must be >= 1"),
            ModelParams::RandomForest { trees: 0, .. } => bad("trees must be >= 1"),
            ModelParams::RandomForest { max_features: Some(0), .. } => bad("max_features must be >= 1"),
            ModelParams::Knn { k: 0 } => bad("k must be >= 1"),
            ModelParams::Adaboost { estimators: 0, .. } => bad("estimators must be >= 1"),
            ModelParams::Adaboost { learning_rate, .. } if !(learning_rate > 0.0) => {
                bad("learning_rate must be > 0")
            }
            ModelParams::Adaboost { base_depth: 0, .. } => bad("base_depth must be >= 1"),
            ModelParams::LinearSvm { c, .. } if !(c > 0.0) => bad("c must be > 0"),
            ModelParams::LinearSvm { epochs: 0, .. } => bad("epochs must be >= 1"),
            _ => Ok(()),
        }
    }

    /// Sets one numeric parameter by name; used by grid search.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let as_count = |v: f64| -> Result<usize> {
            if v >= 0.0 && v.fract() == 0.0 && v.is_finite() {
                Ok(v as usize)
            } else {
                Err(ClassifierError::InvalidParam(format!("{name} must be a non-negative integer")))
            }
        };
        // 0 means "unlimited" for optional depth/feature limits.
        let as_limit = |v: f64| as_count(v).map(|n| (n > 0).then_some(n));
        if name == "seed" {
            self.seed = as_count(value)? as u64;
            return Ok(());
        }
        match (&mut self.model, name) {
            (ModelParams::GaussianNb { var_floor }, "var_floor") => *var_floor = value,
            (ModelParams::DecisionTree { max_depth, .. }, "max_depth")
            | (ModelParams::RandomForest { max_depth, .. }, "max_depth") => *max_depth = as_limit(value)?,
            (ModelParams::DecisionTree { min_samples_leaf, .. }, "min_samples_leaf")
            | (ModelParams::RandomForest { min_samples_leaf, .. }, "min_samples_leaf") => {
                *min_samples_leaf = as_count(value)?
            }
            (ModelParams::RandomForest { trees, .. }, "trees") => *trees = as_count(value)?,
            (ModelParams::RandomForest { max_features, .. }, "max_features") => *max_features = as_limit(value)?,
            (ModelParams::RandomForest { bootstrap, .. }, "bootstrap") => *bootstrap = value != 0.0,
            (ModelParams::Knn { k }, "k") => *k = as_count(value)?,
            (ModelParams::Adaboost { estimators, .. }, "estimators") => *estimators = as_count(value)?,
            (ModelParams::Adaboost { learning_rate, .. }, "learning_rate") => *learning_rate = value,
            (ModelParams::Adaboost { base_depth, .. }, "base_depth") => *base_depth = as_count(value)?,
            (ModelParams::LinearSvm { c, .. }, "c") => *c = value,
            (ModelParams::LinearSvm { epochs, .. }, "epochs") => *epochs = as_count(value)?,
            (_, other) => {
                return Err(ClassifierError::InvalidParam(format!(
                    "`{other}` is not a parameter of {}",
                    self.kind()
                )))
            }
        }
        self.validate()
    }
}

/// Fitted per-kind state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FittedState {
    GaussianNb(naive_bayes::GaussianNb),
    DecisionTree(tree::Tree),
    RandomForest(forest::Forest),
    Knn(knn::Knn),
    Adaboost(adaboost::AdaBoost),
    LinearSvm(svm::LinearSvm),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub version: u32,
    pub params: HyperParams,
    pub feature_names: Vec<String>,
    pub state: FittedState,
}

/// Training view: rows as FAKE booleans.
pub(crate) fn fake_flags(labels: &[Label]) -> Vec<bool> {
    labels.iter().map(|l| l.is_fake()).collect()
}

fn check_training(train: &FeatureMatrix) -> Result<()> {
    let fakes = train.labels.iter().filter(|l| l.is_fake()).count();
    if fakes == 0 || fakes == train.labels.len() {
        return Err(ClassifierError::SingleClassCorpus);
    }
    for (r, row) in train.rows.iter().enumerate() {
        if let Some(c) = row.iter().position(|v| !v.is_finite()) {
            return Err(ClassifierError::NonFiniteFeature { row: r, column: c });
        }
    }
    Ok(())
}

pub fn fit(params: &HyperParams, train: &FeatureMatrix) -> Result<Model> {
    params.validate()?;
    check_training(train)?;
    let x = &train.rows;
    let y = fake_flags(&train.labels);
    let state = match params.model {
        ModelParams::GaussianNb { var_floor } => {
            FittedState::GaussianNb(naive_bayes::GaussianNb::fit(x, &y, var_floor))
        }
        ModelParams::DecisionTree { max_depth, min_samples_leaf } => {
            let cfg = tree::TreeConfig { max_depth, min_samples_leaf, max_features: None };
            FittedState::DecisionTree(tree::Tree::fit(x, &y, None, &cfg, params.seed))
        }
        ModelParams::RandomForest { trees, max_features, max_depth, min_samples_leaf, bootstrap } => {
            let cfg = forest::ForestConfig { trees, max_features, max_depth, min_samples_leaf, bootstrap };
            FittedState::RandomForest(forest::Forest::fit(x, &y, &cfg, params.seed))
        }
        ModelParams::Knn { k } => FittedState::Knn(knn::Knn::fit(x, &y, k)),
        ModelParams::Adaboost { estimators, learning_rate, base_depth } => {
            let cfg = adaboost::BoostConfig { estimators, learning_rate, base_depth };
            FittedState::Adaboost(adaboost::AdaBoost::fit(x, &y, &cfg).0)
        }
        ModelParams::LinearSvm { c, epochs } => {
            FittedState::LinearSvm(svm::LinearSvm::fit(x, &y, c, epochs, params.seed).0)
        }
    };
    Ok(Model {
        version: MODEL_FORMAT_VERSION,
        params: params.clone(),
        feature_names: train.feature_names.clone(),
        state,
    })
}

impl Model {
    pub fn kind(&self) -> ClassifierKind {
        self.params.kind()
    }

    fn check_columns(&self, rows: &FeatureMatrix) -> Result<()> {
        if rows.feature_names != self.feature_names {
            return Err(ClassifierError::ColumnMismatch {
                expected: self.feature_names.clone(),
                found: rows.feature_names.clone(),
            });
        }
        Ok(())
    }

    fn score_row(&self, x: &[f64]) -> f64 {
        match &self.state {
            FittedState::GaussianNb(m) => m.score(x),
            FittedState::DecisionTree(m) => m.score(x),
            FittedState::RandomForest(m) => m.score(x),
            FittedState::Knn(m) => m.score(x),
            FittedState::Adaboost(m) => m.score(x),
            FittedState::LinearSvm(m) => m.score(x),
        }
    }

    /// Per-row score in `[0, 1]`; higher means more likely FAKE.
    pub fn predict_scores(&self, rows: &FeatureMatrix) -> Result<Vec<f64>> {
        self.check_columns(rows)?;
        Ok(rows.rows.iter().map(|r| self.score_row(r)).collect())
    }

    /// FAKE iff `score >= threshold`; a score equal to the threshold is FAKE.
    pub fn predict_labels(&self, rows: &FeatureMatrix, threshold: f64) -> Result<Vec<Label>> {
        Ok(labels_from_scores(&self.predict_scores(rows)?, threshold))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model state is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Model> {
        let raw: serde_json::Value = serde_json::from_str(text)?;
        let found = raw.get("version").and_then(|v| v.as_u64()).unwrap_or(0) as u32;
        if found != MODEL_FORMAT_VERSION {
            return Err(ClassifierError::VersionMismatch { found, expected: MODEL_FORMAT_VERSION });
        }
        let model: Model = serde_json::from_value(raw)?;
        if model.params.kind() != state_kind(&model.state) {
            return Err(ClassifierError::InvalidParam("params and fitted state disagree on kind".into()));
        }
        Ok(model)
    }
}

fn state_kind(s: &FittedState) -> ClassifierKind {
    match s {
        FittedState::GaussianNb(_) => ClassifierKind::GaussianNb,
        FittedState::DecisionTree(_) => ClassifierKind::DecisionTree,
        FittedState::RandomForest(_) => ClassifierKind::RandomForest,
        FittedState::Knn(_) => ClassifierKind::Knn,
        FittedState::Adaboost(_) => ClassifierKind::Adaboost,
        FittedState::LinearSvm(_) => ClassifierKind::LinearSvm,
    }
}

pub fn labels_from_scores(scores: &[f64], threshold: f64) -> Vec<Label> {
    scores
        .iter()
        .map(|&s| if s >= threshold { Label::Fake } else { Label::Real })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::features::FeatureSet;

    pub(crate) fn matrix(rows: Vec<Vec<f64>>, labels: Vec<Label>) -> FeatureMatrix {
        let width = rows.first().map_or(0, Vec::len);
        FeatureMatrix {
            feature_names: (0..width).map(|i| format!("f{i}")).collect(),
            ids: (0..rows.len()).map(|i| i.to_string()).collect(),
            rows,
            labels,
            fset: FeatureSet::All,
            empty_rows: vec![],
        }
    }

    fn toy() -> FeatureMatrix {
        let rows = (0..20).map(|i| vec![i as f64, (i % 3) as f64]).collect();
        let labels = (0..20).map(|i| if i >= 10 { Label::Fake } else { Label::Real }).collect();
        matrix(rows, labels)
    }

    #[test]
    fn threshold_labels() {
        assert_eq!(labels_from_scores(&[0.9, 0.1], 0.5), vec![Label::Fake, Label::Real]);
        assert!(labels_from_scores(&[0.0, 0.3], 0.0).iter().all(|l| l.is_fake()));
        assert_eq!(labels_from_scores(&[1.0, 0.99], 1.0), vec![Label::Fake, Label::Real]);
    }

    #[test]
    fn every_kind_fits_scores_and_roundtrips() {
        let m = toy();
        for kind in ClassifierKind::ALL {
            let p = HyperParams::default_for(kind).with_seed(7);
            let model = fit(&p, &m).unwrap();
            let s = model.predict_scores(&m).unwrap();
            assert!(s.iter().all(|v| (0.0..=1.0).contains(v)), "{kind}: {s:?}");
            assert_eq!(fit(&p, &m).unwrap().predict_scores(&m).unwrap(), s, "{kind} determinism");
            let back = Model::from_json(&model.to_json()).unwrap();
            assert_eq!(back.predict_scores(&m).unwrap(), s, "{kind} persistence");
            assert!(kind.as_str().parse::<ClassifierKind>().unwrap() == kind);
        }
    }

    #[test]
    fn fit_errors() {
        let one_class = matrix(vec![vec![1.0], vec![2.0]], vec![Label::Fake, Label::Fake]);
        let p = HyperParams::default_for(ClassifierKind::GaussianNb);
        assert!(matches!(fit(&p, &one_class), Err(ClassifierError::SingleClassCorpus)));
        let nan = matrix(vec![vec![1.0], vec![f64::NAN]], vec![Label::Fake, Label::Real]);
        assert!(matches!(fit(&p, &nan), Err(ClassifierError::NonFiniteFeature { row: 1, column: 0 })));
        let mut bad = HyperParams::default_for(ClassifierKind::Adaboost);
        assert!(bad.set("estimators", 0.0).is_err());
        assert!(bad.set("k", 3.0).is_err());
    }

    #[test]
    fn column_and_version_checks() {
        let m = toy();
        let model = fit(&HyperParams::default_for(ClassifierKind::Knn), &m).unwrap();
        let mut other = m.clone();
        other.feature_names[0] = "zzz".into();
        assert!(matches!(model.predict_scores(&other), Err(ClassifierError::ColumnMismatch { .. })));
        let json = model.to_json().replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(matches!(Model::from_json(&json), Err(ClassifierError::VersionMismatch { found: 2, .. })));
    }
}
