//! Precision-recall AUC, F1 and the dataset × feature set × classifier comparison grid.

use thiserror::Error;

pub mod chart;
pub mod experiment;
mod metrics;

pub use chart::{grouped_bar_svg, ChartMetric};
pub use experiment::{
    prepare, run_experiment, run_prepared, run_repeated, Cell, ComparisonTable, EvalReport, ExperimentConfig,
    FailedCell, PreparedCorpus, SeedSummary,
};
pub use metrics::{auc_pr, f1, pr_curve, Confusion, PrCurve};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("{scores} scores but {labels} labels")]
    LengthMismatch { scores: usize, labels: usize },
    #[error("scores must be finite")]
    NonFiniteScore,
    #[error("no FAKE labels to recall")]
    NoPositives,
}
