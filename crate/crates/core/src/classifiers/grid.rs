use serde::{Deserialize, Serialize};

use super::{fit, ClassifierError, HyperParams, Result};
use crate::evaluation::{auc_pr, f1, Confusion};
use crate::features::FeatureMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridMetric {
    AucPr,
    F1,
}

/// Named parameter axes; the product is enumerated with the first axis outermost.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub axes: Vec<(String, Vec<f64>)>,
}

impl ParamGrid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn axis(mut self, name: &str, values: &[f64]) -> Self {
        self.axes.push((name.to_string(), values.to_vec()));
        self
    }

    /// All grid points in listing order.
    pub fn points(&self) -> Vec<Vec<(String, f64)>> {
        let mut out = vec![Vec::new()];
        for (name, values) in &self.axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push((name.clone(), v));
                        p
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub values: Vec<(String, f64)>,
    pub params: HyperParams,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub best: HyperParams,
    pub best_score: f64,
    pub metric: GridMetric,
    pub table: Vec<GridPoint>,
}

fn evaluate(params: &HyperParams, train: &FeatureMatrix, validation: &FeatureMatrix, metric: GridMetric) -> Result<f64> {
    let model = fit(params, train)?;
    let scores = model.predict_scores(validation)?;
    Ok(match metric {
        GridMetric::AucPr => auc_pr(&scores, &validation.labels)?,
        GridMetric::F1 => {
            let predicted = super::labels_from_scores(&scores, 0.5);
            f1(&Confusion::from_predictions(&predicted, &validation.labels))
        }
    })
}

/// Exhaustive search starting from `base`; the first listed point wins ties.
pub fn grid_search(
    base: &HyperParams,
    grid: &ParamGrid,
    train: &FeatureMatrix,
    validation: &FeatureMatrix,
    metric: GridMetric,
) -> Result<GridResult> {
    if grid.axes.iter().any(|(_, v)| v.is_empty()) {
        return Err(ClassifierError::InvalidParam("grid axis with no values".into()));
    }
    let mut table = Vec::new();
    let mut best: Option<(usize, f64)> = None;
    for values in grid.points() {
        let mut params = base.clone();
        for (name, v) in &values {
            params.set(name, *v)?;
        }
        let score = evaluate(&params, train, validation, metric)?;
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((table.len(), score));
        }
        table.push(GridPoint { values, params, score });
    }
    let (i, best_score) = best.expect("grid has at least one point");
    Ok(GridResult { best: table[i].params.clone(), best_score, metric, table })
}
