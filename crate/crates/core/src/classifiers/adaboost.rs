//! Discrete AdaBoost (SAMME, two classes) over shallow CART base learners.

use serde::{Deserialize, Serialize};

use super::tree::{Tree, TreeConfig};

/// Error used in place of an exact zero so a perfect learner gets a finite weight.
const ZERO_ERROR_CLAMP: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct BoostConfig {
    pub estimators: usize,
    pub learning_rate: f64,
    pub base_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub tree: Tree,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaBoost {
    pub stages: Vec<Stage>,
}

/// Per-round diagnostics from [`AdaBoost::fit`].
#[derive(Debug, Clone, PartialEq)]
pub struct RoundTrace {
    pub error: f64,
    pub alpha: f64,
    /// Sum of sample weights after renormalisation.
    pub weight_sum: f64,
    pub min_weight: f64,
    /// Unweighted training error of the ensemble after this round.
    pub ensemble_error: f64,
}

fn vote(tree: &Tree, x: &[f64]) -> f64 {
    if tree.score(x) >= 0.5 {
        1.0
    } else {
        -1.0
    }
}

impl AdaBoost {
    /// Fits the ensemble and returns the per-round trace. Boosting stops early when
    /// a round's weighted error reaches 0.5 (the round is discarded) or hits 0 (the
    /// round is kept with a clamped error).
    pub fn fit(x: &[Vec<f64>], y: &[bool], cfg: &BoostConfig) -> (AdaBoost, Vec<RoundTrace>) {
        let n = x.len();
        let mut w = vec![1.0 / n as f64; n];
        let tree_cfg = TreeConfig { max_depth: Some(cfg.base_depth), min_samples_leaf: 1, max_features: None };
        let mut stages: Vec<Stage> = Vec::new();
        let mut trace = Vec::new();
        let mut margins = vec![0.0; n];
        for round in 0..cfg.estimators {
            let tree = Tree::fit(x, y, Some(&w), &tree_cfg, round as u64);
            let votes: Vec<f64> = x.iter().map(|r| vote(&tree, r)).collect();
            let miss: Vec<bool> = votes.iter().zip(y).map(|(&v, &f)| (v > 0.0) != f).collect();
            let error: f64 = w.iter().zip(&miss).filter(|(_, &m)| m).map(|(w, _)| w).sum();
            if error >= 0.5 {
                break;
            }
            let perfect = error <= 0.0;
            let e = error.max(ZERO_ERROR_CLAMP);
            let alpha = cfg.learning_rate * ((1.0 - e) / e).ln();
            for (wi, &m) in w.iter_mut().zip(&miss) {
                if m {
                    *wi *= alpha.exp();
                }
            }
            let total: f64 = w.iter().sum();
            w.iter_mut().for_each(|wi| *wi /= total);
            for (m, v) in margins.iter_mut().zip(&votes) {
                *m += alpha * v;
            }
            let ensemble_error = margins
                .iter()
                .zip(y)
                .filter(|(&m, &f)| (m >= 0.0) != f)
                .count() as f64
                / n as f64;
            trace.push(RoundTrace {
                error,
                alpha,
                weight_sum: w.iter().sum(),
                min_weight: w.iter().copied().fold(f64::INFINITY, f64::min),
                ensemble_error,
            });
            stages.push(Stage { tree, alpha });
            if perfect {
                break;
            }
        }
        (AdaBoost { stages }, trace)
    }

    /// Stage-weighted vote normalised to `[-1, 1]` and mapped to `[0, 1]`.
    pub fn score(&self, x: &[f64]) -> f64 {
        let total: f64 = self.stages.iter().map(|s| s.alpha).sum();
        if self.stages.is_empty() || total <= 0.0 {
            return 0.5;
        }
        let margin: f64 = self.stages.iter().map(|s| s.alpha * vote(&s.tree, x)).sum::<f64>() / total;
        ((margin + 1.0) / 2.0).clamp(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separable_line_reaches_zero_error() {
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64 * 0.37]).collect();
        let y: Vec<bool> = (0..20).map(|i| i >= 9).collect();
        let cfg = BoostConfig { estimators: 10, learning_rate: 1.0, base_depth: 1 };
        let (m, trace) = AdaBoost::fit(&x, &y, &cfg);
        assert!(!trace.is_empty() && trace.len() <= 10);
        assert_eq!(trace.last().unwrap().ensemble_error, 0.0);
        for (r, &l) in x.iter().zip(&y) {
            assert_eq!(m.score(r) >= 0.5, l);
        }
    }

    #[test]
    fn interval_needs_several_rounds() {
        // FAKE only inside (5, 14): no single stump separates it.
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64]).collect();
        let y: Vec<bool> = (0..20).map(|i| (6..14).contains(&i)).collect();
        let cfg = BoostConfig { estimators: 30, learning_rate: 1.0, base_depth: 1 };
        let (_, trace) = AdaBoost::fit(&x, &y, &cfg);
        assert!(trace.len() > 1);
        for t in &trace {
            assert!((t.weight_sum - 1.0).abs() < 1e-9);
            assert!(t.min_weight >= 0.0);
            assert!(t.error < 0.5);
        }
        assert_eq!(trace.last().unwrap().ensemble_error, 0.0);
    }
}
