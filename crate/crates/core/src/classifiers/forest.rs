//! Bootstrapped CART ensemble with per-split feature subsampling.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::tree::{Tree, TreeConfig};
use crate::rng::seeded;

#[derive(Debug, Clone)]
pub struct ForestConfig {
    pub trees: usize,
    pub max_features: Option<usize>,
    pub max_depth: Option<usize>,
    pub min_samples_leaf: usize,
    pub bootstrap: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    pub trees: Vec<Tree>,
}

impl Forest {
    pub fn fit(x: &[Vec<f64>], y: &[bool], cfg: &ForestConfig, seed: u64) -> Forest {
        let n = x.len();
        let d = x.first().map_or(0, Vec::len);
        let max_features = cfg
            .max_features
            .unwrap_or_else(|| (d as f64).sqrt().ceil() as usize)
            .clamp(1, d.max(1));
        let tree_cfg = TreeConfig {
            max_depth: cfg.max_depth,
            min_samples_leaf: cfg.min_samples_leaf,
            max_features: Some(max_features),
        };
        let w = vec![1.0; n];
        let trees = (0..cfg.trees)
            .map(|t| {
                let tree_seed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(t as u64);
                let mut idx: Vec<usize> = if cfg.bootstrap {
                    let mut rng = seeded(tree_seed, 1);
                    let mut v: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
                    v.sort_unstable();
                    v
                } else {
                    (0..n).collect()
                };
                Tree::fit_indices(x, y, &w, &mut idx, &tree_cfg, tree_seed)
            })
            .collect();
        Forest { trees }
    }

    /// Mean of the trees' leaf FAKE fractions.
    pub fn score(&self, x: &[f64]) -> f64 {
        if self.trees.is_empty() {
            return 0.5;
        }
        self.trees.iter().map(|t| t.score(x)).sum::<f64>() / self.trees.len() as f64
    }
}
