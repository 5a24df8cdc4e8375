//! CART with weighted Gini impurity. Shared by the single tree, the forest and the
//! boosted ensemble.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::rng::seeded;

#[derive(Debug, Clone)]
pub struct TreeConfig {
    pub max_depth: Option<usize>,
    pub min_samples_leaf: usize,
    /// Features sampled per split; `None` tries every feature.
    pub max_features: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Node {
    Leaf {
        /// Weighted share of FAKE training rows that reached this leaf.
        fake_fraction: f64,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

struct Builder<'a, R> {
    x: &'a [Vec<f64>],
    y: &'a [bool],
    w: &'a [f64],
    cfg: &'a TreeConfig,
    rng: R,
    nodes: Vec<Node>,
}

fn gini_mass(fake: f64, total: f64) -> f64 {
    if total <= 0.0 {
        0.0
    } else {
        let p = fake / total;
        2.0 * p * (1.0 - p) * total
    }
}

impl<R: Rng> Builder<'_, R> {
    fn totals(&self, idx: &[usize]) -> (f64, f64) {
        idx.iter().fold((0.0, 0.0), |(f, t), &i| {
            (f + if self.y[i] { self.w[i] } else { 0.0 }, t + self.w[i])
        })
    }

    /// Best `(feature, threshold, impurity)` over the candidate features.
    fn best_split(&self, idx: &[usize], features: &[usize], fake: f64, total: f64) -> Option<(usize, f64, f64)> {
        let min_leaf = self.cfg.min_samples_leaf.max(1);
        let mut best: Option<(usize, f64, f64)> = None;
        let mut sorted = idx.to_vec();
        for &f in features {
            sorted.sort_by(|&a, &b| self.x[a][f].total_cmp(&self.x[b][f]).then(a.cmp(&b)));
            let (mut lf, mut lt) = (0.0, 0.0);
            for pos in 0..sorted.len() - 1 {
                let i = sorted[pos];
                lf += if self.y[i] { self.w[i] } else { 0.0 };
                lt += self.w[i];
                let (v, next) = (self.x[i][f], self.x[sorted[pos + 1]][f]);
                if v == next || pos + 1 < min_leaf || sorted.len() - pos - 1 < min_leaf {
                    continue;
                }
                let imp = gini_mass(lf, lt) + gini_mass(fake - lf, total - lt);
                if best.is_none_or(|(_, _, b)| imp < b - 1e-12) {
                    let mut threshold = v + (next - v) / 2.0;
                    if threshold >= next || !threshold.is_finite() {
                        threshold = v;
                    }
                    best = Some((f, threshold, imp));
                }
            }
        }
        best
    }

    fn candidate_features(&mut self) -> Vec<usize> {
        let d = self.x[0].len();
        match self.cfg.max_features {
            Some(m) if m < d => {
                let mut f = sample(&mut self.rng, d, m).into_vec();
                f.sort_unstable();
                f
            }
            _ => (0..d).collect(),
        }
    }

    fn build(&mut self, idx: &mut [usize], depth: usize) -> usize {
        let (fake, total) = self.totals(idx);
        let id = self.nodes.len();
        let fraction = if total > 0.0 { fake / total } else { 0.5 };
        self.nodes.push(Node::Leaf { fake_fraction: fraction });

        let pure = fake <= 0.0 || fake >= total;
        let depth_ok = self.cfg.max_depth.is_none_or(|m| depth < m);
        if pure || !depth_ok || idx.len() < 2 * self.cfg.min_samples_leaf.max(1) {
            return id;
        }
        let features = self.candidate_features();
        let Some((feature, threshold, imp)) = self.best_split(idx, &features, fake, total) else {
            return id;
        };
        if imp >= gini_mass(fake, total) - 1e-12 {
            return id;
        }
        let mut split = 0;
        for k in 0..idx.len() {
            if self.x[idx[k]][feature] <= threshold {
                idx.swap(split, k);
                split += 1;
            }
        }
        let (l, r) = idx.split_at_mut(split);
        let left = self.build(l, depth + 1);
        let right = self.build(r, depth + 1);
        self.nodes[id] = Node::Split { feature, threshold, left, right };
        id
    }
}

impl Tree {
    /// Fits on all rows with optional sample weights (uniform when `None`).
    pub fn fit(x: &[Vec<f64>], y: &[bool], weights: Option<&[f64]>, cfg: &TreeConfig, seed: u64) -> Tree {
        let uniform;
        let w = match weights {
            Some(w) => w,
            None => {
                uniform = vec![1.0; x.len()];
                &uniform
            }
        };
        let mut idx: Vec<usize> = (0..x.len()).collect();
        Tree::fit_indices(x, y, w, &mut idx, cfg, seed)
    }

    /// Fits on the given row indices; repeated indices act as bootstrap copies.
    pub fn fit_indices(
        x: &[Vec<f64>],
        y: &[bool],
        w: &[f64],
        idx: &mut [usize],
        cfg: &TreeConfig,
        seed: u64,
    ) -> Tree {
        let mut b = Builder { x, y, w, cfg, rng: seeded(seed, 0x7ee), nodes: Vec::new() };
        if !idx.is_empty() {
            b.build(idx, 0);
        } else {
            b.nodes.push(Node::Leaf { fake_fraction: 0.5 });
        }
        Tree { nodes: b.nodes }
    }

    pub fn score(&self, x: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf { fake_fraction } => return fake_fraction,
                Node::Split { feature, threshold, left, right } => {
                    at = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, left).max(walk(nodes, right)),
            }
        }
        walk(&self.nodes, 0)
    }

    pub fn split_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Split { .. })).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unlimited() -> TreeConfig {
        TreeConfig { max_depth: None, min_samples_leaf: 1, max_features: None }
    }

    #[test]
    fn single_threshold_needs_one_split() {
        let x: Vec<Vec<f64>> = (0..12).map(|i| vec![(i % 5) as f64, i as f64]).collect();
        let y: Vec<bool> = (0..12).map(|i| i >= 7).collect();
        let t = Tree::fit(&x, &y, None, &unlimited(), 0);
        assert_eq!(t.split_count(), 1);
        for (row, &label) in x.iter().zip(&y) {
            assert_eq!(t.score(row) >= 0.5, label);
        }
        match t.nodes[0] {
            Node::Split { feature, threshold, .. } => {
                assert_eq!(feature, 1);
                assert_eq!(threshold, 6.5);
            }
            _ => panic!("root should split"),
        }
    }

    #[test]
    fn depth_limit_and_weights() {
        let x: Vec<Vec<f64>> = (0..8).map(|i| vec![i as f64]).collect();
        let y = vec![false, true, false, true, false, true, false, true];
        let stump = Tree::fit(&x, &y, None, &TreeConfig { max_depth: Some(1), ..unlimited() }, 0);
        assert!(stump.depth() <= 1);
        let full = Tree::fit(&x, &y, None, &unlimited(), 0);
        assert!(x.iter().zip(&y).all(|(r, &l)| (full.score(r) >= 0.5) == l));

        // Heavy weight on the last row pulls its leaf toward FAKE.
        let x = vec![vec![0.0], vec![0.0], vec![0.0]];
        let y = vec![false, false, true];
        let t = Tree::fit(&x, &y, Some(&[1.0, 1.0, 8.0]), &unlimited(), 0);
        assert!((t.score(&[0.0]) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn min_samples_leaf_is_respected() {
        let x: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        let y: Vec<bool> = (0..10).map(|i| i == 9).collect();
        let t = Tree::fit(&x, &y, None, &TreeConfig { min_samples_leaf: 3, ..unlimited() }, 0);
        assert!(t.score(&[9.0]) < 1.0);
    }
}
