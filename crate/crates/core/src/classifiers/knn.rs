//! k-nearest neighbours over z-scored features (scaler fitted on training rows).

use serde::{Deserialize, Serialize};

use super::Scaler;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knn {
    pub k: usize,
    pub scaler: Scaler,
    pub rows: Vec<Vec<f64>>,
    pub fake: Vec<bool>,
}

impl Knn {
    pub fn fit(x: &[Vec<f64>], y: &[bool], k: usize) -> Knn {
        let scaler = Scaler::fit(x);
        let rows = x.iter().map(|r| scaler.transform(r)).collect();
        Knn { k, scaler, rows, fake: y.to_vec() }
    }

    /// Share of FAKE rows among the `k` nearest; distance ties go to the earlier row.
    pub fn score(&self, x: &[f64]) -> f64 {
        let q = self.scaler.transform(x);
        let mut dist: Vec<(f64, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.iter().zip(&q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>(), i))
            .collect();
        let k = self.k.min(dist.len()).max(1);
        let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if k < dist.len() {
            dist.select_nth_unstable_by(k - 1, cmp);
        }
        let hits = dist[..k].iter().filter(|(_, i)| self.fake[*i]).count();
        hits as f64 / k as f64
    }
}
