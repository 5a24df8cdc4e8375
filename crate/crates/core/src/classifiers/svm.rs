//! Linear SVM trained by stochastic sub-gradient descent on the L2-regularised
//! hinge loss (Pegasos step schedule, averaged iterate).

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::Scaler;
use crate::rng::seeded;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvm {
    pub scaler: Scaler,
    pub weights: Vec<f64>,
    pub bias: f64,
}

/// `lambda/2 |w|^2 + mean(max(0, 1 - y f(x)))` over augmented rows.
fn objective(w: &[f64], rows: &[Vec<f64>], y: &[f64], lambda: f64) -> f64 {
    let reg = 0.5 * lambda * w.iter().map(|v| v * v).sum::<f64>();
    let hinge: f64 = rows
        .iter()
        .zip(y)
        .map(|(r, yi)| (1.0 - yi * dot(w, r)).max(0.0))
        .sum::<f64>()
        / rows.len() as f64;
    reg + hinge
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LinearSvm {
    /// Returns the model and the objective of the averaged weights after each epoch.
    pub fn fit(x: &[Vec<f64>], y: &[bool], c: f64, epochs: usize, seed: u64) -> (LinearSvm, Vec<f64>) {
        let n = x.len();
        let scaler = Scaler::fit(x);
        // Constant last column stands in for the bias.
        let rows: Vec<Vec<f64>> = x
            .iter()
            .map(|r| {
                let mut z = scaler.transform(r);
                z.push(1.0);
                z
            })
            .collect();
        let ys: Vec<f64> = y.iter().map(|&f| if f { 1.0 } else { -1.0 }).collect();
        let d = rows.first().map_or(1, Vec::len);
        let lambda = 1.0 / (c * n as f64);
        let radius = 1.0 / lambda.sqrt();

        let mut w = vec![0.0; d];
        let mut sum = vec![0.0; d];
        let mut t = 0u64;
        let mut order: Vec<usize> = (0..n).collect();
        let mut trace = Vec::with_capacity(epochs);
        for epoch in 0..epochs {
            order.sort_unstable();
            order.shuffle(&mut seeded(seed, epoch as u64));
            for &i in &order {
                t += 1;
                let eta = 1.0 / (lambda * t as f64);
                let margin = ys[i] * dot(&w, &rows[i]);
                let shrink = 1.0 - eta * lambda;
                w.iter_mut().for_each(|v| *v *= shrink);
                if margin < 1.0 {
                    for (v, xi) in w.iter_mut().zip(&rows[i]) {
                        *v += eta * ys[i] * xi;
                    }
                }
                let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm > radius {
                    w.iter_mut().for_each(|v| *v *= radius / norm);
                }
                for (s, v) in sum.iter_mut().zip(&w) {
                    *s += v;
                }
            }
            let avg: Vec<f64> = sum.iter().map(|s| s / t as f64).collect();
            trace.push(objective(&avg, &rows, &ys, lambda));
        }
        let avg: Vec<f64> = sum.iter().map(|s| s / t.max(1) as f64).collect();
        let bias = avg[d - 1];
        let weights = avg[..d - 1].to_vec();
        (LinearSvm { scaler, weights, bias }, trace)
    }

    pub fn decision(&self, x: &[f64]) -> f64 {
        dot(&self.weights, &self.scaler.transform(x)) + self.bias
    }

    /// Logistic squashing of the decision value.
    pub fn score(&self, x: &[f64]) -> f64 {
        1.0 / (1.0 + (-self.decision(x)).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn separable() -> (Vec<Vec<f64>>, Vec<bool>) {
        let x: Vec<Vec<f64>> = (0..40)
            .map(|i| {
                let a = (i * 37 % 40) as f64 / 40.0;
                let b = (i * 11 % 40) as f64 / 40.0;
                vec![a, b]
            })
            .collect();
        let y = x.iter().map(|r| r[0] + r[1] > 1.05).collect();
        (x, y)
    }

    #[test]
    fn separates_toy_data() {
        let (x, y) = separable();
        let (m, _) = LinearSvm::fit(&x, &y, 10.0, 200, 3);
        let errors = x.iter().zip(&y).filter(|(r, &l)| (m.decision(r) >= 0.0) != l).count();
        assert!(errors <= 2, "{errors} training errors");
    }

    #[test]
    fn objective_settles() {
        let (x, y) = separable();
        let (_, trace) = LinearSvm::fit(&x, &y, 1.0, 100, 5);
        let last = *trace.last().unwrap();
        assert!(last < trace[0]);
        // Averaged iterates wobble early, then stay within 0.5% of the final value.
        for v in &trace[20..] {
            assert!((v - last).abs() <= 0.005 * last, "{v} vs {last}");
        }
    }
}
