//! Gaussian naive Bayes with a variance floor.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    /// Index 0 = REAL, 1 = FAKE.
    pub priors: [f64; 2],
    pub means: [Vec<f64>; 2],
    pub variances: [Vec<f64>; 2],
}

impl GaussianNb {
    pub fn fit(x: &[Vec<f64>], y: &[bool], var_floor: f64) -> GaussianNb {
        let d = x.first().map_or(0, Vec::len);
        let mut counts = [0usize; 2];
        let mut means = [vec![0.0; d], vec![0.0; d]];
        for (row, &f) in x.iter().zip(y) {
            let c = f as usize;
            counts[c] += 1;
            for (m, v) in means[c].iter_mut().zip(row) {
                *m += v;
            }
        }
        for c in 0..2 {
            let n = counts[c].max(1) as f64;
            means[c].iter_mut().for_each(|m| *m /= n);
        }
        let mut variances = [vec![0.0; d], vec![0.0; d]];
        for (row, &f) in x.iter().zip(y) {
            let c = f as usize;
            for ((s, v), m) in variances[c].iter_mut().zip(row).zip(&means[c]) {
                *s += (v - m) * (v - m);
            }
        }
        for c in 0..2 {
            let n = counts[c].max(1) as f64;
            variances[c].iter_mut().for_each(|s| *s = (*s / n).max(var_floor));
        }
        let total = x.len() as f64;
        GaussianNb {
            priors: [counts[0] as f64 / total, counts[1] as f64 / total],
            means,
            variances,
        }
    }

    fn log_joint(&self, c: usize, x: &[f64]) -> f64 {
        let mut lp = self.priors[c].ln();
        for ((v, m), s2) in x.iter().zip(&self.means[c]).zip(&self.variances[c]) {
            lp -= 0.5 * (2.0 * std::f64::consts::PI * s2).ln() + (v - m) * (v - m) / (2.0 * s2);
        }
        lp
    }

    /// Posterior probability of FAKE.
    pub fn score(&self, x: &[f64]) -> f64 {
        let real = self.log_joint(0, x);
        let fake = self.log_joint(1, x);
        1.0 / (1.0 + (real - fake).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> GaussianNb {
        let x = vec![vec![0.0], vec![1.0], vec![4.0], vec![5.0]];
        GaussianNb::fit(&x, &[false, false, true, true], 1e-9)
    }

    #[test]
    fn closed_form_moments() {
        let m = toy();
        assert_eq!((m.means[0][0], m.means[1][0]), (0.5, 4.5));
        assert_eq!((m.variances[0][0], m.variances[1][0]), (0.25, 0.25));
        assert_eq!(m.priors, [0.5, 0.5]);
    }

    #[test]
    fn posteriors() {
        let m = toy();
        assert!(m.score(&[1.0]) < 0.5);
        assert_eq!(m.score(&[2.5]), 0.5);
        assert!(m.score(&[4.0]) > 0.5);
    }

    #[test]
    fn constant_column_uses_floor() {
        let x = vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, 5.0], vec![1.0, 6.0]];
        let m = GaussianNb::fit(&x, &[false, false, true, true], 1e-9);
        assert_eq!(m.variances[0][0], 1e-9);
        assert!(m.score(&[1.0, 5.5]).is_finite());
    }
}
