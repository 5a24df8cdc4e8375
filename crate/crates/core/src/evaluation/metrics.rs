use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::corpus::Label;

/// Precision-recall points swept over descending score thresholds, starting at the
/// `(recall 0, precision 1)` anchor. Tied scores enter the sweep together.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrCurve {
    /// `(recall, precision)` pairs.
    pub points: Vec<(f64, f64)>,
}

pub fn pr_curve(scores: &[f64], labels: &[Label]) -> Result<PrCurve, EvalError> {
    if scores.len() != labels.len() {
        return Err(EvalError::LengthMismatch { scores: scores.len(), labels: labels.len() });
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(EvalError::NonFiniteScore);
    }
    let positives = labels.iter().filter(|l| l.is_fake()).count();
    if positives == 0 {
        return Err(EvalError::NoPositives);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let p = positives as f64;
    let mut points = vec![(0.0, 1.0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let s = scores[order[i]];
        while i < order.len() && scores[order[i]] == s {
            if labels[order[i]].is_fake() {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push((tp as f64 / p, tp as f64 / (tp + fp) as f64));
    }
    Ok(PrCurve { points })
}

impl PrCurve {
    /// Step-wise average precision: sum of recall increments times precision.
    pub fn average_precision(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0) * w[1].1)
            .sum()
    }
}

/// Area under the precision-recall curve as average precision, FAKE positive.
pub fn auc_pr(scores: &[f64], labels: &[Label]) -> Result<f64, EvalError> {
    Ok(pr_curve(scores, labels)?.average_precision().clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl Confusion {
    /// Counts with FAKE as the positive class.
    pub fn from_predictions(predicted: &[Label], actual: &[Label]) -> Confusion {
        let mut c = Confusion::default();
        for (p, a) in predicted.iter().zip(actual) {
            match (p.is_fake(), a.is_fake()) {
                (true, true) => c.tp += 1,
                (true, false) => c.fp += 1,
                (false, false) => c.tn += 1,
                (false, true) => c.fn_ += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn precision(&self) -> f64 {
        if self.tp == 0 {
            0.0
        } else {
            self.tp as f64 / (self.tp + self.fp) as f64
        }
    }

    pub fn recall(&self) -> f64 {
        if self.tp == 0 {
            0.0
        } else {
            self.tp as f64 / (self.tp + self.fn_) as f64
        }
    }
}

/// `2PR / (P + R)`, defined as 0 when there are no true positives.
pub fn f1(c: &Confusion) -> f64 {
    if c.tp == 0 {
        return 0.0;
    }
    let (p, r) = (c.precision(), c.recall());
    2.0 * p * r / (p + r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{Fake as F, Real as R};

    #[test]
    fn three_point_curve() {
        let c = pr_curve(&[0.9, 0.8, 0.3], &[F, R, F]).unwrap();
        let expect = [(0.0, 1.0), (0.5, 1.0), (0.5, 0.5), (1.0, 2.0 / 3.0)];
        assert_eq!(c.points.len(), expect.len());
        for (a, b) in c.points.iter().zip(expect) {
            assert!((a.0 - b.0).abs() < 1e-15 && (a.1 - b.1).abs() < 1e-15);
        }
        let ap = auc_pr(&[0.9, 0.8, 0.3], &[F, R, F]).unwrap();
        assert!((ap - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn separated_and_constant() {
        let labels = [F, F, R, R, R];
        let c = pr_curve(&[0.9, 0.8, 0.2, 0.1, 0.0], &labels).unwrap();
        assert!(c.points.contains(&(1.0, 1.0)));
        assert_eq!(auc_pr(&[0.9, 0.8, 0.2, 0.1, 0.0], &labels).unwrap(), 1.0);
        let c = pr_curve(&[0.5; 5], &labels).unwrap();
        assert_eq!(c.points, vec![(0.0, 1.0), (1.0, 0.4)]);
        assert!((auc_pr(&[0.5; 5], &labels).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(pr_curve(&[0.1], &[R]), Err(EvalError::NoPositives)));
        assert!(matches!(pr_curve(&[0.1, 0.2], &[F]), Err(EvalError::LengthMismatch { .. })));
        assert!(matches!(pr_curve(&[f64::NAN], &[F]), Err(EvalError::NonFiniteScore)));
    }

    #[test]
    fn f1_values() {
        assert_eq!(f1(&Confusion { tp: 10, fp: 0, tn: 5, fn_: 0 }), 1.0);
        assert_eq!(f1(&Confusion { tp: 1, fp: 1, tn: 0, fn_: 1 }), 0.5);
        assert_eq!(f1(&Confusion { tp: 0, fp: 3, tn: 2, fn_: 4 }), 0.0);
        let c = Confusion::from_predictions(&[F, F, R, R], &[F, R, R, F]);
        assert_eq!(c, Confusion { tp: 1, fp: 1, tn: 1, fn_: 1 });
    }
}
