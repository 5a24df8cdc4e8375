//! Four-step feature selection: correlation ranking, covariance summary, a greedy
//! wrapper over a learner's validation PR-AUC, and an entropy-weighted TOPSIS check
//! over the candidate subsets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifiers::{fit, ClassifierError, ClassifierKind, HyperParams};
use crate::evaluation::auc_pr;
use crate::features::FeatureMatrix;

#[derive(Debug, Error)]
pub enum SelectionError {
    #[error("columns of length {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("correlation needs at least two rows")]
    TooFewRows,
    #[error("merit of an empty subset")]
    EmptySubset,
    #[error("unknown feature `{0}`")]
    UnknownFeature(String),
    #[error("no feature reaches validation PR-AUC {floor} ({})", match best {
        Some(b) => format!("best {b:.4}"),
        None => "no feature passed the correlation threshold".to_string(),
    })]
    NoFeatureMeetsFloor { floor: f64, best: Option<f64> },
    #[error("entropy weights need at least two alternatives")]
    SingleAlternative,
    #[error("decision matrix: {0}")]
    BadDecisionMatrix(String),
    #[error("every weighted column is constant")]
    DegenerateColumn,
    #[error("train and validation columns differ")]
    ColumnMismatch,
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
}

pub type Result<T> = std::result::Result<T, SelectionError>;

/// Pearson correlation. A constant column yields `(0.0, true)`.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<(f64, bool)> {
    if x.len() != y.len() {
        return Err(SelectionError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(SelectionError::TooFewRows);
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Ok((0.0, true));
    }
    Ok(((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0), false))
}

/// Absolute feature-class and feature-feature correlations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationStats {
    pub features: Vec<String>,
    pub corr_fc: Vec<f64>,
    pub corr_ff: Vec<Vec<f64>>,
    /// Features whose column is constant, so every correlation involving them is 0.
    pub degenerate: Vec<String>,
}

impl CorrelationStats {
    pub fn compute(m: &FeatureMatrix) -> Result<CorrelationStats> {
        let cols: Vec<Vec<f64>> = (0..m.width()).map(|j| m.column(j)).collect();
        let class: Vec<f64> = m.labels.iter().map(|l| l.as_f64()).collect();
        let mut corr_fc = Vec::with_capacity(cols.len());
        let mut degenerate = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            let (r, _) = pearson(c, &class)?;
            corr_fc.push(r.abs());
            if c.iter().all(|v| *v == c[0]) {
                degenerate.push(m.feature_names[j].clone());
            }
        }
        let d = cols.len();
        let mut corr_ff = vec![vec![0.0; d]; d];
        for i in 0..d {
            corr_ff[i][i] = 1.0;
            for j in i + 1..d {
                let r = pearson(&cols[i], &cols[j])?.0.abs();
                corr_ff[i][j] = r;
                corr_ff[j][i] = r;
            }
        }
        Ok(CorrelationStats { features: m.feature_names.clone(), corr_fc, corr_ff, degenerate })
    }

    fn indices(&self, subset: &[String]) -> Result<Vec<usize>> {
        if subset.is_empty() {
            return Err(SelectionError::EmptySubset);
        }
        subset
            .iter()
            .map(|s| self.features.iter().position(|f| f == s).ok_or_else(|| SelectionError::UnknownFeature(s.clone())))
            .collect()
    }
}

/// Min-max normalised within-class squared deviation per feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceSummary {
    pub features: Vec<String>,
    /// Mean of the REAL and FAKE within-class mean squared deviations, before normalising.
    pub raw: Vec<f64>,
    pub nr_covar: Vec<f64>,
}

impl CovarianceSummary {
    pub fn compute(m: &FeatureMatrix) -> CovarianceSummary {
        let raw: Vec<f64> = (0..m.width())
            .map(|j| {
                let col = m.column(j);
                let part = |fake: bool| {
                    let xs: Vec<f64> =
                        col.iter().zip(&m.labels).filter(|(_, l)| l.is_fake() == fake).map(|(v, _)| *v).collect();
                    if xs.is_empty() {
                        return 0.0;
                    }
                    let mu = xs.iter().sum::<f64>() / xs.len() as f64;
                    xs.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / xs.len() as f64
                };
                (part(false) + part(true)) / 2.0
            })
            .collect();
        let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let nr_covar = raw.iter().map(|v| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 }).collect();
        CovarianceSummary { features: m.feature_names.clone(), raw, nr_covar }
    }

    fn value(&self, name: &str) -> Result<f64> {
        self.features
            .iter()
            .position(|f| f == name)
            .map(|i| self.nr_covar[i])
            .ok_or_else(|| SelectionError::UnknownFeature(name.to_string()))
    }

    /// Features by descending `nr_covar`, ties in column order.
    pub fn ranking(&self) -> Vec<String> {
        let mut idx: Vec<usize> = (0..self.features.len()).collect();
        idx.sort_by(|&a, &b| self.nr_covar[b].total_cmp(&self.nr_covar[a]).then(a.cmp(&b)));
        idx.into_iter().map(|i| self.features[i].clone()).collect()
    }
}

fn subset_averages(subset: &[String], stats: &CorrelationStats) -> Result<(f64, f64, f64)> {
    let idx = stats.indices(subset)?;
    let k = idx.len() as f64;
    let avg_fc = idx.iter().map(|&i| stats.corr_fc[i]).sum::<f64>() / k;
    let mut pairs = 0.0;
    let mut sum_ff = 0.0;
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            sum_ff += stats.corr_ff[i][j];
            pairs += 1.0;
        }
    }
    let avg_ff = if pairs > 0.0 { sum_ff / pairs } else { 0.0 };
    Ok((k, avg_fc, avg_ff))
}

/// `k·avg|r_fc| / sqrt(k + k(k-1)·avg|r_ff|)`.
pub fn merit_corr(subset: &[String], stats: &CorrelationStats) -> Result<f64> {
    let (k, fc, ff) = subset_averages(subset, stats)?;
    Ok(k * fc / (k + k * (k - 1.0) * ff).sqrt())
}

/// As [`merit_corr`] with the subset's mean `nr_covar` added to the denominator.
pub fn merit_corrcov(subset: &[String], stats: &CorrelationStats, cov: &CovarianceSummary) -> Result<f64> {
    let (k, fc, ff) = subset_averages(subset, stats)?;
    let mut nr = 0.0;
    for s in subset {
        nr += cov.value(s)?;
    }
    Ok(k * fc / (nr / k + (k + k * (k - 1.0) * ff).sqrt()))
}

/// Names scoring strictly above `threshold`, best first; ties keep `names` order.
pub fn rank_by_threshold(names: &[String], scores: &[f64], threshold: f64) -> Vec<String> {
    let mut idx: Vec<usize> = (0..names.len()).filter(|&i| scores[i] > threshold).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    idx.into_iter().map(|i| names[i].clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WrapperStep {
    pub feature: String,
    /// Validation PR-AUC of the kept subset plus this feature.
    pub auc_pr: f64,
    pub kept: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WrapperResult {
    pub kept: Vec<String>,
    pub auc_pr: f64,
    pub steps: Vec<WrapperStep>,
}

fn subset_auc(names: &[String], train: &FeatureMatrix, validation: &FeatureMatrix, learner: &HyperParams) -> Result<f64> {
    let tr = train.select_columns(names).ok_or(SelectionError::ColumnMismatch)?;
    let va = validation.select_columns(names).ok_or(SelectionError::ColumnMismatch)?;
    let model = fit(learner, &tr)?;
    let scores = model.predict_scores(&va)?;
    Ok(auc_pr(&scores, &va.labels).map_err(ClassifierError::from)?)
}

/// Greedy forward pass over `ranked`. The first feature is kept once its PR-AUC
/// reaches `auc_floor`; after that a feature is kept only if it raises the running
/// PR-AUC by more than `min_gain`.
pub fn wrapper_filter(
    ranked: &[String],
    train: &FeatureMatrix,
    validation: &FeatureMatrix,
    learner: &HyperParams,
    auc_floor: f64,
    min_gain: f64,
) -> Result<WrapperResult> {
    let mut kept: Vec<String> = Vec::new();
    let mut current = f64::NAN;
    let mut best: Option<f64> = None;
    let mut steps = Vec::new();
    for f in ranked {
        let mut candidate = kept.clone();
        candidate.push(f.clone());
        let auc = subset_auc(&candidate, train, validation, learner)?;
        best = Some(best.map_or(auc, |b: f64| b.max(auc)));
        let keep = if kept.is_empty() { auc >= auc_floor } else { auc > current + min_gain };
        if keep {
            kept = candidate;
            current = auc;
        }
        steps.push(WrapperStep { feature: f.clone(), auc_pr: auc, kept: keep });
    }
    if kept.is_empty() {
        return Err(SelectionError::NoFeatureMeetsFloor { floor: auc_floor, best });
    }
    Ok(WrapperResult { kept, auc_pr: current, steps })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionMatrix {
    pub alternatives: Vec<String>,
    pub attributes: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(alternatives: Vec<String>, attributes: Vec<String>, rows: Vec<Vec<f64>>) -> Result<DecisionMatrix> {
        let bad = |m: &str| Err(SelectionError::BadDecisionMatrix(m.to_string()));
        if rows.len() != alternatives.len() {
            return bad("row count differs from alternative count");
        }
        if attributes.is_empty() {
            return bad("no attributes");
        }
        if rows.iter().any(|r| r.len() != attributes.len()) {
            return bad("ragged rows");
        }
        if rows.iter().flatten().any(|v| !(0.0..=1.0).contains(v)) {
            return bad("entries must lie in [0, 1]");
        }
        Ok(DecisionMatrix { alternatives, attributes, rows })
    }

    fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(move |r| r[j])
    }
}

/// Per-attribute entropy, divergence and weight rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyWeights {
    pub ent: Vec<f64>,
    pub div: Vec<f64>,
    pub wgt: Vec<f64>,
}

/// `ent = -(1/ln n) Σ A ln A` over the raw column values (0 ln 0 = 0), `div = 1 - ent`,
/// `wgt = div / Σ div`. A column whose entropy exceeds 1 contributes zero weight, and
/// if no column has positive divergence the weights are uniform.
pub fn entropy_weights(dm: &DecisionMatrix) -> Result<EntropyWeights> {
    let n = dm.rows.len();
    if n < 2 {
        return Err(SelectionError::SingleAlternative);
    }
    let ln_n = (n as f64).ln();
    let ent: Vec<f64> = (0..dm.attributes.len())
        .map(|j| -dm.column(j).map(|a| if a > 0.0 { a * a.ln() } else { 0.0 }).sum::<f64>() / ln_n)
        .collect();
    let div: Vec<f64> = ent.iter().map(|e| 1.0 - e).collect();
    let total: f64 = div.iter().map(|d| d.max(0.0)).sum();
    let wgt = if total > 0.0 {
        div.iter().map(|d| d.max(0.0) / total).collect()
    } else {
        vec![1.0 / div.len() as f64; div.len()]
    };
    Ok(EntropyWeights { ent, div, wgt })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `Δ*/(Δ* + Δ+)`: distance to the ideal over the total, so smaller is closer.
    #[default]
    Paper,
    /// `Δ+/(Δ* + Δ+)`: the textbook relative closeness, larger is closer.
    Standard,
}

/// Closeness from the distances to the ideal (`delta_pis`) and anti-ideal (`delta_nis`).
pub fn closeness(delta_pis: f64, delta_nis: f64, orientation: Orientation) -> f64 {
    let total = delta_pis + delta_nis;
    if total <= 0.0 {
        return 0.5;
    }
    match orientation {
        Orientation::Paper => delta_pis / total,
        Orientation::Standard => delta_nis / total,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopsisResult {
    pub orientation: Orientation,
    pub delta_pis: Vec<f64>,
    pub delta_nis: Vec<f64>,
    pub closeness: Vec<f64>,
    /// Alternative indices by descending closeness, ties by index.
    pub ranking: Vec<usize>,
    /// The alternative nearest the ideal solution.
    pub preferred: usize,
}

pub fn topsis(dm: &DecisionMatrix, weights: &[f64], orientation: Orientation) -> Result<TopsisResult> {
    if weights.len() != dm.attributes.len() {
        return Err(SelectionError::BadDecisionMatrix("one weight per attribute".into()));
    }
    if dm.rows.is_empty() {
        return Err(SelectionError::BadDecisionMatrix("no alternatives".into()));
    }
    let weighted: Vec<Vec<f64>> =
        dm.rows.iter().map(|r| r.iter().zip(weights).map(|(v, w)| v * w).collect()).collect();
    let b = weights.len();
    let col = |j: usize| weighted.iter().map(move |r| r[j]);
    let pis: Vec<f64> = (0..b).map(|j| col(j).fold(f64::NEG_INFINITY, f64::max)).collect();
    let nis: Vec<f64> = (0..b).map(|j| col(j).fold(f64::INFINITY, f64::min)).collect();
    if pis.iter().zip(&nis).all(|(p, n)| p == n) {
        return Err(SelectionError::DegenerateColumn);
    }
    let dist = |r: &[f64], target: &[f64]| r.iter().zip(target).map(|(v, t)| (v - t) * (v - t)).sum::<f64>().sqrt();
    let delta_pis: Vec<f64> = weighted.iter().map(|r| dist(r, &pis)).collect();
    let delta_nis: Vec<f64> = weighted.iter().map(|r| dist(r, &nis)).collect();
    let close: Vec<f64> = delta_pis.iter().zip(&delta_nis).map(|(&p, &n)| closeness(p, n, orientation)).collect();
    let mut ranking: Vec<usize> = (0..close.len()).collect();
    ranking.sort_by(|&a, &b| close[b].total_cmp(&close[a]).then(a.cmp(&b)));
    let preferred = match orientation {
        Orientation::Standard => ranking[0],
        Orientation::Paper => {
            let mut by_distance: Vec<usize> = (0..close.len()).collect();
            by_distance.sort_by(|&a, &b| close[a].total_cmp(&close[b]).then(a.cmp(&b)));
            by_distance[0]
        }
    };
    Ok(TopsisResult { orientation, delta_pis, delta_nis, closeness: close, ranking, preferred })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionConfig {
    /// Minimum |corr_fc| for a feature to enter the ranking.
    pub threshold: f64,
    pub auc_floor: f64,
    /// PR-AUC gain a later feature must add to be kept by the wrapper.
    pub tolerance: f64,
    pub learner: ClassifierKind,
    pub orientation: Orientation,
    pub seed: u64,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            threshold: 0.1,
            auc_floor: 0.5,
            tolerance: 0.005,
            learner: ClassifierKind::GaussianNb,
            orientation: Orientation::Paper,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSubset {
    pub name: String,
    pub features: Vec<String>,
    pub merit_corr: f64,
    pub merit_corrcov: f64,
    pub auc_pr: f64,
    pub mean_corr_fc: f64,
    pub mean_nr_covar: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionReport {
    pub config: SelectionConfig,
    pub correlations: CorrelationStats,
    pub covariance: CovarianceSummary,
    pub covariance_ranking: Vec<String>,
    pub threshold: f64,
    pub ranked_features: Vec<String>,
    pub merit_corr: f64,
    pub merit_corrcov: f64,
    pub wrapper: WrapperResult,
    pub wrapper_kept: Vec<String>,
    pub candidates: Vec<CandidateSubset>,
    pub decision_matrix: DecisionMatrix,
    pub entropy_weights: EntropyWeights,
    pub topsis: TopsisResult,
    /// Whether the TOPSIS-preferred candidate has exactly the wrapper's features.
    pub verified: bool,
}

impl SelectionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Ranks, filters and verifies the columns of `train`, scoring subsets on `validation`.
pub fn select_features(train: &FeatureMatrix, validation: &FeatureMatrix, cfg: &SelectionConfig) -> Result<SelectionReport> {
    if train.feature_names != validation.feature_names {
        return Err(SelectionError::ColumnMismatch);
    }
    let learner = HyperParams::default_for(cfg.learner).with_seed(cfg.seed);
    let stats = CorrelationStats::compute(train)?;
    let cov = CovarianceSummary::compute(train);
    let ranked = rank_by_threshold(&stats.features, &stats.corr_fc, cfg.threshold);
    let wrapper = wrapper_filter(&ranked, train, validation, &learner, cfg.auc_floor, cfg.tolerance)?;

    let mut best_prefix = (f64::NEG_INFINITY, 1);
    for k in 1..=ranked.len() {
        let m = merit_corrcov(&ranked[..k], &stats, &cov)?;
        if m > best_prefix.0 {
            best_prefix = (m, k);
        }
    }
    let subsets = [
        ("threshold_ranked", ranked.clone()),
        ("best_merit_prefix", ranked[..best_prefix.1].to_vec()),
        ("wrapper_kept", wrapper.kept.clone()),
        ("all_features", stats.features.clone()),
    ];
    let mut candidates = Vec::new();
    for (name, features) in subsets {
        let idx = stats.indices(&features)?;
        let k = idx.len() as f64;
        let mean_nr = features.iter().map(|f| cov.value(f)).sum::<Result<f64>>()? / k;
        candidates.push(CandidateSubset {
            name: name.to_string(),
            merit_corr: merit_corr(&features, &stats)?,
            merit_corrcov: merit_corrcov(&features, &stats, &cov)?,
            auc_pr: subset_auc(&features, train, validation, &learner)?,
            mean_corr_fc: idx.iter().map(|&i| stats.corr_fc[i]).sum::<f64>() / k,
            mean_nr_covar: mean_nr,
            features,
        });
    }
    let attributes = ["merit_corr", "merit_corrcov", "auc_pr", "mean_corr_fc", "one_minus_nr_covar"];
    let rows = candidates
        .iter()
        .map(|c| {
            [c.merit_corr, c.merit_corrcov, c.auc_pr, c.mean_corr_fc, 1.0 - c.mean_nr_covar]
                .iter()
                .map(|v| v.clamp(0.0, 1.0))
                .collect()
        })
        .collect();
    let dm = DecisionMatrix::new(
        candidates.iter().map(|c| c.name.clone()).collect(),
        attributes.iter().map(|s| s.to_string()).collect(),
        rows,
    )?;
    let weights = entropy_weights(&dm)?;
    let ts = topsis(&dm, &weights.wgt, cfg.orientation)?;
    let verified = candidates[ts.preferred].features == wrapper.kept;

    Ok(SelectionReport {
        config: cfg.clone(),
        merit_corr: if ranked.is_empty() { 0.0 } else { merit_corr(&ranked, &stats)? },
        merit_corrcov: if ranked.is_empty() { 0.0 } else { merit_corrcov(&ranked, &stats, &cov)? },
        covariance_ranking: cov.ranking(),
        threshold: cfg.threshold,
        ranked_features: ranked,
        wrapper_kept: wrapper.kept.clone(),
        wrapper,
        candidates,
        decision_matrix: dm,
        entropy_weights: weights,
        topsis: ts,
        verified,
        correlations: stats,
        covariance: cov,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::tests::matrix;
    use crate::corpus::Label;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn stats(fc: &[f64], ff: f64) -> CorrelationStats {
        let d = fc.len();
        let corr_ff = (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { ff }).collect()).collect();
        CorrelationStats {
            features: (0..d).map(|i| format!("f{i}")).collect(),
            corr_fc: fc.to_vec(),
            corr_ff,
            degenerate: vec![],
        }
    }

    #[test]
    fn pearson_examples() {
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap(), (1.0, false));
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[6.0, 4.0, 2.0]).unwrap(), (-1.0, false));
        assert_eq!(pearson(&[1.0, 1.0, 1.0], &[0.0, 1.0, 0.0]).unwrap(), (0.0, true));
        assert!(matches!(pearson(&[1.0], &[1.0, 2.0]), Err(SelectionError::LengthMismatch(1, 2))));
    }

    #[test]
    fn merit_examples() {
        let s = stats(&[0.8], 0.0);
        assert!((merit_corr(&names(&["f0"]), &s).unwrap() - 0.8).abs() < 1e-15);
        let s = stats(&[0.5, 0.5], 0.5);
        assert!((merit_corr(&names(&["f0", "f1"]), &s).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let s = stats(&[0.7, 0.7], 1.0);
        assert!((merit_corr(&names(&["f0", "f1"]), &s).unwrap() - 0.7).abs() < 1e-12);
        assert!(matches!(merit_corr(&[], &s), Err(SelectionError::EmptySubset)));

        let s = stats(&[0.8, 0.1], 0.0);
        let cov = CovarianceSummary { features: s.features.clone(), raw: vec![2.0, 1.0], nr_covar: vec![1.0, 0.0] };
        assert!((merit_corrcov(&names(&["f0"]), &s, &cov).unwrap() - 0.4).abs() < 1e-15);
        assert_eq!(
            merit_corrcov(&names(&["f1"]), &s, &cov).unwrap(),
            merit_corr(&names(&["f1"]), &s).unwrap()
        );
    }

    #[test]
    fn threshold_ranking() {
        let n = names(&["a", "b", "c", "d"]);
        assert_eq!(rank_by_threshold(&n, &[0.9, 0.2, 0.6, 0.6], 0.5), names(&["a", "c", "d"]));
        assert_eq!(rank_by_threshold(&n, &[0.1, 0.4, 0.3, 0.2], 0.0), names(&["b", "c", "d", "a"]));
    }

    #[test]
    fn entropy_examples() {
        let dm = |rows: Vec<Vec<f64>>| {
            let a = rows.len();
            DecisionMatrix::new((0..a).map(|i| i.to_string()).collect(), vec!["x".into()], rows).unwrap()
        };
        let w = entropy_weights(&dm(vec![vec![1.0 / 3.0]; 3])).unwrap();
        assert!((w.ent[0] - 1.0).abs() < 1e-12);
        let w = entropy_weights(&dm(vec![vec![0.7], vec![0.8], vec![0.6]])).unwrap();
        assert!((w.ent[0] - 0.6687).abs() < 1e-3);
        assert_eq!(w.wgt, vec![1.0]);
        assert!(matches!(entropy_weights(&dm(vec![vec![0.5]])), Err(SelectionError::SingleAlternative)));
        assert!(DecisionMatrix::new(vec!["a".into()], vec!["x".into()], vec![vec![1.5]]).is_err());
    }

    #[test]
    fn topsis_examples() {
        assert!((closeness(0.397, 0.16, Orientation::Paper) - 0.7127).abs() < 1e-4);
        let dm = DecisionMatrix::new(
            names(&["best", "mid", "mid2"]),
            names(&["x", "y"]),
            vec![vec![0.9, 0.8], vec![0.5, 0.4], vec![0.5, 0.4]],
        )
        .unwrap();
        let t = topsis(&dm, &[0.5, 0.5], Orientation::Paper).unwrap();
        assert_eq!(t.delta_pis[0], 0.0);
        assert_eq!(t.closeness[0], 0.0);
        assert_eq!(t.closeness[1], t.closeness[2]);
        assert_eq!(t.preferred, 0);
        let s = topsis(&dm, &[0.5, 0.5], Orientation::Standard).unwrap();
        assert_eq!(s.closeness[0], 1.0);
        assert_eq!((s.ranking[0], s.preferred), (0, 0));
        let flat = DecisionMatrix::new(names(&["a", "b"]), names(&["x"]), vec![vec![0.3], vec![0.3]]).unwrap();
        assert!(matches!(topsis(&flat, &[1.0], Orientation::Paper), Err(SelectionError::DegenerateColumn)));
    }

    fn two_column(n: usize, offset: usize) -> FeatureMatrix {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let fake = i % 2 == 0;
                let sep = if fake { 1.0 } else { 0.0 } + ((i * 7 + offset) % 5) as f64 * 0.01;
                let noise = ((i * 37 + offset * 11) % 23) as f64 / 23.0;
                vec![sep, noise, sep]
            })
            .collect();
        let labels = (0..n).map(|i| if i % 2 == 0 { Label::Fake } else { Label::Real }).collect();
        let mut m = matrix(rows, labels);
        m.feature_names = names(&["sep", "noise", "copy"]);
        m
    }

    #[test]
    fn wrapper_rejects_noise_and_duplicates() {
        let (tr, va) = (two_column(60, 0), two_column(40, 3));
        let nb = HyperParams::default_for(ClassifierKind::GaussianNb);
        let r = wrapper_filter(&names(&["sep", "noise", "copy"]), &tr, &va, &nb, 0.0, 0.005).unwrap();
        assert_eq!(r.kept, names(&["sep"]));
        assert_eq!(r.auc_pr, 1.0);
        let err = wrapper_filter(&names(&["noise"]), &tr, &va, &nb, 0.99, 0.005).unwrap_err();
        assert!(matches!(err, SelectionError::NoFeatureMeetsFloor { .. }));
        assert!(matches!(
            wrapper_filter(&[], &tr, &va, &nb, 0.0, 0.005),
            Err(SelectionError::NoFeatureMeetsFloor { best: None, .. })
        ));
    }

    #[test]
    fn select_features_end_to_end() {
        let (tr, va) = (two_column(80, 1), two_column(40, 2));
        let report = select_features(&tr, &va, &SelectionConfig::default()).unwrap();
        assert_eq!(report.wrapper_kept, names(&["sep"]));
        assert!(report.ranked_features.starts_with(&names(&["copy", "sep"])) || report.ranked_features.starts_with(&names(&["sep", "copy"])));
        assert!(report.wrapper_kept.iter().all(|f| report.ranked_features.contains(f)));
        assert!((report.entropy_weights.wgt.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert_eq!(report.to_json(), select_features(&tr, &va, &SelectionConfig::default()).unwrap().to_json());
    }
}
