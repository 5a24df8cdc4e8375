//! Named per-document features, class statistics, squared-deviation ("variance")
//! features and the `fset1` / `fset2` matrices.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Corpus, Label};
use crate::text::{AnalyzedDoc, PosTag, TextPipeline};

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("class statistics need at least one real and one fake item")]
    SingleClassCorpus,
    #[error("pooled variance features need statistics frozen from training data")]
    MissingStats,
    #[error("row count {rows} does not match label count {labels}")]
    LengthMismatch { rows: usize, labels: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// The fifteen base features, in canonical order.
pub const BASE_FEATURES: [&str; 15] = [
    "unique", "negative", "neutral", "positive", "compound", "noun", "adjective", "adverb",
    "preposition", "VB", "VBD", "VBG", "VBN", "VBZ", "CN",
];

/// Base features that also get a squared-deviation companion, with its name.
pub const VARIANCE_FEATURES: [(&str, &str); 4] = [
    ("unique", "uniqueVar"),
    ("negative", "negativeVar"),
    ("positive", "positiveVar"),
    ("CN", "cnVar"),
];

pub const FSET1: [&str; 18] = [
    "unique", "negative", "neutral", "positive", "compound", "noun", "adjective", "adverb",
    "preposition", "VB", "VBD", "VBG", "VBN", "VBZ", "CN", "negativeVar", "positiveVar", "cnVar",
];

pub const FSET2: [&str; 8] = [
    "unique", "negative", "positive", "CN", "uniqueVar", "negativeVar", "positiveVar", "cnVar",
];

pub const ALL_FEATURES: [&str; 19] = [
    "unique", "negative", "neutral", "positive", "compound", "noun", "adjective", "adverb",
    "preposition", "VB", "VBD", "VBG", "VBN", "VBZ", "CN", "uniqueVar", "negativeVar",
    "positiveVar", "cnVar",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureSet {
    Fset1,
    Fset2,
    All,
}

impl FeatureSet {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            FeatureSet::Fset1 => &FSET1,
            FeatureSet::Fset2 => &FSET2,
            FeatureSet::All => &ALL_FEATURES,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureSet::Fset1 => "fset1",
            FeatureSet::Fset2 => "fset2",
            FeatureSet::All => "all",
        }
    }

    /// Identifies the feature set whose column list equals `names` exactly.
    pub fn from_names(names: &[String]) -> Option<FeatureSet> {
        [FeatureSet::Fset1, FeatureSet::Fset2, FeatureSet::All]
            .into_iter()
            .find(|fs| fs.names().iter().copied().eq(names.iter().map(String::as_str)))
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fset1" => Ok(FeatureSet::Fset1),
            "fset2" => Ok(FeatureSet::Fset2),
            "all" => Ok(FeatureSet::All),
            other => Err(format!("unknown feature set `{other}` (fset1, fset2, all)")),
        }
    }
}

/// Ratios over the cleaned token stream plus the sentiment summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseFeatureVector {
    pub unique: f64,
    pub negative: f64,
    pub neutral: f64,
    pub positive: f64,
    pub compound: f64,
    pub noun: f64,
    pub adjective: f64,
    pub adverb: f64,
    pub preposition: f64,
    pub vb: f64,
    pub vbd: f64,
    pub vbg: f64,
    pub vbn: f64,
    pub vbz: f64,
    pub cn: f64,
}

impl BaseFeatureVector {
    /// Values in [`BASE_FEATURES`] order.
    pub fn to_array(&self) -> [f64; 15] {
        [
            self.unique, self.negative, self.neutral, self.positive, self.compound, self.noun,
            self.adjective, self.adverb, self.preposition, self.vb, self.vbd, self.vbg, self.vbn,
            self.vbz, self.cn,
        ]
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        BASE_FEATURES.iter().position(|n| *n == name).map(|i| self.to_array()[i])
    }
}

pub fn extract_base(doc: &AnalyzedDoc) -> BaseFeatureVector {
    let s = doc.sentiment;
    if doc.tokens.is_empty() {
        return BaseFeatureVector {
            unique: 0.0,
            negative: 0.0,
            neutral: 1.0,
            positive: 0.0,
            compound: 0.0,
            noun: 0.0,
            adjective: 0.0,
            adverb: 0.0,
            preposition: 0.0,
            vb: 0.0,
            vbd: 0.0,
            vbg: 0.0,
            vbn: 0.0,
            vbz: 0.0,
            cn: 0.0,
        };
    }
    let n = doc.tokens.len() as f64;
    let distinct: HashSet<&str> = doc.tokens.iter().map(|t| t.stem.as_str()).collect();
    let ratio = |tag: PosTag| doc.tokens.iter().filter(|t| t.tag == tag).count() as f64 / n;
    BaseFeatureVector {
        unique: distinct.len() as f64 / n,
        negative: s.neg,
        neutral: s.neu,
        positive: s.pos,
        compound: s.compound,
        noun: ratio(PosTag::Nn),
        adjective: ratio(PosTag::Jj),
        adverb: ratio(PosTag::Rb),
        preposition: ratio(PosTag::In),
        vb: ratio(PosTag::Vb),
        vbd: ratio(PosTag::Vbd),
        vbg: ratio(PosTag::Vbg),
        vbn: ratio(PosTag::Vbn),
        vbz: ratio(PosTag::Vbz),
        cn: ratio(PosTag::Cd),
    }
}

/// Per-feature means over each class and over all items, in [`BASE_FEATURES`] order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassStats {
    pub mu_real: Vec<f64>,
    pub mu_fake: Vec<f64>,
    pub mu_pooled: Vec<f64>,
    pub n_real: usize,
    pub n_fake: usize,
}

impl ClassStats {
    pub fn mean_for(&self, label: Label) -> &[f64] {
        match label {
            Label::Real => &self.mu_real,
            Label::Fake => &self.mu_fake,
        }
    }
}

/// Column means of arbitrary-width rows, per class and pooled.
pub fn class_means(rows: &[Vec<f64>], labels: &[Label]) -> Result<ClassStats, FeatureError> {
    if rows.len() != labels.len() {
        return Err(FeatureError::LengthMismatch { rows: rows.len(), labels: labels.len() });
    }
    let width = rows.first().map_or(0, Vec::len);
    let mut sum_real = vec![0.0; width];
    let mut sum_fake = vec![0.0; width];
    let (mut n_real, mut n_fake) = (0usize, 0usize);
    for (row, label) in rows.iter().zip(labels) {
        let acc = match label {
            Label::Real => {
                n_real += 1;
                &mut sum_real
            }
            Label::Fake => {
                n_fake += 1;
                &mut sum_fake
            }
        };
        for (a, v) in acc.iter_mut().zip(row) {
            *a += v;
        }
    }
    if n_real == 0 || n_fake == 0 {
        return Err(FeatureError::SingleClassCorpus);
    }
    let (m1, m2) = (n_real as f64, n_fake as f64);
    let mu_real: Vec<f64> = sum_real.iter().map(|s| s / m1).collect();
    let mu_fake: Vec<f64> = sum_fake.iter().map(|s| s / m2).collect();
    let mu_pooled = mu_real
        .iter()
        .zip(&mu_fake)
        .map(|(r, f)| (m1 * r + m2 * f) / (m1 + m2))
        .collect();
    Ok(ClassStats { mu_real, mu_fake, mu_pooled, n_real, n_fake })
}

/// Class statistics over base feature vectors.
pub fn base_class_means(
    rows: &[BaseFeatureVector],
    labels: &[Label],
) -> Result<ClassStats, FeatureError> {
    let arrays: Vec<Vec<f64>> = rows.iter().map(|r| r.to_array().to_vec()).collect();
    class_means(&arrays, labels)
}

/// Squared deviation of a feature value from a mean.
pub fn variance_feature(value: f64, mean: f64) -> f64 {
    let d = value - mean;
    d * d
}

/// Which mean the squared-deviation features are measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatsSource {
    /// The item's own class mean. Needs labels; used at selection time.
    TrainClassMeans,
    /// The pooled mean frozen from training data. Never reads the row's label.
    Pooled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<Label>,
    pub ids: Vec<String>,
    pub fset: FeatureSet,
    /// Indices of rows whose document had no tokens after cleaning.
    #[serde(default)]
    pub empty_rows: Vec<usize>,
}

impl FeatureMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn width(&self) -> usize {
        self.feature_names.len()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|n| n == name)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Restriction to the named columns, in the given order.
    pub fn select_columns(&self, names: &[String]) -> Option<FeatureMatrix> {
        let idx: Vec<usize> = names.iter().map(|n| self.column_index(n)).collect::<Option<_>>()?;
        Some(FeatureMatrix {
            feature_names: names.to_vec(),
            rows: self.rows.iter().map(|r| idx.iter().map(|&j| r[j]).collect()).collect(),
            labels: self.labels.clone(),
            ids: self.ids.clone(),
            fset: FeatureSet::from_names(names).unwrap_or(self.fset),
            empty_rows: self.empty_rows.clone(),
        })
    }

    /// TSV with a header of feature names followed by `label`; values carry 15
    /// significant digits.
    pub fn to_tsv(&self) -> String {
        let mut out = self.feature_names.join("\t");
        out.push_str("\tlabel\n");
        for (row, label) in self.rows.iter().zip(&self.labels) {
            for v in row {
                out.push_str(&fmt_sig15(*v));
                out.push('\t');
            }
            out.push_str(label.as_str());
            out.push('\n');
        }
        out
    }

    /// Parses the TSV layout of [`FeatureMatrix::to_tsv`]. Row ids become `row-<n>`.
    pub fn from_tsv(text: &str) -> Result<FeatureMatrix, FeatureError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or(FeatureError::Parse { line: 1, message: "missing header".into() })?;
        let mut names: Vec<String> = header.split('\t').map(str::to_string).collect();
        if names.pop().as_deref() != Some("label") {
            return Err(FeatureError::Parse { line: 1, message: "last column must be `label`".into() });
        }
        let fset = FeatureSet::from_names(&names).ok_or_else(|| FeatureError::Parse {
            line: 1,
            message: "header does not match fset1, fset2 or all".into(),
        })?;
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let cells: Vec<&str> = line.split('\t').collect();
            if cells.len() != names.len() + 1 {
                return Err(FeatureError::Parse {
                    line: i + 1,
                    message: format!("expected {} cells, found {}", names.len() + 1, cells.len()),
                });
            }
            let row = cells[..names.len()]
                .iter()
                .map(|c| {
                    c.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| FeatureError::Parse {
                        line: i + 1,
                        message: format!("bad number `{c}`"),
                    })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            let label = cells[names.len()].parse::<Label>().map_err(|v| FeatureError::Parse {
                line: i + 1,
                message: format!("bad label `{v}`"),
            })?;
            rows.push(row);
            labels.push(label);
        }
        let ids = (0..rows.len()).map(|i| format!("row-{i}")).collect();
        Ok(FeatureMatrix { feature_names: names, rows, labels, ids, fset, empty_rows: vec![] })
    }
}

/// Shortest decimal form of `x` rounded to 15 significant digits.
pub fn fmt_sig15(x: f64) -> String {
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        "0".to_string()
    } else {
        rounded.to_string()
    }
}

/// One analysed item, ready for matrix assembly.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractedCorpus {
    pub ids: Vec<String>,
    pub labels: Vec<Label>,
    pub base: Vec<BaseFeatureVector>,
    pub empty_rows: Vec<usize>,
}

impl ExtractedCorpus {
    pub fn class_stats(&self) -> Result<ClassStats, FeatureError> {
        base_class_means(&self.base, &self.labels)
    }

    /// Rows at the given indices, in that order.
    pub fn subset(&self, idx: &[usize]) -> ExtractedCorpus {
        let pos: std::collections::HashMap<usize, usize> =
            idx.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        ExtractedCorpus {
            ids: idx.iter().map(|&i| self.ids[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
            base: idx.iter().map(|&i| self.base[i]).collect(),
            empty_rows: self.empty_rows.iter().filter_map(|i| pos.get(i).copied()).collect(),
        }
    }
}

pub fn extract_corpus(corpus: &Corpus, pipeline: &TextPipeline<'_>) -> ExtractedCorpus {
    let mut base = Vec::with_capacity(corpus.len());
    let mut empty_rows = Vec::new();
    for (i, item) in corpus.items.iter().enumerate() {
        let doc = pipeline.analyze(&item.text());
        if doc.is_empty() {
            empty_rows.push(i);
        }
        base.push(extract_base(&doc));
    }
    ExtractedCorpus {
        ids: corpus.items.iter().map(|i| i.id.clone()).collect(),
        labels: corpus.labels(),
        base,
        empty_rows,
    }
}

/// Assembles the `fset` columns. Squared deviations use the row's own class mean
/// under [`StatsSource::TrainClassMeans`] and the pooled mean under
/// [`StatsSource::Pooled`].
pub fn assemble(
    data: &ExtractedCorpus,
    fset: FeatureSet,
    source: StatsSource,
    stats: &ClassStats,
) -> FeatureMatrix {
    let names = fset.names();
    let var_index: Vec<(usize, &str)> = VARIANCE_FEATURES
        .iter()
        .map(|(base, var)| (BASE_FEATURES.iter().position(|b| b == base).unwrap(), *var))
        .collect();
    let rows = data
        .base
        .iter()
        .zip(&data.labels)
        .map(|(b, &label)| {
            let arr = b.to_array();
            let mean = match source {
                StatsSource::TrainClassMeans => stats.mean_for(label),
                StatsSource::Pooled => &stats.mu_pooled,
            };
            names
                .iter()
                .map(|name| {
                    if let Some(i) = BASE_FEATURES.iter().position(|b| b == name) {
                        arr[i]
                    } else {
                        let (i, _) = var_index.iter().find(|(_, v)| v == name).unwrap();
                        variance_feature(arr[*i], mean[*i])
                    }
                })
                .collect()
        })
        .collect();
    FeatureMatrix {
        feature_names: names.iter().map(|s| s.to_string()).collect(),
        rows,
        labels: data.labels.clone(),
        ids: data.ids.clone(),
        fset,
        empty_rows: data.empty_rows.clone(),
    }
}

/// Extracts and assembles in one go. With `stats = None` under
/// [`StatsSource::TrainClassMeans`] the statistics come from the corpus itself
/// (training data); pooled features always need frozen statistics.
pub fn build_matrix(
    corpus: &Corpus,
    pipeline: &TextPipeline<'_>,
    fset: FeatureSet,
    source: StatsSource,
    stats: Option<&ClassStats>,
) -> Result<FeatureMatrix, FeatureError> {
    let data = extract_corpus(corpus, pipeline);
    let own;
    let stats = match (stats, source) {
        (Some(s), _) => s,
        (None, StatsSource::TrainClassMeans) => {
            own = data.class_stats()?;
            &own
        }
        (None, StatsSource::Pooled) => return Err(FeatureError::MissingStats),
    };
    Ok(assemble(&data, fset, source, stats))
}
