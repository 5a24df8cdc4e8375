//! Labelled news corpora: loading, canonical serialization, stance remapping and
//! train/test splitting.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::rng::seeded;

/// Upper bound on re-draws when a split leaves one class out of the training part.
pub const MAX_SPLIT_ATTEMPTS: u64 = 64;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("missing required column `{0}`")]
    MissingColumn(String),
    #[error("row {row}: bad label `{value}` (expected real or fake)")]
    BadLabel { value: String, row: usize },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("row {row}: both title and body are empty")]
    EmptyItem { row: usize },
    #[error("row {row}: unknown stance `{value}`")]
    UnknownStance { value: String, row: usize },
    #[error("cannot draw a training split containing both classes")]
    DegenerateSplit,
    #[error("train fraction {0} is outside (0, 1)")]
    BadFraction(f64),
    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CorpusError>;

/// Binary class of a news item. FAKE is the positive class for detection metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Real,
    Fake,
}

impl Label {
    /// Class encoding used for correlations: REAL = 0, FAKE = 1.
    pub fn as_f64(self) -> f64 {
        match self {
            Label::Real => 0.0,
            Label::Fake => 1.0,
        }
    }

    pub fn is_fake(self) -> bool {
        self == Label::Fake
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Real => "real",
            Label::Fake => "fake",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" => Ok(Label::Real),
            "fake" => Ok(Label::Fake),
            _ => Err(s.trim().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewsItem {
    pub id: String,
    pub label: Label,
    pub title: Option<String>,
    pub body: String,
}

impl NewsItem {
    /// Text that feeds the linguistic pipeline: title and body joined by a newline.
    pub fn text(&self) -> String {
        match &self.title {
            Some(t) if !self.body.is_empty() => format!("{t}\n{}", self.body),
            Some(t) => t.clone(),
            None => self.body.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub name: String,
    pub items: Vec<NewsItem>,
}

impl Corpus {
    /// Builds a corpus, rejecting duplicate ids.
    pub fn new(name: impl Into<String>, items: Vec<NewsItem>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(items.len());
        for item in &items {
            if !seen.insert(item.id.as_str()) {
                return Err(CorpusError::DuplicateId(item.id.clone()));
            }
        }
        Ok(Corpus { name: name.into(), items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.items.iter().map(|i| i.label).collect()
    }

    pub fn count(&self, label: Label) -> usize {
        self.items.iter().filter(|i| i.label == label).count()
    }

    pub fn has_both_classes(&self) -> bool {
        self.count(Label::Real) > 0 && self.count(Label::Fake) > 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Jsonl,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl Format {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        path.extension()?.to_str()?.parse().ok()
    }
}

/// Raw string record shared by every input format before validation.
type Fields = Vec<(String, Option<String>)>;

fn csv_records(data: &[u8], required: &[&str]) -> Result<Vec<Fields>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(data);
    let headers = rdr
        .headers()
        .map_err(|e| CorpusError::Parse { row: 0, message: e.to_string() })?
        .clone();
    let mut index = Vec::with_capacity(required.len());
    for &col in required {
        let pos = headers
            .iter()
            .position(|h| h.trim().trim_start_matches('\u{feff}').eq_ignore_ascii_case(col))
            .ok_or_else(|| CorpusError::MissingColumn(col.to_string()))?;
        index.push(pos);
    }
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CorpusError::Parse { row: i + 1, message: e.to_string() })?;
        out.push(
            required
                .iter()
                .zip(&index)
                .map(|(&c, &p)| (c.to_string(), rec.get(p).map(str::to_string)))
                .collect(),
        );
    }
    Ok(out)
}

fn json_value_to_field(v: &Value) -> Option<String> {
    match v {
        Value::Null => None,
        Value::String(s) => Some(s.clone()),
        other => Some(other.to_string()),
    }
}

fn json_object_fields(v: &Value, required: &[&str], row: usize) -> Result<Fields> {
    let obj = v.as_object().ok_or_else(|| CorpusError::Parse {
        row,
        message: "expected a JSON object".into(),
    })?;
    required
        .iter()
        .map(|&c| {
            let field = obj.get(c).ok_or_else(|| CorpusError::MissingColumn(c.to_string()))?;
            Ok((c.to_string(), json_value_to_field(field)))
        })
        .collect()
}

fn json_records(data: &[u8], required: &[&str]) -> Result<Vec<Fields>> {
    let v: Value = serde_json::from_slice(data)
        .map_err(|e| CorpusError::Parse { row: e.line(), message: e.to_string() })?;
    let arr = v.as_array().ok_or_else(|| CorpusError::Parse {
        row: 0,
        message: "expected a top-level JSON array".into(),
    })?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| json_object_fields(v, required, i + 1))
        .collect()
}

fn jsonl_records(data: &[u8], required: &[&str]) -> Result<Vec<Fields>> {
    let text = std::str::from_utf8(data)
        .map_err(|e| CorpusError::Parse { row: 0, message: e.to_string() })?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(line)
            .map_err(|e| CorpusError::Parse { row: i + 1, message: e.to_string() })?;
        out.push(json_object_fields(&v, required, i + 1)?);
    }
    Ok(out)
}

fn records(data: &[u8], format: Format, required: &[&str]) -> Result<Vec<Fields>> {
    match format {
        Format::Csv => csv_records(data, required),
        Format::Json => json_records(data, required),
        Format::Jsonl => jsonl_records(data, required),
    }
}

fn take(fields: &mut Fields, idx: usize) -> String {
    fields[idx].1.take().map(|s| s.trim().to_string()).unwrap_or_default()
}

/// Parses corpus bytes in the given format. Entry point for untrusted input.
pub fn parse_corpus(name: &str, data: &[u8], format: Format) -> Result<Corpus> {
    let rows = records(data, format, &["id", "label", "title", "body"])?;
    if rows.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let mut items = Vec::with_capacity(rows.len());
    for (i, mut f) in rows.into_iter().enumerate() {
        let row = i + 1;
        let id = take(&mut f, 0);
        let raw_label = take(&mut f, 1);
        let label = raw_label
            .parse::<Label>()
            .map_err(|value| CorpusError::BadLabel { value, row })?;
        let title = Some(take(&mut f, 2)).filter(|t| !t.is_empty());
        let body = take(&mut f, 3);
        if title.is_none() && body.is_empty() {
            return Err(CorpusError::EmptyItem { row });
        }
        items.push(NewsItem { id, label, title, body });
    }
    Corpus::new(name, items)
}

/// Loads a corpus from disk; the corpus is named after the file stem.
pub fn load_corpus(path: &Path, format: Format) -> Result<Corpus> {
    let data = std::fs::read(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_corpus(&name, &data, format)
}

#[derive(Serialize)]
struct CanonicalItem<'a> {
    id: &'a str,
    label: Label,
    title: &'a Option<String>,
    body: &'a str,
}

/// Canonical JSONL form: one item per line, fields in the order `id,label,title,body`.
pub fn to_jsonl(corpus: &Corpus) -> String {
    let mut out = String::new();
    for item in &corpus.items {
        let line = serde_json::to_string(&CanonicalItem {
            id: &item.id,
            label: item.label,
            title: &item.title,
            body: &item.body,
        })
        .expect("string fields always serialize");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn save_corpus(corpus: &Corpus, path: &Path) -> Result<()> {
    crate::write_atomic(path, to_jsonl(corpus).as_bytes())?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stance {
    Agree,
    Disagree,
    Unrelated,
    Discuss,
}

impl FromStr for Stance {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "agree" => Ok(Stance::Agree),
            "disagree" => Ok(Stance::Disagree),
            "unrelated" => Ok(Stance::Unrelated),
            "discuss" => Ok(Stance::Discuss),
            _ => Err(s.trim().to_string()),
        }
    }
}

impl Stance {
    /// Only `agree` counts as real news; every other stance is treated as fake.
    pub fn label(self) -> Label {
        match self {
            Stance::Agree => Label::Real,
            Stance::Disagree | Stance::Unrelated | Stance::Discuss => Label::Fake,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanceRecord {
    pub id: String,
    pub headline: String,
    pub body: String,
    pub stance: Stance,
}

/// Parses `id,headline,body,stance` records. Unknown stances fail with the row number.
pub fn parse_stance_records(data: &[u8], format: Format) -> Result<Vec<StanceRecord>> {
    let rows = records(data, format, &["id", "headline", "body", "stance"])?;
    rows.into_iter()
        .enumerate()
        .map(|(i, mut f)| {
            let row = i + 1;
            let id = take(&mut f, 0);
            let headline = take(&mut f, 1);
            let body = take(&mut f, 2);
            let stance = take(&mut f, 3)
                .parse::<Stance>()
                .map_err(|value| CorpusError::UnknownStance { value, row })?;
            Ok(StanceRecord { id, headline, body, stance })
        })
        .collect()
}

pub fn load_stance_records(path: &Path, format: Format) -> Result<Vec<StanceRecord>> {
    parse_stance_records(&std::fs::read(path)?, format)
}

/// Joins the two-file stance layout (`Body ID,articleBody` bodies and
/// `Headline,Body ID,Stance` pairs) into records with ids `s<row>`.
pub fn parse_fnc_pair(bodies: &[u8], stances: &[u8]) -> Result<Vec<StanceRecord>> {
    let mut by_id = std::collections::HashMap::new();
    for (i, mut f) in csv_records(bodies, &["body id", "articlebody"])?.into_iter().enumerate() {
        let id = take(&mut f, 0);
        if by_id.insert(id.clone(), take(&mut f, 1)).is_some() {
            return Err(CorpusError::Parse { row: i + 1, message: format!("duplicate body id `{id}`") });
        }
    }
    csv_records(stances, &["headline", "body id", "stance"])?
        .into_iter()
        .enumerate()
        .map(|(i, mut f)| {
            let row = i + 1;
            let headline = take(&mut f, 0);
            let body_id = take(&mut f, 1);
            let body = by_id
                .get(&body_id)
                .cloned()
                .ok_or_else(|| CorpusError::Parse { row, message: format!("unknown body id `{body_id}`") })?;
            let stance = take(&mut f, 2).parse::<Stance>().map_err(|value| CorpusError::UnknownStance { value, row })?;
            Ok(StanceRecord { id: format!("s{row}"), headline, body, stance })
        })
        .collect()
}

/// Relabels stance records into a binary corpus; headline and body become one body.
pub fn remap_fnc_stances(name: &str, records: &[StanceRecord]) -> Result<Corpus> {
    if records.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let items = records
        .iter()
        .map(|r| NewsItem {
            id: r.id.clone(),
            label: r.stance.label(),
            title: None,
            body: format!("{}\n{}", r.headline, r.body),
        })
        .collect();
    Corpus::new(name, items)
}

/// Round-half-up training size for a fraction of `n` items.
pub fn train_size(n: usize, train_fraction: f64) -> usize {
    ((train_fraction * n as f64) + 0.5).floor().min(n as f64) as usize
}

/// Seeded random partition into `(train, test)`, preserving the original order inside
/// each part. The training part always contains both classes; draws are repeated up
/// to [`MAX_SPLIT_ATTEMPTS`] times before giving up.
pub fn split(corpus: &Corpus, train_fraction: f64, seed: u64) -> Result<(Corpus, Corpus)> {
    let (train, test) = split_indices(&corpus.labels(), train_fraction, seed)?;
    let pick = |idx: &[usize]| Corpus {
        name: corpus.name.clone(),
        items: idx.iter().map(|&i| corpus.items[i].clone()).collect(),
    };
    Ok((pick(&train), pick(&test)))
}

/// Row indices of the partition drawn by [`split`], each part in ascending order.
pub fn split_indices(labels: &[Label], train_fraction: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(CorpusError::BadFraction(train_fraction));
    }
    if labels.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let n = labels.len();
    let n_train = train_size(n, train_fraction);
    let both = labels.contains(&Label::Real) && labels.contains(&Label::Fake);
    if !both || n_train < 2 {
        return Err(CorpusError::DegenerateSplit);
    }
    let mut order: Vec<usize> = (0..n).collect();
    for attempt in 0..MAX_SPLIT_ATTEMPTS {
        order.sort_unstable();
        order.shuffle(&mut seeded(seed, attempt));
        let mut in_train = vec![false; n];
        for &i in &order[..n_train] {
            in_train[i] = true;
        }
        let has = |l: Label| (0..n).any(|i| in_train[i] && labels[i] == l);
        if has(Label::Real) && has(Label::Fake) {
            return Ok((0..n).partition(|&i| in_train[i]));
        }
    }
    Err(CorpusError::DegenerateSplit)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub name: String,
    pub total: usize,
    pub real: usize,
    pub fake: usize,
    /// Mean body length in characters.
    pub mean_body_length: f64,
}

pub fn corpus_summary(corpus: &Corpus) -> CorpusSummary {
    let total = corpus.len();
    let chars: usize = corpus.items.iter().map(|i| i.body.chars().count()).sum();
    CorpusSummary {
        name: corpus.name.clone(),
        total,
        real: corpus.count(Label::Real),
        fake: corpus.count(Label::Fake),
        mean_body_length: if total == 0 { 0.0 } else { chars as f64 / total as f64 },
    }
}
