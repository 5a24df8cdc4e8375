use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{auc_pr, f1, Confusion};
use crate::classifiers::{fit, labels_from_scores, ClassifierKind, HyperParams};
use crate::corpus::{split_indices, Corpus};
use crate::features::{assemble, extract_corpus, ExtractedCorpus, FeatureSet, StatsSource};
use crate::text::TextPipeline;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub fsets: Vec<FeatureSet>,
    /// One entry per classifier to run; the experiment seed replaces each entry's seed.
    pub classifiers: Vec<HyperParams>,
    pub seed: u64,
    pub split_fraction: f64,
    /// Variance-feature reference for the training matrix. Test rows always use the
    /// pooled training mean.
    pub train_variance: StatsSource,
    /// Score at or above which a row is predicted FAKE when counting F1.
    pub threshold: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            fsets: vec![FeatureSet::Fset1, FeatureSet::Fset2],
            classifiers: ClassifierKind::ALL.iter().map(|&k| HyperParams::default_for(k)).collect(),
            seed: 0,
            split_fraction: 0.7,
            train_variance: StatsSource::Pooled,
            threshold: 0.5,
        }
    }
}

/// A corpus analysed once so several seeds or feature sets can reuse the text pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedCorpus {
    pub name: String,
    pub data: ExtractedCorpus,
}

pub fn prepare(corpus: &Corpus, pipeline: &TextPipeline<'_>) -> PreparedCorpus {
    PreparedCorpus { name: corpus.name.clone(), data: extract_corpus(corpus, pipeline) }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dataset: String,
    pub fset: FeatureSet,
    pub classifier: ClassifierKind,
    pub auc_pr: f64,
    pub f1: f64,
    pub confusion: Confusion,
    pub seed: u64,
    pub split_fraction: f64,
    pub train_size: usize,
    pub test_size: usize,
    /// Columns the model was trained on, in order.
    pub feature_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailedCell {
    pub dataset: String,
    pub fset: FeatureSet,
    pub classifier: ClassifierKind,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Cell {
    Ok(EvalReport),
    Failed(FailedCell),
}

impl Cell {
    pub fn key(&self) -> (&str, FeatureSet, ClassifierKind) {
        match self {
            Cell::Ok(r) => (&r.dataset, r.fset, r.classifier),
            Cell::Failed(f) => (&f.dataset, f.fset, f.classifier),
        }
    }

    pub fn report(&self) -> Option<&EvalReport> {
        match self {
            Cell::Ok(r) => Some(r),
            Cell::Failed(_) => None,
        }
    }
}

/// Every (dataset, fset, classifier) cell in dataset-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub cells: Vec<Cell>,
}

impl ComparisonTable {
    pub fn get(&self, dataset: &str, fset: FeatureSet, classifier: ClassifierKind) -> Option<&Cell> {
        self.cells.iter().find(|c| c.key() == (dataset, fset, classifier))
    }

    pub fn datasets(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for c in &self.cells {
            if !out.iter().any(|d| d == c.key().0) {
                out.push(c.key().0.to_string());
            }
        }
        out
    }

    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c, Cell::Failed(_))).count()
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("dataset\tfset\tclassifier\tauc_pr\tf1\ttp\tfp\ttn\tfn\tseed\tstatus\n");
        for c in &self.cells {
            match c {
                Cell::Ok(r) => {
                    let m = &r.confusion;
                    let _ = writeln!(
                        s,
                        "{}\t{}\t{}\t{:.6}\t{:.6}\t{}\t{}\t{}\t{}\t{}\tok",
                        r.dataset,
                        r.fset.as_str(),
                        r.classifier.as_str(),
                        r.auc_pr,
                        r.f1,
                        m.tp,
                        m.fp,
                        m.tn,
                        m.fn_,
                        r.seed
                    );
                }
                Cell::Failed(f) => {
                    let _ = writeln!(
                        s,
                        "{}\t{}\t{}\tNA\tNA\tNA\tNA\tNA\tNA\t{}\terror: {}",
                        f.dataset,
                        f.fset.as_str(),
                        f.classifier.as_str(),
                        f.seed,
                        f.error.replace(['\t', '\n'], " ")
                    );
                }
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

struct Split {
    train: ExtractedCorpus,
    test: ExtractedCorpus,
}

fn run_cell(split: &Split, name: &str, fset: FeatureSet, params: &HyperParams, cfg: &ExperimentConfig) -> Cell {
    let classifier = params.kind();
    let failed = |error: String| {
        Cell::Failed(FailedCell { dataset: name.to_string(), fset, classifier, seed: cfg.seed, error })
    };
    let stats = match split.train.class_stats() {
        Ok(s) => s,
        Err(e) => return failed(e.to_string()),
    };
    let train = assemble(&split.train, fset, cfg.train_variance, &stats);
    let test = assemble(&split.test, fset, StatsSource::Pooled, &stats);
    let params = params.clone().with_seed(cfg.seed);
    let model = match fit(&params, &train) {
        Ok(m) => m,
        Err(e) => return failed(e.to_string()),
    };
    let scores = match model.predict_scores(&test) {
        Ok(s) => s,
        Err(e) => return failed(e.to_string()),
    };
    let auc = match auc_pr(&scores, &test.labels) {
        Ok(a) => a,
        Err(e) => return failed(e.to_string()),
    };
    let confusion = Confusion::from_predictions(&labels_from_scores(&scores, cfg.threshold), &test.labels);
    Cell::Ok(EvalReport {
        dataset: name.to_string(),
        fset,
        classifier,
        auc_pr: auc,
        f1: f1(&confusion),
        confusion,
        seed: cfg.seed,
        split_fraction: cfg.split_fraction,
        train_size: train.len(),
        test_size: test.len(),
        feature_names: train.feature_names,
    })
}

/// Runs the full grid. Cells are independent and run on scoped worker threads; the
/// table order depends only on the inputs.
pub fn run_prepared(corpora: &[PreparedCorpus], cfg: &ExperimentConfig) -> ComparisonTable {
    let splits: Vec<Result<Split, String>> = corpora
        .iter()
        .map(|c| {
            split_indices(&c.data.labels, cfg.split_fraction, cfg.seed)
                .map(|(tr, te)| Split { train: c.data.subset(&tr), test: c.data.subset(&te) })
                .map_err(|e| e.to_string())
        })
        .collect();
    let mut jobs = Vec::new();
    for (ci, c) in corpora.iter().enumerate() {
        for &fset in &cfg.fsets {
            for params in &cfg.classifiers {
                jobs.push((ci, c.name.as_str(), fset, params));
            }
        }
    }
    let run = |&(ci, name, fset, params): &(usize, &str, FeatureSet, &HyperParams)| match &splits[ci] {
        Ok(split) => run_cell(split, name, fset, params, cfg),
        Err(e) => Cell::Failed(FailedCell {
            dataset: name.to_string(),
            fset,
            classifier: params.kind(),
            seed: cfg.seed,
            error: e.clone(),
        }),
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    let chunk = jobs.len().div_ceil(workers).max(1);
    let cells = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.chunks(chunk).map(|part| s.spawn(move || part.iter().map(run).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("experiment worker panicked")).collect()
    });
    ComparisonTable { cells }
}

pub fn run_experiment(corpora: &[Corpus], pipeline: &TextPipeline<'_>, cfg: &ExperimentConfig) -> ComparisonTable {
    let prepared: Vec<PreparedCorpus> = corpora.iter().map(|c| prepare(c, pipeline)).collect();
    run_prepared(&prepared, cfg)
}

/// Mean and population standard deviation of one cell across seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSummary {
    pub dataset: String,
    pub fset: FeatureSet,
    pub classifier: ClassifierKind,
    pub runs: usize,
    pub failures: usize,
    pub auc_pr_mean: f64,
    pub auc_pr_sd: f64,
    pub f1_mean: f64,
    pub f1_sd: f64,
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    (m, (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n).sqrt())
}

/// Repeats the grid once per seed and summarises each cell.
pub fn run_repeated(corpora: &[PreparedCorpus], cfg: &ExperimentConfig, seeds: &[u64]) -> (Vec<ComparisonTable>, Vec<SeedSummary>) {
    let tables: Vec<ComparisonTable> = seeds
        .iter()
        .map(|&seed| run_prepared(corpora, &ExperimentConfig { seed, ..cfg.clone() }))
        .collect();
    let Some(first) = tables.first() else {
        return (tables, Vec::new());
    };
    let summaries = first
        .cells
        .iter()
        .map(|cell| {
            let (dataset, fset, classifier) = cell.key();
            let reports: Vec<&EvalReport> =
                tables.iter().filter_map(|t| t.get(dataset, fset, classifier).and_then(Cell::report)).collect();
            let (auc_pr_mean, auc_pr_sd) = mean_sd(&reports.iter().map(|r| r.auc_pr).collect::<Vec<_>>());
            let (f1_mean, f1_sd) = mean_sd(&reports.iter().map(|r| r.f1).collect::<Vec<_>>());
            SeedSummary {
                dataset: dataset.to_string(),
                fset,
                classifier,
                runs: tables.len(),
                failures: tables.len() - reports.len(),
                auc_pr_mean,
                auc_pr_sd,
                f1_mean,
                f1_sd,
            }
        })
        .collect();
    (tables, summaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Label, NewsItem};

    fn corpus(name: &str, n: usize) -> Corpus {
        let items = (0..n)
            .map(|i| {
                let fake = i % 2 == 0;
                let body = if fake {
                    format!("shocking awful terrible lies destroyed everything {i} horrible disaster")
                } else {
                    format!("the council met on tuesday and approved the budget for item {i}")
                };
                NewsItem { id: format!("{name}-{i}"), label: if fake { Label::Fake } else { Label::Real }, title: None, body }
            })
            .collect();
        Corpus::new(name, items).unwrap()
    }

    #[test]
    fn grid_is_complete_and_deterministic() {
        let corpora = [corpus("a", 40), corpus("b", 30)];
        let cfg = ExperimentConfig { seed: 11, ..Default::default() };
        let p = TextPipeline::default();
        let t1 = run_experiment(&corpora, &p, &cfg);
        let t2 = run_experiment(&corpora, &p, &cfg);
        assert_eq!(t1.cells.len(), 24);
        assert_eq!(t1.failures(), 0);
        assert_eq!(t1.to_tsv(), t2.to_tsv());
        for c in &t1.cells {
            let r = c.report().unwrap();
            assert_eq!(r.confusion.total(), r.test_size);
            assert_eq!(r.f1, f1(&r.confusion));
            assert!((0.0..=1.0).contains(&r.auc_pr));
            assert_eq!(r.feature_names, r.fset.names());
        }
        assert_eq!(t1.datasets(), vec!["a", "b"]);
    }

    #[test]
    fn failed_split_marks_cells() {
        let mut single = corpus("one", 10);
        single.items.iter_mut().for_each(|i| i.label = Label::Real);
        let cfg = ExperimentConfig { fsets: vec![FeatureSet::Fset2], ..Default::default() };
        let t = run_experiment(&[single, corpus("ok", 20)], &TextPipeline::default(), &cfg);
        assert_eq!(t.cells.len(), 12);
        assert_eq!(t.failures(), 6);
        assert!(t.to_tsv().lines().filter(|l| l.contains("\terror: ")).count() == 6);
    }

    #[test]
    fn repeated_seeds_summarise_every_cell() {
        let p = TextPipeline::default();
        let prepared = [prepare(&corpus("a", 30), &p)];
        let cfg = ExperimentConfig {
            fsets: vec![FeatureSet::Fset2],
            classifiers: vec![HyperParams::default_for(ClassifierKind::GaussianNb)],
            ..Default::default()
        };
        let (tables, summary) = run_repeated(&prepared, &cfg, &[1, 2, 3]);
        assert_eq!(tables.len(), 3);
        assert_eq!(summary.len(), 1);
        assert_eq!(summary[0].runs, 3);
        assert!(summary[0].auc_pr_sd >= 0.0);
    }
}
