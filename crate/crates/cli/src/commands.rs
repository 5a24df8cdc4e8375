use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use fakecue::classifiers::{fit, grid_search};
use fakecue::corpus::{
    corpus_summary, load_corpus, load_stance_records, parse_corpus, parse_fnc_pair, remap_fnc_stances, split_indices,
    to_jsonl, CorpusSummary, Format,
};
use fakecue::evaluation::{
    grouped_bar_svg, prepare, run_prepared, run_repeated, Cell, ChartMetric, ComparisonTable, ExperimentConfig,
    PreparedCorpus,
};
use fakecue::features::{assemble, extract_corpus, ClassStats, ExtractedCorpus, StatsSource};
use fakecue::selection::{select_features, SelectionReport};
use fakecue::text::{Lexicons, TextPipeline};
use fakecue::{write_atomic, Corpus, FeatureMatrix, FeatureSet};
use serde::Serialize;

use crate::config::{DatasetConfig, Layout, RunConfig};
use crate::{Cli, CliError, Command};

fn data(context: impl std::fmt::Display, e: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{context}: {e}"))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Internal(format!("{}: {e}", dir.display())))?;
    }
    write_atomic(path, text.as_bytes()).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    write_text(path, &text)
}

/// Applies command-line overrides on top of the config file (or defaults).
pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    if let Some(f) = cli.fset {
        cfg.fsets = vec![f];
    }
    if let Some(k) = cli.classifier {
        cfg.classifiers = vec![k];
    }
    if !cli.dataset.is_empty() {
        let mut chosen = Vec::new();
        for d in &cli.dataset {
            if let Some(found) = cfg.datasets.iter().find(|c| c.resolved_name() == *d) {
                chosen.push(found.clone());
            } else if Path::new(d).is_file() {
                chosen.push(DatasetConfig::labelled(PathBuf::from(d)));
            } else {
                return Err(CliError::Usage(format!("--dataset `{d}` is neither a configured name nor a file")));
            }
        }
        cfg.datasets = chosen;
    }
    cfg.validate()?;
    Ok(cfg)
}

struct Ctx {
    cfg: RunConfig,
    lex: Option<Lexicons>,
}

impl Ctx {
    fn pipeline(&self) -> TextPipeline<'_> {
        match &self.lex {
            Some(l) => TextPipeline::new(l),
            None => TextPipeline::default(),
        }
    }

    fn dir(&self, stage: &str) -> PathBuf {
        self.cfg.out.join(stage)
    }

    fn cache_path(&self, name: &str) -> PathBuf {
        self.dir("corpus").join(format!("{name}.jsonl"))
    }
}

fn load_source(d: &DatasetConfig) -> Result<Corpus, CliError> {
    let name = d.resolved_name();
    if let (Some(bodies), Some(stances)) = (&d.bodies, &d.stances) {
        let read = |p: &PathBuf| std::fs::read(p).map_err(|e| data(p.display(), e));
        let records = parse_fnc_pair(&read(bodies)?, &read(stances)?).map_err(|e| data(stances.display(), e))?;
        return remap_fnc_stances(&name, &records).map_err(|e| data(&name, e));
    }
    let path = d.path.as_ref().expect("validated dataset has a path");
    let format = d.format.or_else(|| Format::from_path(path)).expect("validated dataset has a format");
    let mut corpus = match d.layout {
        Layout::Labelled => load_corpus(path, format).map_err(|e| data(path.display(), e))?,
        Layout::Stances => {
            let records = load_stance_records(path, format).map_err(|e| data(path.display(), e))?;
            remap_fnc_stances(&name, &records).map_err(|e| data(path.display(), e))?
        }
    };
    corpus.name = name;
    Ok(corpus)
}

/// Cached corpora from `ingest`, falling back to (and caching) the sources.
fn corpora(ctx: &Ctx) -> Result<Vec<Corpus>, CliError> {
    if ctx.cfg.datasets.is_empty() {
        return Err(CliError::Config("no datasets configured (use `datasets` or --dataset)".into()));
    }
    ctx.cfg
        .datasets
        .iter()
        .map(|d| {
            let name = d.resolved_name();
            let cache = ctx.cache_path(&name);
            if cache.is_file() {
                let bytes = std::fs::read(&cache).map_err(|e| data(cache.display(), e))?;
                parse_corpus(&name, &bytes, Format::Jsonl).map_err(|e| data(cache.display(), e))
            } else {
                let c = load_source(d)?;
                write_text(&cache, &to_jsonl(&c))?;
                Ok(c)
            }
        })
        .collect()
}

struct SplitData {
    train: ExtractedCorpus,
    test: ExtractedCorpus,
    stats: ClassStats,
}

fn split_data(corpus: &Corpus, all: &ExtractedCorpus, fraction: f64, seed: u64) -> Result<SplitData, CliError> {
    let (tr, te) = split_indices(&all.labels, fraction, seed).map_err(|e| data(&corpus.name, e))?;
    let train = all.subset(&tr);
    let stats = train.class_stats().map_err(|e| data(&corpus.name, e))?;
    Ok(SplitData { train, test: all.subset(&te), stats })
}

fn matrices(s: &SplitData, fset: FeatureSet, train_variance: StatsSource) -> (FeatureMatrix, FeatureMatrix) {
    (assemble(&s.train, fset, train_variance, &s.stats), assemble(&s.test, fset, StatsSource::Pooled, &s.stats))
}

fn ingest(ctx: &Ctx) -> Result<(), CliError> {
    let mut summaries: Vec<CorpusSummary> = Vec::new();
    for d in &ctx.cfg.datasets {
        let c = load_source(d)?;
        write_text(&ctx.cache_path(&c.name), &to_jsonl(&c))?;
        let s = corpus_summary(&c);
        println!("{}: {} items, {} real / {} fake", s.name, s.total, s.real, s.fake);
        summaries.push(s);
    }
    if summaries.is_empty() {
        return Err(CliError::Config("no datasets configured (use `datasets` or --dataset)".into()));
    }
    write_json(&ctx.dir("corpus").join("summary.json"), &summaries)
}

fn features(ctx: &Ctx) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    for corpus in corpora(ctx)? {
        let all = extract_corpus(&corpus, &ctx.pipeline());
        let split = split_data(&corpus, &all, cfg.split_fraction, cfg.seed)?;
        let dir = ctx.dir("features");
        for &fset in &cfg.fsets {
            let (train, test) = matrices(&split, fset, cfg.train_variance);
            let stem = format!("{}.{}", corpus.name, fset.as_str());
            write_text(&dir.join(format!("{stem}.train.tsv")), &train.to_tsv())?;
            write_text(&dir.join(format!("{stem}.test.tsv")), &test.to_tsv())?;
            println!("{stem}: {} train / {} test rows, {} columns", train.len(), test.len(), train.width());
        }
        write_json(&dir.join(format!("{}.stats.json", corpus.name)), &split.stats)?;
        let mut warnings = String::from("id\tsplit\twarning\n");
        for (part, ex) in [("train", &split.train), ("test", &split.test)] {
            for &i in &ex.empty_rows {
                let _ = writeln!(warnings, "{}\t{part}\tno tokens after cleaning; ratios set to 0", ex.ids[i]);
            }
        }
        let n_warn = split.train.empty_rows.len() + split.test.empty_rows.len();
        if n_warn > 0 {
            eprintln!("warning: {}: {n_warn} empty documents (see {}.warnings.tsv)", corpus.name, corpus.name);
        }
        write_text(&dir.join(format!("{}.warnings.tsv", corpus.name)), &warnings)?;
    }
    Ok(())
}

/// Training split divided again into a fitting part and a validation part.
fn inner_split(corpus: &Corpus, split: &SplitData, cfg: &RunConfig) -> Result<SplitData, CliError> {
    split_data(corpus, &split.train, 1.0 - cfg.validation_fraction, cfg.seed)
}

fn select(ctx: &Ctx) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    for corpus in corpora(ctx)? {
        let all = extract_corpus(&corpus, &ctx.pipeline());
        let split = split_data(&corpus, &all, cfg.split_fraction, cfg.seed)?;
        let inner = inner_split(&corpus, &split, cfg)?;
        let (fit_m, val_m) = matrices(&inner, FeatureSet::All, cfg.train_variance);
        let report: SelectionReport =
            select_features(&fit_m, &val_m, &cfg.selection_config()).map_err(|e| data(&corpus.name, e))?;
        write_json(&ctx.dir("selection").join(format!("{}.json", corpus.name)), &report)?;
        println!("{}: ranked {}", corpus.name, report.ranked_features.join(", "));
        println!(
            "{}: kept {} (validation PR-AUC {:.4}; TOPSIS prefers {}, verified {})",
            corpus.name,
            report.wrapper_kept.join(", "),
            report.wrapper.auc_pr,
            report.candidates[report.topsis.preferred].name,
            report.verified
        );
    }
    Ok(())
}

fn train(ctx: &Ctx) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let dir = ctx.dir("models");
    for corpus in corpora(ctx)? {
        let all = extract_corpus(&corpus, &ctx.pipeline());
        let split = split_data(&corpus, &all, cfg.split_fraction, cfg.seed)?;
        write_json(&dir.join(format!("{}.stats.json", corpus.name)), &split.stats)?;
        for &fset in &cfg.fsets {
            let (train_m, _) = matrices(&split, fset, cfg.train_variance);
            for &kind in &cfg.classifiers {
                let stem = format!("{}.{}.{}", corpus.name, fset.as_str(), kind.as_str());
                let mut params = cfg.hyper_params(kind)?;
                if let Some(grid) = cfg.grid(kind) {
                    let inner = inner_split(&corpus, &split, cfg)?;
                    let (fit_m, val_m) = matrices(&inner, fset, cfg.train_variance);
                    let result = grid_search(&params, &grid, &fit_m, &val_m, cfg.grid_metric).map_err(|e| data(&stem, e))?;
                    let best = result.table.iter().find(|p| p.params == result.best).map_or(String::new(), |p| {
                        p.values.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
                    });
                    println!("{stem}: grid best {best} ({:?} {:.4})", cfg.grid_metric, result.best_score);
                    write_json(&dir.join(format!("{stem}.grid.json")), &result)?;
                    params = result.best;
                }
                let model = fit(&params, &train_m).map_err(|e| data(&stem, e))?;
                write_text(&dir.join(format!("{stem}.json")), &(model.to_json() + "\n"))?;
                println!("{stem}: trained on {} rows", train_m.len());
            }
        }
    }
    Ok(())
}

fn experiment_config(cfg: &RunConfig) -> Result<ExperimentConfig, CliError> {
    Ok(ExperimentConfig {
        fsets: cfg.fsets.clone(),
        classifiers: cfg.classifiers.iter().map(|&k| cfg.hyper_params(k)).collect::<Result<_, _>>()?,
        seed: cfg.seed,
        split_fraction: cfg.split_fraction,
        train_variance: cfg.train_variance,
        threshold: cfg.decision_threshold,
    })
}

fn write_charts(dir: &Path, table: &ComparisonTable, fsets: &[FeatureSet]) -> Result<(), CliError> {
    for &fset in fsets {
        for metric in [ChartMetric::AucPr, ChartMetric::F1] {
            let svg = grouped_bar_svg(table, metric, fset);
            write_text(&dir.join(format!("{}_{}.svg", metric.as_str(), fset.as_str())), &svg)?;
        }
    }
    Ok(())
}

fn eval(ctx: &Ctx) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let pipeline = ctx.pipeline();
    let prepared: Vec<PreparedCorpus> = corpora(ctx)?.iter().map(|c| prepare(c, &pipeline)).collect();
    let exp = experiment_config(cfg)?;
    let table = run_prepared(&prepared, &exp);
    let dir = ctx.dir("eval");
    write_text(&dir.join("comparison.tsv"), &table.to_tsv())?;
    write_text(&dir.join("comparison.json"), &(table.to_json() + "\n"))?;
    write_charts(&dir, &table, &cfg.fsets)?;
    print!("{}", table.to_tsv());
    if cfg.repeats > 0 {
        let seeds: Vec<u64> = (0..=cfg.repeats as u64).map(|i| cfg.seed.wrapping_add(i)).collect();
        let (_, summary) = run_repeated(&prepared, &exp, &seeds);
        let mut tsv = String::from("dataset\tfset\tclassifier\truns\tfailures\tauc_pr_mean\tauc_pr_sd\tf1_mean\tf1_sd\n");
        for s in &summary {
            let _ = writeln!(
                tsv,
                "{}\t{}\t{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
                s.dataset,
                s.fset.as_str(),
                s.classifier.as_str(),
                s.runs,
                s.failures,
                s.auc_pr_mean,
                s.auc_pr_sd,
                s.f1_mean,
                s.f1_sd
            );
        }
        write_text(&dir.join("repeated.tsv"), &tsv)?;
        write_json(&dir.join("repeated.json"), &summary)?;
    }
    let failed = table.failures();
    if failed > 0 {
        eprintln!("warning: {failed} of {} cells failed (see the status column)", table.cells.len());
    }
    if failed == table.cells.len() {
        return Err(CliError::Data("every experiment cell failed".into()));
    }
    Ok(())
}

fn report(ctx: &Ctx) -> Result<(), CliError> {
    let eval_dir = ctx.dir("eval");
    let path = eval_dir.join("comparison.json");
    let text = std::fs::read_to_string(&path).map_err(|e| data(format!("{} (run `eval` first)", path.display()), e))?;
    let table: ComparisonTable = serde_json::from_str(&text).map_err(|e| data(path.display(), e))?;
    let mut fsets: Vec<FeatureSet> = Vec::new();
    for c in &table.cells {
        if !fsets.contains(&c.key().1) {
            fsets.push(c.key().1);
        }
    }
    write_charts(&eval_dir, &table, &fsets)?;

    let mut md = String::from("# Run report\n\n");
    let summary_path = ctx.dir("corpus").join("summary.json");
    if let Ok(s) = std::fs::read_to_string(&summary_path) {
        let summaries: Vec<CorpusSummary> = serde_json::from_str(&s).map_err(|e| data(summary_path.display(), e))?;
        md.push_str("## Corpora\n\n| dataset | items | real | fake | mean body chars |\n|---|---|---|---|---|\n");
        for s in summaries {
            let _ = writeln!(md, "| {} | {} | {} | {} | {:.1} |", s.name, s.total, s.real, s.fake, s.mean_body_length);
        }
        md.push('\n');
    }
    let mut selections = Vec::new();
    for name in table.datasets() {
        let p = ctx.dir("selection").join(format!("{name}.json"));
        if let Ok(s) = std::fs::read_to_string(&p) {
            let r: SelectionReport = serde_json::from_str(&s).map_err(|e| data(p.display(), e))?;
            selections.push((name, r));
        }
    }
    if !selections.is_empty() {
        md.push_str("## Feature selection\n\n| dataset | kept | validation PR-AUC | TOPSIS choice | verified |\n|---|---|---|---|---|\n");
        for (name, r) in &selections {
            let _ = writeln!(
                md,
                "| {name} | {} | {:.4} | {} | {} |",
                r.wrapper_kept.join(", "),
                r.wrapper.auc_pr,
                r.candidates[r.topsis.preferred].name,
                r.verified
            );
        }
        md.push('\n');
    }
    md.push_str("## Comparison\n\n| dataset | fset | classifier | PR-AUC | F1 |\n|---|---|---|---|---|\n");
    for c in &table.cells {
        let (d, f, k) = c.key();
        match c {
            Cell::Ok(r) => {
                let _ = writeln!(md, "| {d} | {} | {} | {:.4} | {:.4} |", f.as_str(), k.as_str(), r.auc_pr, r.f1);
            }
            Cell::Failed(e) => {
                let _ = writeln!(md, "| {d} | {} | {} | failed: {} | |", f.as_str(), k.as_str(), e.error);
            }
        }
    }
    md.push_str("\n## Charts\n\n");
    for &fset in &fsets {
        for metric in [ChartMetric::AucPr, ChartMetric::F1] {
            let file = format!("{}_{}.svg", metric.as_str(), fset.as_str());
            let _ = writeln!(md, "![{file}](eval/{file})");
        }
    }
    write_text(&ctx.cfg.out.join("report.md"), &md)?;
    println!("wrote {}", ctx.cfg.out.join("report.md").display());
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = resolve(cli)?;
    let lex = match &cfg.lexicon_dir {
        Some(dir) => Some(Lexicons::from_dir(dir).map_err(|e| CliError::Config(e.to_string()))?),
        None => None,
    };
    let ctx = Ctx { cfg, lex };
    match cli.command {
        Command::Ingest => ingest(&ctx),
        Command::Features => features(&ctx),
        Command::Select => select(&ctx),
        Command::Train => train(&ctx),
        Command::Eval => eval(&ctx),
        Command::Report => report(&ctx),
    }
}
