use fakecue::corpus::{split_indices, train_size, Label};
use fakecue::evaluation::{auc_pr, f1, Confusion};
use fakecue::features::extract_base;
use fakecue::selection::{merit_corr, merit_corrcov, CorrelationStats, CovarianceSummary};
use fakecue::text::TextPipeline;
use fakecue::FeatureMatrix;
use proptest::prelude::*;

fn labels_strategy(min: usize, max: usize) -> impl Strategy<Value = Vec<Label>> {
    prop::collection::vec(prop::bool::ANY, min..max)
        .prop_map(|v| v.into_iter().map(|f| if f { Label::Fake } else { Label::Real }).collect())
}

const WORDS: &[&str] = &[
    "the", "good", "bad", "terrible", "superb", "news", "quickly", "running", "walked", "in", "on", "42",
    "three", "cats", "is", "was", "taking", "beautiful", "awful", "happy", "sad", "don't", "Président", "!!",
    "the", "of", "and", "love", "hate", "lies", "truth", "report", "1,000", "won't",
];

fn document() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::collection::vec(prop::sample::select(WORDS), 0..60).prop_map(|w| w.join(" ")),
        ".{0,200}",
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn split_partitions_and_keeps_both_classes(labels in labels_strategy(4, 80), frac in 0.2f64..0.9, seed in any::<u64>()) {
        prop_assume!(labels.contains(&Label::Fake) && labels.contains(&Label::Real));
        let n_train = train_size(labels.len(), frac);
        prop_assume!(n_train >= 2 && n_train < labels.len());
        if let Ok((train, test)) = split_indices(&labels, frac, seed) {
            prop_assert_eq!(train.len(), n_train);
            let mut all: Vec<usize> = train.iter().chain(&test).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..labels.len()).collect::<Vec<_>>());
            prop_assert!(train.iter().any(|&i| labels[i] == Label::Fake));
            prop_assert!(train.iter().any(|&i| labels[i] == Label::Real));
            prop_assert_eq!(split_indices(&labels, frac, seed).unwrap(), (train, test));
        }
    }

    #[test]
    fn sentiment_and_ratios_are_proportions(text in document()) {
        let doc = TextPipeline::default().analyze(&text);
        let s = doc.sentiment;
        prop_assert!((s.neg + s.neu + s.pos - 1.0).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&s.compound));
        let f = extract_base(&doc);
        let arr = f.to_array();
        for (i, v) in arr.iter().enumerate() {
            if i == 4 {
                prop_assert!((-1.0..=1.0).contains(v));
            } else {
                prop_assert!((0.0..=1.0).contains(v), "feature {} = {}", i, v);
            }
        }
        let tags = f.noun + f.adjective + f.adverb + f.preposition + f.vb + f.vbd + f.vbg + f.vbn + f.vbz + f.cn;
        prop_assert!(tags <= 1.0 + 1e-12);
    }

    #[test]
    fn auc_is_invariant_to_monotone_transforms(
        pairs in prop::collection::vec((0.0f64..1.0, prop::bool::ANY), 2..60),
        a in 0.1f64..10.0,
        b in -5.0f64..5.0,
    ) {
        let scores: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let labels: Vec<Label> = pairs.iter().map(|p| if p.1 { Label::Fake } else { Label::Real }).collect();
        prop_assume!(labels.contains(&Label::Fake));
        let base = auc_pr(&scores, &labels).unwrap();
        prop_assert!((0.0..=1.0).contains(&base));
        let affine: Vec<f64> = scores.iter().map(|s| a * s + b).collect();
        let cubic: Vec<f64> = scores.iter().map(|s| (s - 0.5).powi(3)).collect();
        let logistic: Vec<f64> = scores.iter().map(|s| 1.0 / (1.0 + (-(4.0 * s)).exp())).collect();
        prop_assert!((auc_pr(&affine, &labels).unwrap() - base).abs() < 1e-12);
        prop_assert!((auc_pr(&cubic, &labels).unwrap() - base).abs() < 1e-12);
        prop_assert!((auc_pr(&logistic, &labels).unwrap() - base).abs() < 1e-12);
    }

    #[test]
    fn f1_follows_confusion(tp in 0usize..50, fp in 0usize..50, tn in 0usize..50, fn_ in 0usize..50) {
        let c = Confusion { tp, fp, tn, fn_ };
        let v = f1(&c);
        prop_assert!((0.0..=1.0).contains(&v));
        if tp > 0 {
            let expected = 2.0 * tp as f64 / (2 * tp + fp + fn_) as f64;
            prop_assert!((v - expected).abs() < 1e-12);
        } else {
            prop_assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn merit_properties(
        rows in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 4), 12..40),
        labels in labels_strategy(40, 41),
        scale in 0.1f64..20.0,
        mask in 1u8..16,
    ) {
        let labels = labels[..rows.len()].to_vec();
        prop_assume!(labels.contains(&Label::Fake) && labels.contains(&Label::Real));
        let names: Vec<String> = (0..4).map(|i| format!("f{i}")).collect();
        let m = FeatureMatrix {
            feature_names: names.clone(),
            rows: rows.clone(),
            labels: labels.clone(),
            ids: (0..rows.len()).map(|i| i.to_string()).collect(),
            fset: fakecue::FeatureSet::All,
            empty_rows: vec![],
        };
        let subset: Vec<String> = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| names[i].clone()).collect();
        let stats = CorrelationStats::compute(&m).unwrap();
        let cov = CovarianceSummary::compute(&m);
        let mc = merit_corr(&subset, &stats).unwrap();
        let mcc = merit_corrcov(&subset, &stats, &cov).unwrap();
        prop_assert!(mc >= 0.0 && mcc <= mc + 1e-15);
        for v in &cov.nr_covar {
            prop_assert!((0.0..=1.0).contains(v));
        }

        let mut scaled = m.clone();
        scaled.rows.iter_mut().for_each(|r| r[0] *= scale);
        let s2 = CorrelationStats::compute(&scaled).unwrap();
        prop_assert!((merit_corr(&subset, &s2).unwrap() - mc).abs() < 1e-9);
    }
}
