//! Seeded synthetic corpora with a planted linguistic signal, for tests and demos.
//!
//! Each document draws a target unique-stem ratio, sentiment-word density, negative
//! share of sentiment words and numeral density from class-dependent ranges. FAKE
//! documents lean towards more distinct words and denser, more negative sentiment.
//! The neutral part of the vocabulary has the same part-of-speech mix in both
//! classes, so tag ratios carry no signal.

use std::collections::HashSet;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::corpus::{Corpus, Label, NewsItem};
use crate::rng::seeded;
use crate::text::{stem, Lexicons};

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub name: String,
    pub documents: usize,
    pub fake_fraction: f64,
    pub seed: u64,
    /// When false both classes use the REAL ranges and labels carry no signal.
    pub planted: bool,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec { name: "synthetic".into(), documents: 2000, fake_fraction: 0.5, seed: 7, planted: true }
    }
}

struct Ranges {
    unique: (f64, f64),
    sentiment: (f64, f64),
    negative_share: (f64, f64),
    numerals: (f64, f64),
}

const REAL: Ranges = Ranges { unique: (0.2, 0.8), sentiment: (0.05, 0.3), negative_share: (0.2, 0.6), numerals: (0.02, 0.08) };
const FAKE: Ranges = Ranges { unique: (0.6, 1.0), sentiment: (0.2, 0.45), negative_share: (0.45, 0.85), numerals: (0.0, 0.05) };
const FILLER: [&str; 8] = ["the", "of", "and", "to", "a", "in", "that", "is"];

struct Pools {
    positive: Vec<String>,
    negative: Vec<String>,
    neutral: Vec<String>,
}

fn pools(lex: &Lexicons) -> Pools {
    let plain = |w: &str| w.chars().all(|c| c.is_ascii_lowercase()) && w.len() >= 3 && !lex.is_stopword(w);
    let mut seen_stems = HashSet::new();
    let mut take = |mut words: Vec<String>| {
        words.sort();
        words.retain(|w| seen_stems.insert(stem(w)));
        words
    };
    let positive = take(lex.valence.iter().filter(|(w, v)| **v >= 1.0 && plain(w)).map(|(w, _)| w.clone()).collect());
    let negative = take(lex.valence.iter().filter(|(w, v)| **v <= -1.0 && plain(w)).map(|(w, _)| w.clone()).collect());
    let neutral = take(
        lex.tags
            .keys()
            .filter(|w| plain(w) && lex.valence_of(w) == 0.0 && !w.chars().all(|c| c.is_ascii_digit()))
            .cloned()
            .collect(),
    );
    Pools { positive, negative, neutral }
}

#[derive(Clone, Copy, PartialEq)]
enum Slot {
    Positive,
    Negative,
    Neutral,
    Numeral,
}

fn document<R: Rng>(rng: &mut R, pools: &Pools, r: &Ranges) -> String {
    let n: usize = rng.random_range(60..=140);
    let draw = |rng: &mut R, (lo, hi): (f64, f64)| rng.random_range(lo..hi);
    let unique = draw(rng, r.unique);
    let sentiment = draw(rng, r.sentiment);
    let neg_share = draw(rng, r.negative_share);
    let numerals = draw(rng, r.numerals);

    let n_sent = (sentiment * n as f64).round() as usize;
    let n_neg = (neg_share * n_sent as f64).round() as usize;
    let n_num = (numerals * n as f64).round() as usize;
    let mut slots = vec![Slot::Negative; n_neg];
    slots.extend(std::iter::repeat_n(Slot::Positive, n_sent - n_neg));
    slots.extend(std::iter::repeat_n(Slot::Numeral, n_num.min(n - n_sent)));
    slots.resize(n, Slot::Neutral);
    shuffle(rng, &mut slots);

    let fresh_target = ((unique * n as f64).round() as usize).max(1);
    let mut fresh_positions: Vec<bool> = (0..n).map(|i| i < fresh_target).collect();
    shuffle(rng, &mut fresh_positions);

    let mut used: Vec<(Slot, String)> = Vec::new();
    let mut used_set: HashSet<String> = HashSet::new();
    let mut words = Vec::with_capacity(n + n / 3);
    for (slot, fresh) in slots.into_iter().zip(fresh_positions) {
        let previous: Vec<&String> = used.iter().filter(|(s, _)| *s == slot).map(|(_, w)| w).collect();
        let word = if !fresh && !previous.is_empty() {
            (*previous.choose(rng).unwrap()).clone()
        } else {
            let pool = match slot {
                Slot::Positive => &pools.positive,
                Slot::Negative => &pools.negative,
                Slot::Neutral => &pools.neutral,
                Slot::Numeral => &Vec::new(),
            };
            let mut w;
            loop {
                w = match slot {
                    Slot::Numeral => rng.random_range(1..100_000u32).to_string(),
                    _ => pool.choose(rng).unwrap().clone(),
                };
                if !used_set.contains(&w) {
                    break;
                }
            }
            used_set.insert(w.clone());
            used.push((slot, w.clone()));
            w
        };
        if rng.random_bool(0.3) {
            words.push(FILLER.choose(rng).unwrap().to_string());
        }
        words.push(word);
    }
    words.join(" ")
}

fn shuffle<R: Rng, T>(rng: &mut R, xs: &mut [T]) {
    use rand::seq::SliceRandom;
    xs.shuffle(rng);
}

/// Generates the corpus described by `spec` using the bundled lexicons.
pub fn generate(spec: &SyntheticSpec) -> Corpus {
    let pools = pools(Lexicons::bundled());
    let n_fake = (spec.fake_fraction * spec.documents as f64).round() as usize;
    let mut rng = seeded(spec.seed, 0x5717);
    let mut labels: Vec<Label> = (0..spec.documents).map(|i| if i < n_fake { Label::Fake } else { Label::Real }).collect();
    shuffle(&mut rng, &mut labels);
    let items = labels
        .into_iter()
        .enumerate()
        .map(|(i, label)| {
            let ranges = if spec.planted && label == Label::Fake { &FAKE } else { &REAL };
            NewsItem { id: format!("{}-{i:05}", spec.name), label, title: None, body: document(&mut rng, &pools, ranges) }
        })
        .collect();
    Corpus::new(spec.name.clone(), items).expect("generated ids are unique")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_balanced() {
        let spec = SyntheticSpec { documents: 40, ..Default::default() };
        let a = generate(&spec);
        assert_eq!(a, generate(&spec));
        assert_eq!(a.count(Label::Fake), 20);
        assert_ne!(a, generate(&SyntheticSpec { seed: 8, ..spec }));
    }

    #[test]
    fn pools_are_stem_disjoint() {
        let p = pools(Lexicons::bundled());
        assert!(p.positive.len() > 200 && p.negative.len() > 200 && p.neutral.len() > 200);
        let mut stems = HashSet::new();
        for w in p.positive.iter().chain(&p.negative).chain(&p.neutral) {
            assert!(stems.insert(stem(w)), "{w}");
        }
    }
}
