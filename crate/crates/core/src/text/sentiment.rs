use serde::{Deserialize, Serialize};

use super::lexicon::Lexicons;

/// Normalisation constant of the compound score: `S / sqrt(S^2 + ALPHA)`.
pub const COMPOUND_ALPHA: f64 = 15.0;

/// Token-count proportions of negative, neutral and positive words plus the
/// normalised compound valence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentResult {
    pub neg: f64,
    pub neu: f64,
    pub pos: f64,
    pub compound: f64,
}

impl SentimentResult {
    pub const NEUTRAL: SentimentResult = SentimentResult { neg: 0.0, neu: 1.0, pos: 0.0, compound: 0.0 };
}

pub fn compound(valence_sum: f64) -> f64 {
    valence_sum / (valence_sum * valence_sum + COMPOUND_ALPHA).sqrt()
}

pub fn sentiment_scores(lex: &Lexicons, tokens: &[String]) -> SentimentResult {
    if tokens.is_empty() {
        return SentimentResult::NEUTRAL;
    }
    let (mut neg, mut pos, mut sum) = (0usize, 0usize, 0.0);
    for t in tokens {
        let v = lex.valence_of(t);
        sum += v;
        if v < 0.0 {
            neg += 1;
        } else if v > 0.0 {
            pos += 1;
        }
    }
    let n = tokens.len();
    let neu = n - neg - pos;
    let n = n as f64;
    SentimentResult {
        neg: neg as f64 / n,
        neu: neu as f64 / n,
        pos: pos as f64 / n,
        compound: compound(sum),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &[&str]) -> Vec<String> {
        s.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn superb_outweighs_good() {
        let lex = Lexicons::bundled();
        let a = sentiment_scores(lex, &toks(&["the", "person", "is", "superb"]));
        let b = sentiment_scores(lex, &toks(&["the", "person", "is", "good"]));
        assert!(a.compound > b.compound);
    }

    #[test]
    fn zero_valence_and_empty() {
        let lex = Lexicons::bundled();
        assert_eq!(sentiment_scores(lex, &toks(&["person", "table"])), SentimentResult::NEUTRAL);
        assert_eq!(sentiment_scores(lex, &[]), SentimentResult::NEUTRAL);
    }

    #[test]
    fn single_token_compound() {
        let r = sentiment_scores(Lexicons::bundled(), &toks(&["superb"]));
        let expected = 3.1 / (3.1f64 * 3.1 + 15.0).sqrt();
        assert!((r.compound - expected).abs() < 1e-12);
        assert!((r.compound - 0.6249).abs() < 1e-4);
        assert_eq!((r.neg, r.neu, r.pos), (0.0, 0.0, 1.0));
    }

    #[test]
    fn mixed_proportions() {
        let r = sentiment_scores(Lexicons::bundled(), &toks(&["good", "bad", "table", "table"]));
        assert_eq!((r.neg, r.neu, r.pos), (0.25, 0.5, 0.25));
        assert!((r.compound - compound(1.9 - 2.5)).abs() < 1e-12);
    }
}
