//! Per-document linguistic analysis: tokenization, stopword removal, Porter2
//! stemming, part-of-speech tagging and lexicon sentiment.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub mod lexicon;
mod sentiment;
mod stem;
mod tagger;
mod tokenize;

pub use lexicon::{LexiconError, Lexicons};
pub use sentiment::{compound, sentiment_scores, SentimentResult, COMPOUND_ALPHA};
pub use stem::stem;
pub use tagger::pos_tag;
pub use tokenize::tokenize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PosTag {
    #[serde(rename = "NN")]
    Nn,
    #[serde(rename = "JJ")]
    Jj,
    #[serde(rename = "RB")]
    Rb,
    #[serde(rename = "IN")]
    In,
    #[serde(rename = "VB")]
    Vb,
    #[serde(rename = "VBD")]
    Vbd,
    #[serde(rename = "VBG")]
    Vbg,
    #[serde(rename = "VBN")]
    Vbn,
    #[serde(rename = "VBZ")]
    Vbz,
    #[serde(rename = "CD")]
    Cd,
    #[serde(rename = "OTHER")]
    Other,
}

impl PosTag {
    pub const ALL: [PosTag; 11] = [
        PosTag::Nn,
        PosTag::Jj,
        PosTag::Rb,
        PosTag::In,
        PosTag::Vb,
        PosTag::Vbd,
        PosTag::Vbg,
        PosTag::Vbn,
        PosTag::Vbz,
        PosTag::Cd,
        PosTag::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Nn => "NN",
            PosTag::Jj => "JJ",
            PosTag::Rb => "RB",
            PosTag::In => "IN",
            PosTag::Vb => "VB",
            PosTag::Vbd => "VBD",
            PosTag::Vbg => "VBG",
            PosTag::Vbn => "VBN",
            PosTag::Vbz => "VBZ",
            PosTag::Cd => "CD",
            PosTag::Other => "OTHER",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown tag `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub stem: String,
    pub tag: PosTag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzedDoc {
    /// Tokens left after stopword removal, in text order.
    pub tokens: Vec<Token>,
    /// Token count before stopword removal.
    pub raw_token_count: usize,
    pub sentiment: SentimentResult,
}

impl AnalyzedDoc {
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

pub fn remove_stopwords(lex: &Lexicons, tokens: Vec<String>) -> Vec<String> {
    tokens.into_iter().filter(|t| !lex.is_stopword(t)).collect()
}

/// Full per-document pipeline over a lexicon set.
#[derive(Debug, Clone, Copy)]
pub struct TextPipeline<'a> {
    lex: &'a Lexicons,
}

impl Default for TextPipeline<'static> {
    fn default() -> Self {
        TextPipeline { lex: Lexicons::bundled() }
    }
}

impl<'a> TextPipeline<'a> {
    pub fn new(lex: &'a Lexicons) -> Self {
        TextPipeline { lex }
    }

    pub fn lexicons(&self) -> &'a Lexicons {
        self.lex
    }

    /// tokenize -> stopwords -> stem -> tag -> sentiment. Tags and sentiment are
    /// computed on surface tokens; stems are kept alongside.
    pub fn analyze(&self, text: &str) -> AnalyzedDoc {
        let raw = tokenize(text);
        let raw_token_count = raw.len();
        let clean = remove_stopwords(self.lex, raw);
        let tags = pos_tag(self.lex, &clean);
        let sentiment = sentiment_scores(self.lex, &clean);
        let tokens = clean
            .into_iter()
            .zip(tags)
            .map(|(surface, tag)| Token { stem: stem(&surface), surface, tag })
            .collect();
        AnalyzedDoc { tokens, raw_token_count, sentiment }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stopword_examples() {
        let lex = Lexicons::bundled();
        let v = |s: &[&str]| s.iter().map(|t| t.to_string()).collect::<Vec<_>>();
        assert_eq!(remove_stopwords(lex, v(&["the", "person", "is", "superb"])), v(&["person", "superb"]));
        assert_eq!(remove_stopwords(lex, v(&["superb"])), v(&["superb"]));
        assert!(remove_stopwords(lex, vec![]).is_empty());
    }

    #[test]
    fn analyze_examples() {
        let p = TextPipeline::default();
        let empty = p.analyze("");
        assert!(empty.is_empty());
        assert_eq!(empty.raw_token_count, 0);
        assert_eq!(empty.sentiment, SentimentResult::NEUTRAL);

        let d = p.analyze("The person is superb");
        assert_eq!(d.raw_token_count, 4);
        let surfaces: Vec<_> = d.tokens.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(surfaces, ["person", "superb"]);
        assert_eq!(d, p.analyze("The person is superb"));

        let d = p.analyze("Taking 3 cats quickly");
        let tags: Vec<_> = d.tokens.iter().map(|t| t.tag).collect();
        assert_eq!(tags, [PosTag::Vbg, PosTag::Cd, PosTag::Nn, PosTag::Rb]);
        let stems: Vec<_> = d.tokens.iter().map(|t| t.stem.as_str()).collect();
        assert_eq!(stems, ["take", "3", "cat", "quick"]);
    }

    #[test]
    fn tag_names_roundtrip() {
        for t in PosTag::ALL {
            assert_eq!(t.as_str().parse::<PosTag>().unwrap(), t);
        }
    }
}
