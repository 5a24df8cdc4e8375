//! Bundled word lists: stopwords, POS tag lexicon and valence lexicon.

use std::collections::{HashMap, HashSet};
use std::path::Path;
use std::sync::OnceLock;

use thiserror::Error;

use super::PosTag;

pub const STOPWORDS_FILE: &str = "stopwords.txt";
pub const TAG_LEXICON_FILE: &str = "tag_lexicon.tsv";
pub const VALENCE_FILE: &str = "valence.tsv";

pub(crate) const BUNDLED_STOPWORDS: &str = include_str!("../../data/stopwords.txt");
pub(crate) const BUNDLED_TAGS: &str = include_str!("../../data/tag_lexicon.tsv");
pub(crate) const BUNDLED_VALENCE: &str = include_str!("../../data/valence.tsv");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{file}:{line}: {message}")]
    Malformed { file: &'static str, line: usize, message: String },
    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
}

fn malformed(file: &'static str, line: usize, message: impl Into<String>) -> LexiconError {
    LexiconError::Malformed { file, line, message: message.into() }
}

/// One word per line. Blank lines are skipped; surrounding whitespace is trimmed.
pub fn parse_stopwords(text: &str) -> Result<HashSet<String>, LexiconError> {
    let mut out = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let w = line.trim();
        if w.is_empty() {
            continue;
        }
        if w.chars().any(char::is_whitespace) {
            return Err(malformed(STOPWORDS_FILE, i + 1, "stopword contains whitespace"));
        }
        out.insert(w.to_lowercase());
    }
    Ok(out)
}

fn split_tab<'a>(file: &'static str, line_no: usize, line: &'a str) -> Result<(&'a str, &'a str), LexiconError> {
    let (word, value) = line
        .split_once('\t')
        .ok_or_else(|| malformed(file, line_no, "expected `word<TAB>value`"))?;
    let word = word.trim();
    if word.is_empty() {
        return Err(malformed(file, line_no, "empty word"));
    }
    Ok((word, value.trim()))
}

/// `word<TAB>TAG` per line.
pub fn parse_tag_lexicon(text: &str) -> Result<HashMap<String, PosTag>, LexiconError> {
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (word, tag) = split_tab(TAG_LEXICON_FILE, i + 1, line)?;
        let tag = tag
            .parse::<PosTag>()
            .map_err(|e| malformed(TAG_LEXICON_FILE, i + 1, e))?;
        out.insert(word.to_lowercase(), tag);
    }
    Ok(out)
}

/// `word<TAB>signed decimal` per line.
pub fn parse_valence(text: &str) -> Result<HashMap<String, f64>, LexiconError> {
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (word, value) = split_tab(VALENCE_FILE, i + 1, line)?;
        let v: f64 = value
            .parse()
            .map_err(|_| malformed(VALENCE_FILE, i + 1, format!("bad valence `{value}`")))?;
        if !v.is_finite() {
            return Err(malformed(VALENCE_FILE, i + 1, "valence must be finite"));
        }
        out.insert(word.to_lowercase(), v);
    }
    Ok(out)
}

/// Immutable lookup tables used by the text pipeline.
#[derive(Debug, Clone)]
pub struct Lexicons {
    pub stopwords: HashSet<String>,
    pub tags: HashMap<String, PosTag>,
    pub valence: HashMap<String, f64>,
}

impl Lexicons {
    pub fn parse(stopwords: &str, tags: &str, valence: &str) -> Result<Self, LexiconError> {
        Ok(Lexicons {
            stopwords: parse_stopwords(stopwords)?,
            tags: parse_tag_lexicon(tags)?,
            valence: parse_valence(valence)?,
        })
    }

    /// The tables shipped with the crate, parsed once per process.
    pub fn bundled() -> &'static Lexicons {
        static BUNDLED: OnceLock<Lexicons> = OnceLock::new();
        BUNDLED.get_or_init(|| {
            Lexicons::parse(BUNDLED_STOPWORDS, BUNDLED_TAGS, BUNDLED_VALENCE)
                .expect("bundled lexicons are well-formed")
        })
    }

    /// Loads `stopwords.txt`, `tag_lexicon.tsv` and `valence.tsv` from a directory.
    pub fn from_dir(dir: &Path) -> Result<Self, LexiconError> {
        let read = |name: &str| {
            let p = dir.join(name);
            std::fs::read_to_string(&p)
                .map_err(|source| LexiconError::Io { file: p.display().to_string(), source })
        };
        Lexicons::parse(&read(STOPWORDS_FILE)?, &read(TAG_LEXICON_FILE)?, &read(VALENCE_FILE)?)
    }

    pub fn is_stopword(&self, token: &str) -> bool {
        self.stopwords.contains(token)
    }

    pub fn valence_of(&self, token: &str) -> f64 {
        self.valence.get(token).copied().unwrap_or(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_load() {
        let lex = Lexicons::bundled();
        assert_eq!(lex.stopwords.len(), 179);
        assert!(lex.is_stopword("the") && lex.is_stopword("is"));
        assert!(!lex.is_stopword("superb"));
        assert_eq!(lex.valence_of("superb"), 3.1);
        assert_eq!(lex.valence_of("good"), 1.9);
        assert_eq!(lex.valence_of("zzzz"), 0.0);
        assert_eq!(lex.tags.get("took"), Some(&PosTag::Vbd));
    }

    #[test]
    fn malformed_lines_report_position() {
        let err = parse_valence("good\t1.9\nbad\tworse\n").unwrap_err();
        assert!(err.to_string().contains("valence.tsv:2"), "{err}");
        let err = parse_tag_lexicon("run\tVB\nfoo\n").unwrap_err();
        assert!(err.to_string().contains("tag_lexicon.tsv:2"), "{err}");
        assert!(parse_tag_lexicon("run\tXYZ\n").is_err());
        assert!(parse_valence("x\tNaN\n").is_err());
    }
}
