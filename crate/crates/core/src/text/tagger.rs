//! Deterministic lexicon + suffix part-of-speech cascade over the eleven tags the
//! feature set needs.

use super::lexicon::Lexicons;
use super::PosTag;

const PREPOSITIONS: &[&str] = &[
    "aboard", "about", "above", "across", "after", "against", "along", "alongside", "amid",
    "amidst", "among", "amongst", "around", "as", "at", "atop", "before", "behind", "below",
    "beneath", "beside", "besides", "between", "beyond", "by", "concerning", "despite", "down",
    "during", "except", "for", "from", "in", "inside", "into", "like", "near", "of", "off", "on",
    "onto", "opposite", "out", "outside", "over", "past", "per", "regarding", "since", "than",
    "through", "throughout", "till", "to", "toward", "towards", "under", "underneath", "unlike",
    "until", "unto", "up", "upon", "versus", "via", "with", "within", "without",
];

const BE_HAVE: &[&str] = &[
    "be", "am", "is", "are", "was", "were", "been", "being", "have", "has", "had", "having",
];

fn is_cardinal(token: &str) -> bool {
    let mut groups = token.split([',', '.']);
    groups.all(|g| !g.is_empty() && g.bytes().all(|b| b.is_ascii_digit()))
}

/// Applies the suffix only to tokens at least two characters longer than it.
fn has_suffix(token: &str, suffix: &str) -> bool {
    token.len() >= suffix.len() + 2 && token.ends_with(suffix)
}

fn is_verb_stem(lex: &Lexicons, stem: &str) -> bool {
    lex.tags.get(stem) == Some(&PosTag::Vb)
}

fn third_person(lex: &Lexicons, token: &str) -> bool {
    if !token.ends_with('s') || token.ends_with("ss") || token.len() < 3 {
        return false;
    }
    let base = &token[..token.len() - 1];
    if is_verb_stem(lex, base) {
        return true;
    }
    if let Some(b) = token.strip_suffix("es") {
        if is_verb_stem(lex, b) {
            return true;
        }
    }
    token
        .strip_suffix("ies")
        .is_some_and(|b| is_verb_stem(lex, &format!("{b}y")))
}

fn tag_one(lex: &Lexicons, token: &str, prev: Option<&str>) -> PosTag {
    if is_cardinal(token) {
        return PosTag::Cd;
    }
    if let Some(&t) = lex.tags.get(token) {
        return t;
    }
    if has_suffix(token, "ly") {
        return PosTag::Rb;
    }
    if has_suffix(token, "ing") {
        return PosTag::Vbg;
    }
    if has_suffix(token, "ed") {
        let after_aux = prev.is_some_and(|p| lex.tags.contains_key(p) && BE_HAVE.contains(&p));
        return if after_aux { PosTag::Vbn } else { PosTag::Vbd };
    }
    if third_person(lex, token) {
        return PosTag::Vbz;
    }
    if ["ous", "ful", "able", "ive"].iter().any(|s| has_suffix(token, s)) {
        return PosTag::Jj;
    }
    if PREPOSITIONS.contains(&token) {
        return PosTag::In;
    }
    PosTag::Nn
}

/// One tag per token, first matching rule wins: cardinal number, lexicon entry,
/// suffix rules, closed-class preposition, and finally NN.
pub fn pos_tag(lex: &Lexicons, tokens: &[String]) -> Vec<PosTag> {
    tokens
        .iter()
        .enumerate()
        .map(|(i, t)| tag_one(lex, t, i.checked_sub(1).map(|p| tokens[p].as_str())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags(words: &[&str]) -> Vec<PosTag> {
        let toks: Vec<String> = words.iter().map(|s| s.to_string()).collect();
        pos_tag(Lexicons::bundled(), &toks)
    }

    #[test]
    fn cascade_examples() {
        use PosTag::*;
        assert_eq!(tags(&["taking", "3", "cats", "quickly"]), [Vbg, Cd, Nn, Rb]);
        assert_eq!(tags(&["in"]), [In]);
        assert_eq!(tags(&["7,500"]), [Cd]);
        assert_eq!(tags(&["3.14", "1,000,000", "1,", ",5"]), [Cd, Cd, Nn, Nn]);
    }

    #[test]
    fn suffix_rules() {
        use PosTag::*;
        assert_eq!(tags(&["has", "walked"]), [Vbz, Vbn]);
        assert_eq!(tags(&["she", "walked"]), [Other, Vbd]);
        assert_eq!(tags(&["walked"]), [Vbd]);
        assert_eq!(tags(&["claims", "watches", "worries"]), [Vbz, Vbz, Vbz]);
        assert_eq!(tags(&["dangerous", "hopeful", "readable", "massive"]), [Jj, Jj, Jj, Jj]);
        assert_eq!(tags(&["thing", "family", "took", "taken", "million"]), [Nn, Nn, Vbd, Vbn, Cd]);
        assert_eq!(tags(&["despite", "upon"]), [In, In]);
        assert_eq!(tags(&["ted", "class"]), [Nn, Nn]);
    }
}
