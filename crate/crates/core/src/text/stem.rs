//! Porter2 (Snowball English) stemmer.
//!
//! Works on a `Vec<char>` buffer. `Y` marks a consonantal y for the duration of the
//! algorithm and is lowered again at the end.

const EXCEPTIONS: &[(&str, &str)] = &[
    ("skis", "ski"),
    ("skies", "sky"),
    ("dying", "die"),
    ("lying", "lie"),
    ("tying", "tie"),
    ("idly", "idl"),
    ("gently", "gentl"),
    ("ugly", "ugli"),
    ("early", "earli"),
    ("only", "onli"),
    ("singly", "singl"),
    ("sky", "sky"),
    ("news", "news"),
    ("howe", "howe"),
    ("atlas", "atlas"),
    ("cosmos", "cosmos"),
    ("bias", "bias"),
    ("andes", "andes"),
];

/// Words left alone once step 1a has run.
const POST_1A_INVARIANT: &[&str] = &[
    "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed",
];

const R1_PREFIXES: &[&str] = &["gener", "commun", "arsen"];

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

fn is_double(a: char, b: char) -> bool {
    a == b && matches!(a, 'b' | 'd' | 'f' | 'g' | 'm' | 'n' | 'p' | 'r' | 't')
}

fn is_li_ending(c: char) -> bool {
    matches!(c, 'c' | 'd' | 'e' | 'g' | 'h' | 'k' | 'm' | 'n' | 'r' | 't')
}

struct Word {
    w: Vec<char>,
    p1: usize,
    p2: usize,
}

impl Word {
    fn len(&self) -> usize {
        self.w.len()
    }

    fn ends_with(&self, suffix: &str) -> bool {
        let n = suffix.chars().count();
        n <= self.len() && self.w[self.len() - n..].iter().copied().eq(suffix.chars())
    }

    /// Longest entry of `suffixes` the word ends with.
    fn longest<'a>(&self, suffixes: &[&'a str]) -> Option<&'a str> {
        suffixes
            .iter()
            .filter(|s| self.ends_with(s))
            .max_by_key(|s| s.len())
            .copied()
    }

    fn stem_len(&self, suffix: &str) -> usize {
        self.len() - suffix.chars().count()
    }

    fn replace(&mut self, suffix: &str, with: &str) {
        let keep = self.stem_len(suffix);
        self.w.truncate(keep);
        self.w.extend(with.chars());
    }

    fn has_vowel(&self, range: std::ops::Range<usize>) -> bool {
        self.w[range].iter().any(|&c| is_vowel(c))
    }

    /// Short syllable ending at position `end` (exclusive).
    fn short_syllable_at(&self, end: usize) -> bool {
        let w = &self.w;
        if end >= 3 {
            let (a, b, c) = (w[end - 3], w[end - 2], w[end - 1]);
            if !is_vowel(a) && is_vowel(b) && !is_vowel(c) && !matches!(c, 'w' | 'x' | 'Y') {
                return true;
            }
        }
        end == 2 && is_vowel(w[0]) && !is_vowel(w[1])
    }

    fn ends_short_syllable(&self) -> bool {
        self.short_syllable_at(self.len())
    }
}

fn region_start(w: &[char], from: usize) -> usize {
    let mut i = from;
    while i < w.len() && !is_vowel(w[i]) {
        i += 1;
    }
    while i < w.len() && is_vowel(w[i]) {
        i += 1;
    }
    if i < w.len() {
        i + 1
    } else {
        w.len()
    }
}

fn mark_regions(w: &[char]) -> (usize, usize) {
    let prefix = R1_PREFIXES
        .iter()
        .find(|p| p.len() <= w.len() && w[..p.len()].iter().copied().eq(p.chars()));
    let p1 = match prefix {
        Some(p) => p.len(),
        None => region_start(w, 0),
    };
    let p2 = region_start(w, p1);
    (p1, p2)
}

fn prelude(w: &mut Vec<char>) {
    if w.first() == Some(&'\'') {
        w.remove(0);
    }
    if w.first() == Some(&'y') {
        w[0] = 'Y';
    }
    for i in 1..w.len() {
        if w[i] == 'y' && is_vowel(w[i - 1]) {
            w[i] = 'Y';
        }
    }
}

fn step_1a(word: &mut Word) {
    if let Some(s) = word.longest(&["'", "'s", "'s'"]) {
        word.replace(s, "");
    }
    match word.longest(&["sses", "ied", "ies", "s", "us", "ss"]) {
        Some("sses") => word.replace("sses", "ss"),
        Some(s @ ("ied" | "ies")) => {
            if word.stem_len(s) > 1 {
                word.replace(s, "i")
            } else {
                word.replace(s, "ie")
            }
        }
        Some("s") => {
            let n = word.len();
            if n >= 2 && word.has_vowel(0..n - 2) {
                word.replace("s", "");
            }
        }
        _ => {}
    }
}

fn step_1b(word: &mut Word) {
    match word.longest(&["eed", "eedly", "ed", "edly", "ing", "ingly"]) {
        Some(s @ ("eed" | "eedly")) => {
            if word.stem_len(s) >= word.p1 {
                word.replace(s, "ee");
            }
        }
        Some(s) => {
            let stem = word.stem_len(s);
            if !word.has_vowel(0..stem) {
                return;
            }
            word.w.truncate(stem);
            let n = word.len();
            if word.ends_with("at") || word.ends_with("bl") || word.ends_with("iz") {
                word.w.push('e');
            } else if n >= 2 && is_double(word.w[n - 2], word.w[n - 1]) {
                word.w.pop();
            } else if word.p1 == n && word.ends_short_syllable() {
                word.w.push('e');
            }
        }
        None => {}
    }
}

fn step_1c(word: &mut Word) {
    let n = word.len();
    if n >= 3 && matches!(word.w[n - 1], 'y' | 'Y') && !is_vowel(word.w[n - 2]) {
        word.w[n - 1] = 'i';
    }
}

fn step_2(word: &mut Word) {
    const SUFFIXES: &[&str] = &[
        "tional", "enci", "anci", "abli", "entli", "izer", "ization", "ational", "ation",
        "ator", "alism", "aliti", "alli", "fulness", "ousli", "ousness", "iveness", "iviti",
        "biliti", "bli", "ogi", "fulli", "lessli", "li",
    ];
    let Some(s) = word.longest(SUFFIXES) else { return };
    let stem = word.stem_len(s);
    if stem < word.p1 {
        return;
    }
    let to = match s {
        "tional" => "tion",
        "enci" => "ence",
        "anci" => "ance",
        "abli" => "able",
        "entli" => "ent",
        "izer" | "ization" => "ize",
        "ational" | "ation" | "ator" => "ate",
        "alism" | "aliti" | "alli" => "al",
        "fulness" => "ful",
        "ousli" | "ousness" => "ous",
        "iveness" | "iviti" => "ive",
        "biliti" | "bli" => "ble",
        "ogi" => {
            if stem > 0 && word.w[stem - 1] == 'l' {
                "og"
            } else {
                return;
            }
        }
        "fulli" => "ful",
        "lessli" => "less",
        "li" => {
            if stem > 0 && is_li_ending(word.w[stem - 1]) {
                ""
            } else {
                return;
            }
        }
        _ => unreachable!(),
    };
    word.replace(s, to);
}

fn step_3(word: &mut Word) {
    const SUFFIXES: &[&str] = &[
        "tional", "ational", "alize", "icate", "iciti", "ical", "ful", "ness", "ative",
    ];
    let Some(s) = word.longest(SUFFIXES) else { return };
    let stem = word.stem_len(s);
    if stem < word.p1 {
        return;
    }
    match s {
        "tional" => word.replace(s, "tion"),
        "ational" => word.replace(s, "ate"),
        "alize" => word.replace(s, "al"),
        "icate" | "iciti" | "ical" => word.replace(s, "ic"),
        "ful" | "ness" => word.replace(s, ""),
        "ative" => {
            if stem >= word.p2 {
                word.replace(s, "")
            }
        }
        _ => unreachable!(),
    }
}

fn step_4(word: &mut Word) {
    const SUFFIXES: &[&str] = &[
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment", "ent", "ism",
        "ate", "iti", "ous", "ive", "ize", "ion",
    ];
    let Some(s) = word.longest(SUFFIXES) else { return };
    let stem = word.stem_len(s);
    if stem < word.p2 {
        return;
    }
    if s == "ion" {
        if stem > 0 && matches!(word.w[stem - 1], 's' | 't') {
            word.replace(s, "");
        }
    } else {
        word.replace(s, "");
    }
}

fn step_5(word: &mut Word) {
    let n = word.len();
    if word.ends_with("e") {
        let stem = n - 1;
        if stem >= word.p2 || (stem >= word.p1 && !word.short_syllable_at(stem)) {
            word.w.pop();
        }
    } else if word.ends_with("l") {
        let stem = n - 1;
        if stem >= word.p2 && stem > 0 && word.w[stem - 1] == 'l' {
            word.w.pop();
        }
    }
}

/// Stems one lowercase token. Tokens of one or two characters come back unchanged.
pub fn stem(token: &str) -> String {
    if let Some((_, to)) = EXCEPTIONS.iter().find(|(from, _)| *from == token) {
        return (*to).to_string();
    }
    if token.chars().count() < 3 {
        return token.to_string();
    }
    let mut w: Vec<char> = token.chars().collect();
    prelude(&mut w);
    let (p1, p2) = mark_regions(&w);
    let mut word = Word { w, p1, p2 };

    step_1a(&mut word);
    let after_1a: String = word.w.iter().collect();
    if !POST_1A_INVARIANT.contains(&after_1a.as_str()) {
        step_1b(&mut word);
        step_1c(&mut word);
        step_2(&mut word);
        step_3(&mut word);
        step_4(&mut word);
        step_5(&mut word);
    }
    word.w.iter().map(|&c| if c == 'Y' { 'y' } else { c }).collect()
}
