fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

#[derive(Clone, Copy, PartialEq)]
enum Run {
    Letters,
    Digits,
}

/// Lowercased word tokens: maximal runs of letters (with internal apostrophes) or
/// of ASCII digits. Everything else separates tokens. Curly apostrophes are
/// normalised to `'`.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut run: Option<Run> = None;

    let flush = |current: &mut String, tokens: &mut Vec<String>| {
        if !current.is_empty() {
            tokens.push(std::mem::take(current));
        }
    };

    for (i, &c) in chars.iter().enumerate() {
        let class = if c.is_alphabetic() {
            Some(Run::Letters)
        } else if c.is_ascii_digit() {
            Some(Run::Digits)
        } else {
            None
        };
        match class {
            Some(k) => {
                if run != Some(k) {
                    flush(&mut current, &mut tokens);
                }
                current.extend(c.to_lowercase());
                run = Some(k);
            }
            None if is_apostrophe(c)
                && run == Some(Run::Letters)
                && chars.get(i + 1).is_some_and(|n| n.is_alphabetic()) =>
            {
                current.push('\'');
            }
            None => {
                flush(&mut current, &mut tokens);
                run = None;
            }
        }
    }
    flush(&mut current, &mut tokens);
    tokens
}

#[cfg(test)]
mod tests {
    use super::tokenize;

    #[test]
    fn examples() {
        assert_eq!(tokenize("The person is superb."), ["the", "person", "is", "superb"]);
        assert_eq!(tokenize("Won 3 seats, won't stop"), ["won", "3", "seats", "won't", "stop"]);
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn edges() {
        assert_eq!(tokenize("abc123def"), ["abc", "123", "def"]);
        assert_eq!(tokenize("'quoted' it's rock'n'roll"), ["quoted", "it's", "rock'n'roll"]);
        assert_eq!(tokenize("don\u{2019}t 7,500"), ["don't", "7", "500"]);
        assert_eq!(tokenize("ÉCOLE Straße"), ["école", "straße"]);
        assert_eq!(tokenize("a''b"), ["a", "b"]);
    }
}
