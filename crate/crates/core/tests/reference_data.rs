use fakecue::text::{stem, Lexicons};
use sha2::{Digest, Sha256};

const VOCABULARY: &str = include_str!("data/porter2_voc.tsv");

#[test]
fn porter2_matches_reference_vocabulary() {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for line in VOCABULARY.lines() {
        let (word, expected) = line.split_once('\t').expect("word<TAB>stem");
        let got = stem(word);
        if got != expected {
            mismatches.push(format!("{word}: {got} != {expected}"));
        }
        checked += 1;
    }
    assert_eq!(checked, 5000);
    assert!(mismatches.is_empty(), "{} mismatches: {:?}", mismatches.len(), &mismatches[..mismatches.len().min(20)]);
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

// Changing a bundled lexicon changes every feature value; the pins make that a
// deliberate act.
#[test]
fn bundled_lexicons_are_pinned() {
    let pins = [
        (&include_bytes!("../data/stopwords.txt")[..], "019f104ba2ed07436d05f9cdd3383034ad66014edc27fc651f837e1a038b6451"),
        (&include_bytes!("../data/tag_lexicon.tsv")[..], "9d471e026f8bc5b8ae261389a3168b74d0704f7ede1c29ed5ecf1b08134ceec0"),
        (&include_bytes!("../data/valence.tsv")[..], "c5160defaf4a264a05c9e227d0d2cabbef0129865afd53c70a98bb18ca219a55"),
    ];
    for (bytes, pin) in pins {
        assert_eq!(sha256_hex(bytes), pin);
    }
}

#[test]
fn bundled_lexicon_spot_values() {
    let lex = Lexicons::bundled();
    assert_eq!(lex.stopwords.len(), 179);
    assert!(lex.is_stopword("the") && !lex.is_stopword("person"));
    assert_eq!(lex.valence_of("superb"), 3.1);
    assert_eq!(lex.valence_of("good"), 1.9);
    assert_eq!(lex.valence_of("person"), 0.0);
}
