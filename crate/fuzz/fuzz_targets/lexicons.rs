#![no_main]

use fakecue::text::lexicon::{parse_stopwords, parse_tag_lexicon, parse_valence};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = parse_stopwords(text);
    let _ = parse_tag_lexicon(text);
    if let Ok(v) = parse_valence(text) {
        assert!(v.values().all(|x| x.is_finite()));
    }
});
