#![no_main]

use fakecue::corpus::{parse_corpus, Format};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(corpus) = parse_corpus("fuzz", data, Format::Json) {
        assert!(!corpus.items.is_empty());
    }
});
