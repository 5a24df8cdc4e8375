#![no_main]

use fakecue::text::stem;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|word: &str| {
    let s = stem(word);
    assert_eq!(stem(word), s);
});
