#![no_main]

use fakecue::features::extract_base;
use fakecue::text::TextPipeline;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let doc = TextPipeline::default().analyze(text);
    let s = &doc.sentiment;
    assert!((s.neg + s.neu + s.pos - 1.0).abs() < 1e-9);
    for (i, v) in extract_base(&doc).to_array().iter().enumerate() {
        let lo = if i == 4 { -1.0 } else { 0.0 };
        assert!((lo..=1.0).contains(v), "feature {i} = {v}");
    }
});
