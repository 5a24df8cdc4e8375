#![no_main]

use fakecue::corpus::{parse_stance_records, remap_fnc_stances, Format};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    for format in [Format::Csv, Format::Json, Format::Jsonl] {
        if let Ok(records) = parse_stance_records(data, format) {
            let _ = remap_fnc_stances("fuzz", &records);
        }
    }
});
