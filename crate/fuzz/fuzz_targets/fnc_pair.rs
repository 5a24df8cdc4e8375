#![no_main]

use fakecue::corpus::parse_fnc_pair;
use libfuzzer_sys::fuzz_target;

// Input is `bodies.csv NUL stances.csv`.
fuzz_target!(|data: &[u8]| {
    let split = data.iter().position(|&b| b == 0).unwrap_or(data.len());
    let (bodies, rest) = data.split_at(split);
    let stances = rest.get(1..).unwrap_or_default();
    let _ = parse_fnc_pair(bodies, stances);
});
