#![no_main]

use fakecue_cli::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = RunConfig::parse(text);
});
