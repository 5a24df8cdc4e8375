#![no_main]

use fakecue::classifiers::Model;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(model) = Model::from_json(text) {
        let again = Model::from_json(&model.to_json()).expect("round trip");
        assert_eq!(again.feature_names, model.feature_names);
    }
});
