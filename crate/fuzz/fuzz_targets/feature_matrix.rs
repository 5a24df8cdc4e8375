#![no_main]

use fakecue::FeatureMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(m) = FeatureMatrix::from_tsv(text) {
        assert!(m.rows.iter().all(|r| r.len() == m.width()));
        assert_eq!(m.rows.len(), m.labels.len());
        let _ = m.to_tsv();
    }
});
