#![no_main]

use libfuzzer_sys::fuzz_target;
use pbe_core::lcu::{build_lcu, LcuSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = LcuSpec::from_json(text) {
        if spec.n <= 4 && spec.terms.len() <= 8 {
            let _ = build_lcu(&spec);
        }
    }
});
