#![no_main]

use libfuzzer_sys::fuzz_target;
use pbe_core::circuit::Circuit;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Circuit::from_json(text) {
        // anything accepted must survive a round trip unchanged
        let again = Circuit::from_json(&c.to_json()).expect("re-parse of emitted JSON");
        assert_eq!(again, c);
    }
});
