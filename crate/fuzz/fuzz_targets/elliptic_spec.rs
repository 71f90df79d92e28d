#![no_main]

use libfuzzer_sys::fuzz_target;
use pbe_core::pde::{build_elliptic_matrix, EllipticSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = EllipticSpec::from_json(text) {
        if spec.n <= 6 {
            let _ = build_elliptic_matrix(&spec);
        }
    }
});
