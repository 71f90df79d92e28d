#![no_main]

use libfuzzer_sys::fuzz_target;
use pbe_core::qsvt::{qsp_eval_scalar, PhaseFactors};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = PhaseFactors::from_json(text) {
        if p.angles.len() <= 4096 {
            for x in [-1.0, -0.5, 0.0, 0.5, 1.0] {
                let v = qsp_eval_scalar(&p.angles, x);
                // a unitary entry cannot exceed one in magnitude
                assert!(!(v.abs() > 1.0 + 1e-9), "|P({x})| = {v}");
            }
        }
    }
});
