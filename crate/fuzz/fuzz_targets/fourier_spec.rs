#![no_main]

use libfuzzer_sys::fuzz_target;
use pbe_core::lcu::{build_fourier_diagonal, FourierSpec};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(spec) = FourierSpec::from_json(text) {
        if spec.harmonics.len() <= 8 && spec.harmonics.iter().all(|h| h.n <= 64) {
            let _ = build_fourier_diagonal(1 + (n % 4) as usize, &spec);
        }
    }
});
