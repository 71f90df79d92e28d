#![no_main]

use libfuzzer_sys::fuzz_target;
use pbe_core::pde::{build_adr_matrix, AdrProfile, AdrSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = AdrSpec::from_json(text) {
        let small = match &spec.profile {
            AdrProfile::Reaction { reaction } => reaction.harmonics.len() <= 8 && reaction.harmonics.iter().all(|h| h.n <= 64),
            AdrProfile::Velocity { .. } => true,
        };
        if spec.n <= 5 && small {
            let _ = build_adr_matrix(&spec);
        }
    }
});
