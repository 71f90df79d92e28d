#![no_main]

use libfuzzer_sys::fuzz_target;
use pbe_core::io::parse_csv;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(table) = parse_csv(text) {
        for name in table.header.clone() {
            let _ = table.column(&name);
            let _ = table.floats(&name);
        }
    }
});
