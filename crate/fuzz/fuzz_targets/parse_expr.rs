#![no_main]

use libfuzzer_sys::fuzz_target;
use puiseux::model::parse;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Err(e) = parse(text) {
            if let Some(pos) = e.position() {
                assert!(pos <= text.len());
            }
        }
    }
});
