#![no_main]

use libfuzzer_sys::fuzz_target;
use puiseux::exact::Rat;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = text.parse::<Rat>() {
        let back: Rat = q.to_string().parse().expect("display form parses");
        assert_eq!(back, q);
    }
});
