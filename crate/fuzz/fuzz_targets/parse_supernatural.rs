#![no_main]

use libfuzzer_sys::fuzz_target;
use puiseux::exact::Supernatural;

fuzz_target!(|data: &[u8]| {
    if data.len() > 256 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = text.parse::<Supernatural>() {
        let back: Supernatural = s.to_string().parse().expect("display form parses");
        assert_eq!(back, s);
        assert_eq!(s.lcm(&s), s);
    }
});
