#![no_main]

use libfuzzer_sys::fuzz_target;
use puiseux::exact::Rat;
use puiseux::factor::pr_decompose;

fuzz_target!(|data: &[u8]| {
    if data.len() > 64 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(x) = text.parse::<Rat>() else { return };
    if let Ok(d) = pr_decompose(&x) {
        assert_eq!(d.value(), x);
        assert!(d.coeffs.iter().all(|(&p, &a)| a >= 1 && a < p));
    }
});
