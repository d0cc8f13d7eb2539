#![no_main]

use libfuzzer_sys::fuzz_target;
use puiseux::model::parse;

// anything that parses must print to a fixed point of parse ∘ print
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(expr) = parse(text) else { return };
    let printed = expr.print();
    let again = parse(&printed).expect("printed form parses");
    assert_eq!(again, expr);
    assert_eq!(again.print(), printed);
});
