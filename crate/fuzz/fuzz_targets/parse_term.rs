#![no_main]

use libfuzzer_sys::fuzz_target;
use ocbv_term::{alpha_eq, parse_term, print_term};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // The parser must never panic, and whatever it accepts must print to
    // text that parses back to the same term.
    if let Ok(t) = parse_term(text) {
        let printed = print_term(&t);
        let back = parse_term(&printed).expect("printed term parses");
        assert!(alpha_eq(&t, &back), "{text:?} printed as {printed:?}");
    }
});
