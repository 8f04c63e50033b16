#![no_main]

use libfuzzer_sys::fuzz_target;
use ocbv_sequent::{cmd_alpha_eq, parse_command, print_command};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_command(text) {
        let printed = print_command(&c);
        let back = parse_command(&printed).expect("printed command parses");
        assert!(cmd_alpha_eq(&c, &back), "{text:?} printed as {printed:?}");
    }
});
