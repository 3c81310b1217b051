#![no_main]

use libfuzzer_sys::fuzz_target;
use saptak::{format_melody, parse_melody};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(melody) = parse_melody(text) {
        // whatever parses must survive the canonical round trip unchanged
        let canonical = format_melody(&melody);
        let again = parse_melody(&canonical).expect("canonical form parses");
        assert_eq!(again, melody);
    }
});
