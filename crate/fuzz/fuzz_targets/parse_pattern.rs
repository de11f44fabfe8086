//! Fuzzes the degenerate-string text parser: arbitrary input must never
//! panic, and anything accepted must survive a display/reparse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;

use dbs_core::{BaseAlphabet, DegenerateString};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // The first byte also picks the alphabet size, covering the digit and
    // bracket forms alongside IUPAC.
    let sigma = data.first().map_or(4, |b| b % 8 + 1);
    let alphabet = BaseAlphabet::new(sigma).unwrap();
    if let Ok(parsed) = DegenerateString::parse(text, alphabet) {
        let shown = parsed.to_string();
        let reparsed = DegenerateString::parse(&shown, alphabet).expect("display form parses");
        assert_eq!(reparsed, parsed);
    }
    let _ = DegenerateString::from_iupac(text);
});
