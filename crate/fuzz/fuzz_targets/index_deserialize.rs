//! Fuzzes the binary index decoder: arbitrary bytes must never panic or
//! hang. Accepted inputs are canonical (re-serialize to the same bytes)
//! and usable (queries and text reconstruction terminate).

#![no_main]

use libfuzzer_sys::fuzz_target;

use dbs_core::{find_occurrences, BwtIndex, DegenerateString};

fuzz_target!(|data: &[u8]| {
    let Ok(index) = BwtIndex::from_bytes(data) else {
        return;
    };
    assert_eq!(index.to_bytes(), data, "accepted input must be canonical");

    let any = DegenerateString::from_masks(vec![index.alphabet().max_mask()], index.alphabet())
        .expect("max mask is valid");
    let occurrences = find_occurrences(&any, &index).expect("query on valid index");
    assert!(occurrences.len() <= index.n());
    assert_eq!(index.text().len(), index.n());
});
