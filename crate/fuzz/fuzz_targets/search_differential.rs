//! Differential fuzzing of the three matchers: on any (pattern, text) pair
//! the index search and the bit-parallel scanner must reproduce the naive
//! definition exactly.
//!
//! Input layout: first byte picks the pattern length (1..=16), the next
//! m bytes are pattern masks, the rest is the text. Bytes map onto the 15
//! DNA masks.

#![no_main]

use libfuzzer_sys::fuzz_target;

use dbs_core::{
    bndm_degenerate, find_occurrences, naive_match, BaseAlphabet, BwtIndex, DegenerateString,
};

fuzz_target!(|data: &[u8]| {
    let Some((&len_byte, rest)) = data.split_first() else {
        return;
    };
    let m = (len_byte as usize % 16) + 1;
    if rest.len() < m + 1 {
        return;
    }
    let (pattern_bytes, text_bytes) = rest.split_at(m);
    let masks = |bytes: &[u8]| bytes.iter().map(|b| b % 15 + 1).collect::<Vec<u8>>();
    let p = DegenerateString::from_masks(masks(pattern_bytes), BaseAlphabet::DNA).unwrap();
    let t = DegenerateString::from_masks(masks(text_bytes), BaseAlphabet::DNA).unwrap();

    let expected = naive_match(&p, &t).unwrap();
    let index = BwtIndex::build(&t).unwrap();
    assert_eq!(find_occurrences(&p, &index).unwrap(), expected);
    assert_eq!(bndm_degenerate(&p, &t).unwrap(), expected);
});
