//! Fuzzes the FASTA reader: arbitrary bytes must never panic, and accepted
//! record sets must round-trip through the writer.

#![no_main]

use libfuzzer_sys::fuzz_target;

use dbs_core::{read_fasta_from, write_fasta};

fuzz_target!(|data: &[u8]| {
    let Ok(records) = read_fasta_from(data) else {
        return;
    };
    let mut out = Vec::new();
    write_fasta(&mut out, &records).expect("DNA records always serialize");
    let reread = read_fasta_from(out.as_slice()).expect("writer output parses");
    assert_eq!(reread, records);
});
