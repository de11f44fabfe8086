//! Golden files pin the index format byte for byte. If the format changes,
//! bump the version and regenerate via
//! `cargo test -p dbs-core --test index_format -- --ignored regenerate`.

use dbs_core::{BaseAlphabet, BwtIndex, DegenerateString};

fn golden_dna_index() -> BwtIndex {
    let t = DegenerateString::from_iupac("ACGRNTACGTTGCA").unwrap();
    BwtIndex::build_with_rate(&t, 4).unwrap()
}

fn golden_sigma2_index() -> BwtIndex {
    let two = BaseAlphabet::new(2).unwrap();
    let t = DegenerateString::from_masks([1u8, 2, 3, 1, 2, 1, 3, 2], two).unwrap();
    BwtIndex::build_with_rate(&t, 3).unwrap()
}

#[test]
fn golden_dna_bytes_are_stable() {
    let expected: &[u8] = include_bytes!("data/golden_dna.dbsi");
    assert_eq!(golden_dna_index().to_bytes(), expected);
}

#[test]
fn golden_sigma2_bytes_are_stable() {
    let expected: &[u8] = include_bytes!("data/golden_sigma2.dbsi");
    assert_eq!(golden_sigma2_index().to_bytes(), expected);
}

#[test]
fn golden_files_deserialize_to_the_built_indexes() {
    let dna = BwtIndex::from_bytes(include_bytes!("data/golden_dna.dbsi")).unwrap();
    assert_eq!(dna, golden_dna_index());
    let two = BwtIndex::from_bytes(include_bytes!("data/golden_sigma2.dbsi")).unwrap();
    assert_eq!(two, golden_sigma2_index());
}

#[test]
fn every_corrupted_byte_is_rejected() {
    // Flipping any single byte must fail a load; which error depends on
    // where the flip lands.
    let bytes = golden_dna_index().to_bytes();
    for i in 0..bytes.len() {
        let mut corrupt = bytes.clone();
        corrupt[i] ^= 0x01;
        assert!(
            BwtIndex::from_bytes(&corrupt).is_err(),
            "flip at offset {i} was accepted"
        );
    }
}

#[test]
fn every_truncation_is_rejected() {
    let bytes = golden_dna_index().to_bytes();
    for len in 0..bytes.len() {
        assert!(
            BwtIndex::from_bytes(&bytes[..len]).is_err(),
            "truncation to {len} bytes was accepted"
        );
    }
}

#[test]
#[ignore = "writes the golden files; run once after an intentional format change"]
fn regenerate() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("golden_dna.dbsi"), golden_dna_index().to_bytes()).unwrap();
    std::fs::write(
        dir.join("golden_sigma2.dbsi"),
        golden_sigma2_index().to_bytes(),
    )
    .unwrap();
}
