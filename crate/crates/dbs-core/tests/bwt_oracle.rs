//! Index construction checked against direct rotation sorting, plus
//! round-trip properties for inversion and serialization.

mod common;

use common::{dna, sorted_rotations, with_sigma};
use dbs_core::{
    build_suffix_array, inverse_bwt, BwtIndex, DegenerateString, Interval, Symbol,
};
use proptest::prelude::*;

fn assert_matches_rotation_sort(t: &DegenerateString) {
    let rotations = sorted_rotations(t);
    let expected_sa: Vec<u32> = rotations.iter().map(|r| r.start as u32).collect();
    let expected_l: Vec<u8> = rotations
        .iter()
        .map(|r| *r.masks.last().unwrap())
        .collect();
    let expected_h = rotations.iter().position(|r| r.start == 1).unwrap() + 1;

    let sa = build_suffix_array(t).unwrap();
    assert_eq!(sa.positions(), expected_sa.as_slice(), "suffix array");

    let idx = BwtIndex::build(t).unwrap();
    assert_eq!(idx.last_column(), expected_l.as_slice(), "last column");
    assert_eq!(idx.h(), expected_h, "row of the original string");

    // The first column derived from the count array must reproduce the
    // sorted rotations' first symbols.
    let c = idx.c_array();
    for (r, rotation) in rotations.iter().enumerate() {
        let row = (r + 1) as u64;
        let from_c = (0..idx.alphabet().symbol_values())
            .find(|&m| c[m] < row && row <= c[m + 1])
            .expect("row falls in some symbol block") as u8;
        assert_eq!(from_c, rotation.masks[0], "first column at row {row}");
    }
}

fn mask_vec(sigma: u8, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    let max_mask = if sigma == 8 { 255 } else { (1u8 << sigma) - 1 };
    prop::collection::vec(1u8..=max_mask, 1..=max_len)
}

proptest! {
    #[test]
    fn bwt_matches_rotation_sort_dna(masks in mask_vec(4, 64)) {
        assert_matches_rotation_sort(&dna(&masks));
    }

    #[test]
    fn bwt_matches_rotation_sort_binary(masks in mask_vec(2, 48)) {
        assert_matches_rotation_sort(&with_sigma(&masks, 2));
    }

    #[test]
    fn bwt_matches_rotation_sort_wide(masks in mask_vec(8, 48)) {
        assert_matches_rotation_sort(&with_sigma(&masks, 8));
    }

    #[test]
    fn inverse_bwt_round_trips(masks in mask_vec(4, 200)) {
        let t = dna(&masks);
        let idx = BwtIndex::build(&t).unwrap();
        let l: Vec<Symbol> = idx
            .last_column()
            .iter()
            .map(|&m| Symbol::from_mask_unchecked(m))
            .collect();
        prop_assert_eq!(inverse_bwt(&l, idx.h(), idx.alphabet()).unwrap(), t.clone());
        prop_assert_eq!(idx.text(), t);
    }

    #[test]
    fn serialization_round_trips(masks in mask_vec(4, 200), rate in 1u32..=64) {
        let t = dna(&masks);
        let idx = BwtIndex::build_with_rate(&t, rate).unwrap();
        let back = BwtIndex::from_bytes(&idx.to_bytes()).unwrap();
        prop_assert_eq!(back, idx);
    }

    #[test]
    fn lf_is_a_permutation_and_locate_covers_all_rows(
        masks in mask_vec(4, 120),
        rate in 1u32..=40,
    ) {
        let t = dna(&masks);
        let idx = BwtIndex::build_with_rate(&t, rate).unwrap();

        let mut seen = vec![false; idx.rows() + 1];
        for r in 1..=idx.rows() {
            let m = idx.lf(r);
            prop_assert!(m >= 1 && m <= idx.rows());
            prop_assert!(!seen[m], "lf collision at row {}", r);
            seen[m] = true;
        }

        let all = idx.locate(Interval::new(1, idx.rows())).unwrap();
        let expected: Vec<usize> = (1..=idx.rows()).collect();
        prop_assert_eq!(all, expected);
    }

    #[test]
    fn rank_agrees_with_counts(masks in mask_vec(4, 150)) {
        let t = dna(&masks);
        let idx = BwtIndex::build(&t).unwrap();
        for mask in 0..=15u8 {
            let sym = Symbol::from_mask_unchecked(mask);
            let total = idx
                .last_column()
                .iter()
                .filter(|&&b| b == mask)
                .count() as u64;
            prop_assert_eq!(idx.rank(sym, idx.rows()) as u64, total);
            prop_assert_eq!(idx.symbol_count(sym), total);
        }
    }
}

#[test]
fn rotation_sort_spot_checks() {
    for text in ["GCA", "AAA", "A", "ACGACG", "NNN", "ACGRNT"] {
        assert_matches_rotation_sort(&DegenerateString::from_iupac(text).unwrap());
    }
}
