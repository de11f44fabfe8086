//! Brute-force reference machinery shared by the oracle tests: direct
//! rotation sorting of the sentinel-extended text, independent of the
//! index implementation.

// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use dbs_core::{BaseAlphabet, DegenerateString, Symbol};

/// A sorted rotation matrix row: the rotation's masks and its 1-based start
/// position in `t·$`.
pub struct Rotation {
    pub masks: Vec<u8>,
    pub start: usize,
}

/// All rotations of `t·$`, sorted lexicographically by mask value (the
/// sentinel 0 is smallest, so this is the symbol order).
pub fn sorted_rotations(t: &DegenerateString) -> Vec<Rotation> {
    let mut s: Vec<u8> = t.symbols().iter().map(|x| x.mask()).collect();
    s.push(0);
    let rows = s.len();
    let mut rotations: Vec<Rotation> = (0..rows)
        .map(|i| {
            let mut masks = s[i..].to_vec();
            masks.extend_from_slice(&s[..i]);
            Rotation { masks, start: i + 1 }
        })
        .collect();
    rotations.sort_by(|a, b| a.masks.cmp(&b.masks));
    rotations
}

/// Rows (1-based) whose rotation has `window` as a degenerate prefix.
pub fn rows_with_degenerate_prefix(rotations: &[Rotation], window: &[Symbol]) -> Vec<usize> {
    rotations
        .iter()
        .enumerate()
        .filter(|(_, rot)| {
            window.len() <= rot.masks.len()
                && window
                    .iter()
                    .zip(&rot.masks)
                    .all(|(p, &m)| p.mask() & m != 0)
        })
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn dna(masks: &[u8]) -> DegenerateString {
    DegenerateString::from_masks(masks.iter().copied(), BaseAlphabet::DNA).unwrap()
}

pub fn with_sigma(masks: &[u8], sigma: u8) -> DegenerateString {
    DegenerateString::from_masks(masks.iter().copied(), BaseAlphabet::new(sigma).unwrap()).unwrap()
}
