//! Seeded random generation of solid, degenerate and conservative DNA
//! texts, for tests and benchmarks.
//!
//! Generation is a pure function of the spec: a fixed ChaCha8 stream keyed
//! by the seed, sampled with plain modulo reduction, so outputs are
//! reproducible across platforms and releases.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{BaseAlphabet, DegenerateString};
use crate::error::{Error, Result};

/// The four solid DNA masks.
const SOLID: [u8; 4] = [1, 2, 4, 8];

/// The 11 non-solid DNA masks, ascending.
const NON_SOLID: [u8; 11] = [3, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15];

/// What kind of text to generate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    /// Solid letters only.
    Solid,
    /// Each position is non-solid independently with this probability.
    Degenerate { fraction: f64 },
    /// Exactly `q` non-solid letters at uniformly sampled distinct
    /// positions.
    Conservative { q: usize },
}

/// A deterministic generation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub length: usize,
    pub kind: GenKind,
    pub seed: u64,
}

impl GenSpec {
    pub fn solid(length: usize, seed: u64) -> Self {
        GenSpec {
            length,
            kind: GenKind::Solid,
            seed,
        }
    }

    pub fn degenerate(length: usize, fraction: f64, seed: u64) -> Self {
        GenSpec {
            length,
            kind: GenKind::Degenerate { fraction },
            seed,
        }
    }

    pub fn conservative(length: usize, q: usize, seed: u64) -> Self {
        GenSpec {
            length,
            kind: GenKind::Conservative { q },
            seed,
        }
    }
}

/// Generates a DNA text per `spec`. The same spec always yields the same
/// string.
pub fn generate(spec: &GenSpec) -> Result<DegenerateString> {
    let n = spec.length;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let masks: Vec<u8> = match spec.kind {
        GenKind::Solid => (0..n).map(|_| solid(&mut rng)).collect(),
        GenKind::Degenerate { fraction } => {
            if !(0.0..=1.0).contains(&fraction) {
                return Err(Error::InvalidGenFraction(fraction));
            }
            (0..n)
                .map(|_| {
                    let roll = rng.next_u32() as f64 / 4_294_967_296.0;
                    if roll < fraction {
                        non_solid(&mut rng)
                    } else {
                        solid(&mut rng)
                    }
                })
                .collect()
        }
        GenKind::Conservative { q } => {
            if q > n {
                return Err(Error::InvalidGenSpec { q, n });
            }
            let mut masks: Vec<u8> = (0..n).map(|_| solid(&mut rng)).collect();
            for pos in sample_distinct(&mut rng, n, q) {
                masks[pos] = non_solid(&mut rng);
            }
            masks
        }
    };
    DegenerateString::from_masks(masks, BaseAlphabet::DNA)
}

fn solid(rng: &mut ChaCha8Rng) -> u8 {
    SOLID[(rng.next_u32() % 4) as usize]
}

fn non_solid(rng: &mut ChaCha8Rng) -> u8 {
    NON_SOLID[(rng.next_u32() % 11) as usize]
}

/// `q` distinct positions out of `0..n` by partial Fisher-Yates, returned
/// in ascending order.
fn sample_distinct(rng: &mut ChaCha8Rng, n: usize, q: usize) -> Vec<usize> {
    let mut pool: Vec<u32> = (0..n as u32).collect();
    for i in 0..q {
        let j = i + (rng.next_u64() % (n - i) as u64) as usize;
        pool.swap(i, j);
    }
    let mut chosen: Vec<usize> = pool[..q].iter().map(|&p| p as usize).collect();
    chosen.sort_unstable();
    chosen
}

/// Convenience for tests: a random pattern of length `m`, each symbol drawn
/// uniformly from all 15 DNA masks (`solid_only` restricts to the 4 solid
/// ones).
pub fn random_pattern(m: usize, solid_only: bool, seed: u64) -> DegenerateString {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let masks: Vec<u8> = (0..m)
        .map(|_| {
            if solid_only {
                solid(&mut rng)
            } else {
                (rng.next_u32() % 15) as u8 + 1
            }
        })
        .collect();
    DegenerateString::from_masks(masks, BaseAlphabet::DNA).expect("masks in 1..=15")
}

/// The solid and double-base DNA masks.
const LIGHT: [u8; 10] = [1, 2, 4, 8, 3, 5, 6, 9, 10, 12];

/// A random pattern whose symbols carry at most two bases each, drawn
/// uniformly from the four solid and six double-base masks.
pub fn random_light_pattern(m: usize, seed: u64) -> DegenerateString {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let masks: Vec<u8> = (0..m)
        .map(|_| LIGHT[(rng.next_u32() % 10) as usize])
        .collect();
    DegenerateString::from_masks(masks, BaseAlphabet::DNA).expect("masks in 1..=15")
}
