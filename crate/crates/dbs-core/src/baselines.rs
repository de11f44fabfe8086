//! Baseline matchers: a naive scanner that evaluates the matching
//! definition directly, and a bit-parallel BNDM variant for degenerate
//! letters. The naive scanner is the ground truth the other engines are
//! checked against.

use crate::alphabet::{DegenerateString, Symbol};
use crate::error::{Error, Result};

fn check_inputs(p: &DegenerateString, t: &DegenerateString) -> Result<()> {
    if p.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if p.alphabet().sigma() != t.alphabet().sigma() {
        return Err(Error::AlphabetMismatch {
            pattern: p.alphabet().sigma(),
            text: t.alphabet().sigma(),
        });
    }
    Ok(())
}

/// Checks every alignment positionwise: position `j` (1-based) matches iff
/// `p[i]` intersects `t[i + j - 1]` for all `i`. O(mn) worst case.
pub fn naive_match(p: &DegenerateString, t: &DegenerateString) -> Result<Vec<usize>> {
    check_inputs(p, t)?;
    let ps = p.symbols();
    let ts = t.symbols();
    if ps.len() > ts.len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for j in 0..=ts.len() - ps.len() {
        if ps.iter().zip(&ts[j..]).all(|(a, b)| a.intersects(*b)) {
            out.push(j + 1);
        }
    }
    Ok(out)
}

/// Per-base-letter bit masks for BNDM, reverse-pattern convention: bit `i`
/// covers pattern position `m - i`, so bit `m - 1` marks the pattern start.
/// Text symbols transition with the or of their base letters' masks,
/// precomputed per mask value.
#[derive(Debug)]
pub struct BitMaskTable {
    transitions: Vec<u64>,
    m: usize,
}

impl BitMaskTable {
    /// Builds the table for `p`; patterns longer than the 64-bit word are
    /// not representable.
    pub fn new(p: &DegenerateString) -> Result<Self> {
        let m = p.len();
        if m == 0 {
            return Err(Error::EmptyPattern);
        }
        if m > 64 {
            return Err(Error::PatternTooLong(m));
        }
        let sigma = p.alphabet().sigma() as usize;
        let mut base_masks = vec![0u64; sigma];
        for (i, sym) in p.symbols().iter().enumerate() {
            let bit = 1u64 << (m - 1 - i);
            for b in sym.bases() {
                base_masks[b as usize] |= bit;
            }
        }
        // transitions[v] = OR of base_masks over the bits of v
        let mut transitions = vec![0u64; p.alphabet().symbol_values()];
        for v in 1..transitions.len() {
            let low = v.trailing_zeros() as usize;
            transitions[v] = base_masks[low] | transitions[v & (v - 1)];
        }
        Ok(BitMaskTable { transitions, m })
    }

    fn transition(&self, sym: Symbol) -> u64 {
        self.transitions[sym.mask() as usize]
    }
}

/// BNDM adapted to degenerate letters: window shifting with suffix-based
/// shifts driven by a [`BitMaskTable`]. Output is identical to
/// [`naive_match`]; patterns are limited to 64 symbols.
pub fn bndm_degenerate(p: &DegenerateString, t: &DegenerateString) -> Result<Vec<usize>> {
    check_inputs(p, t)?;
    let table = BitMaskTable::new(p)?;
    Ok(bndm_scan(&table, t.symbols()))
}

fn bndm_scan(table: &BitMaskTable, text: &[Symbol]) -> Vec<usize> {
    let m = table.m;
    let n = text.len();
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let top = 1u64 << (m - 1);

    let mut pos = 0usize; // window covers text[pos..pos + m]
    while pos + m <= n {
        let mut j = m; // next symbol to read: text[pos + j - 1]
        let mut last = m;
        let mut d = full;
        loop {
            d &= table.transition(text[pos + j - 1]);
            if d == 0 {
                break;
            }
            j -= 1;
            if d & top != 0 {
                if j > 0 {
                    // a pattern prefix ends here: remember it as the shift
                    last = j;
                } else {
                    out.push(pos + 1);
                    break;
                }
            }
            if j == 0 {
                break;
            }
            d <<= 1;
        }
        pos += last;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::BaseAlphabet;

    fn dna(s: &str) -> DegenerateString {
        DegenerateString::parse(s, BaseAlphabet::DNA).unwrap()
    }

    #[test]
    fn naive_matches_the_definition() {
        let t = dna("ACGACG");
        assert_eq!(naive_match(&dna("[AC][CG]"), &t).unwrap(), vec![1, 2, 4, 5]);
        assert_eq!(naive_match(&dna("ACG"), &t).unwrap(), vec![1, 4]);
    }

    #[test]
    fn naive_with_pattern_longer_than_text_is_empty() {
        let t = dna("ACG");
        assert!(naive_match(&dna("ACGT"), &t).unwrap().is_empty());
    }

    #[test]
    fn any_string_self_aligns() {
        for s in ["A", "ACGT", "NNRY", "GCAGCA"] {
            let t = dna(s);
            assert_eq!(naive_match(&t, &t).unwrap()[0], 1);
        }
    }

    #[test]
    fn naive_rejects_empty_pattern() {
        assert!(matches!(
            naive_match(&dna(""), &dna("ACG")),
            Err(Error::EmptyPattern)
        ));
    }

    #[test]
    fn bndm_equals_naive_on_examples() {
        let t = dna("ACGACG");
        assert_eq!(bndm_degenerate(&dna("[AC][CG]"), &t).unwrap(), vec![1, 2, 4, 5]);
        assert_eq!(bndm_degenerate(&dna("ACG"), &t).unwrap(), vec![1, 4]);
        assert_eq!(bndm_degenerate(&dna("T"), &t).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn bndm_on_all_n_text_matches_everywhere() {
        let t = dna(&"N".repeat(100));
        let p = dna("ACGT");
        assert_eq!(bndm_degenerate(&p, &t).unwrap(), (1..=97).collect::<Vec<_>>());
    }

    #[test]
    fn bndm_handles_overlapping_occurrences() {
        let t = dna("AAAAA");
        assert_eq!(bndm_degenerate(&dna("AA"), &t).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn bndm_at_the_word_limit() {
        let t = dna(&"A".repeat(80));
        let p = dna(&"A".repeat(64));
        assert_eq!(bndm_degenerate(&p, &t).unwrap(), (1..=17).collect::<Vec<_>>());
    }

    #[test]
    fn bndm_rejects_overlong_patterns() {
        let p = dna(&"A".repeat(65));
        assert!(matches!(
            bndm_degenerate(&p, &dna(&"A".repeat(100))),
            Err(Error::PatternTooLong(65))
        ));
    }

    #[test]
    fn single_symbol_pattern_scans_every_position() {
        let t = dna("ACGTRYAC");
        assert_eq!(bndm_degenerate(&dna("R"), &t).unwrap(), naive_match(&dna("R"), &t).unwrap());
    }

    #[test]
    fn reversal_mirrors_positions() {
        let t = dna("ACGTAGGACG");
        let p = dna("AC[GT]");
        let (n, m) = (t.len(), p.len());
        let rev = |s: &DegenerateString| {
            DegenerateString::new(
                s.symbols().iter().rev().copied().collect(),
                s.alphabet(),
            )
            .unwrap()
        };
        let forward = naive_match(&p, &t).unwrap();
        let mirrored: Vec<usize> = naive_match(&rev(&p), &rev(&t))
            .unwrap()
            .iter()
            .rev()
            .map(|&j| n - m + 2 - j)
            .collect();
        assert_eq!(forward, mirrored);
    }
}
