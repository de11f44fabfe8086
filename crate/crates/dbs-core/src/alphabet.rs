//! Base alphabet, degenerate symbols and degenerate strings.
//!
//! A degenerate string holds at each position a non-empty subset of the base
//! alphabet, encoded as a bitmask: bit `b` set means base letter `b` is in
//! the subset. Solid letters are the singleton subsets (powers of two). For
//! DNA the 15 valid masks correspond one-to-one to the IUPAC nucleotide
//! codes, with `A=1, C=2, G=4, T=8`.
//!
//! Mask 0 is reserved for the sentinel that index construction appends to the
//! text. It is smaller than every symbol and intersects nothing, so no match
//! can wrap around the text end.

use std::fmt;

use crate::error::{Error, Result};

/// The base alphabet: `sigma` totally ordered letters, at most 8 so that any
/// subset fits one byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseAlphabet {
    sigma: u8,
}

impl BaseAlphabet {
    /// The 4-letter DNA alphabet (A, C, G, T).
    pub const DNA: BaseAlphabet = BaseAlphabet { sigma: 4 };

    pub fn new(sigma: u8) -> Result<Self> {
        if sigma == 0 || sigma > 8 {
            return Err(Error::InvalidAlphabetSize(sigma));
        }
        Ok(BaseAlphabet { sigma })
    }

    pub fn sigma(&self) -> u8 {
        self.sigma
    }

    /// Largest valid symbol mask: all `sigma` bits set.
    pub fn max_mask(&self) -> u8 {
        if self.sigma == 8 {
            u8::MAX
        } else {
            (1u8 << self.sigma) - 1
        }
    }

    /// Number of distinct symbol values including the sentinel (2^sigma).
    pub fn symbol_values(&self) -> usize {
        1usize << self.sigma
    }

    pub fn contains_mask(&self, mask: u8) -> bool {
        mask >= 1 && mask <= self.max_mask()
    }
}

/// One position of a degenerate string: a non-empty subset of the base
/// alphabet as a bitmask, or the sentinel (mask 0).
///
/// The total order on symbols is the numeric order of masks, which puts the
/// sentinel below everything. `Ord` is derived from the mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    /// The sentinel: smaller than every symbol, intersects nothing.
    pub const SENTINEL: Symbol = Symbol(0);

    /// Wraps a mask after validating it against the alphabet.
    pub fn from_mask(mask: u8, alphabet: BaseAlphabet) -> Result<Self> {
        if !alphabet.contains_mask(mask) {
            return Err(Error::InvalidMask {
                mask,
                sigma: alphabet.sigma(),
            });
        }
        Ok(Symbol(mask))
    }

    /// Wraps a raw mask without validation. Mask 0 is the sentinel.
    pub fn from_mask_unchecked(mask: u8) -> Self {
        Symbol(mask)
    }

    pub fn mask(&self) -> u8 {
        self.0
    }

    pub fn is_sentinel(&self) -> bool {
        self.0 == 0
    }

    /// Solid symbols are singleton subsets: masks with exactly one bit set.
    pub fn is_solid(&self) -> bool {
        self.0.count_ones() == 1
    }

    /// Number of base letters in the subset.
    pub fn base_count(&self) -> u32 {
        self.0.count_ones()
    }

    /// Subset intersection test, a single bitwise and. The sentinel
    /// intersects nothing, including itself.
    pub fn intersects(&self, other: Symbol) -> bool {
        self.0 & other.0 != 0
    }

    /// Iterates the base letters (bit indices) in the subset, ascending.
    pub fn bases(&self) -> impl Iterator<Item = u8> + '_ {
        (0..8).filter(move |b| self.0 & (1 << b) != 0)
    }
}

/// Subset intersection test; see [`Symbol::intersects`].
pub fn intersects(a: Symbol, b: Symbol) -> bool {
    a.intersects(b)
}

const IUPAC_CHARS: [char; 16] = [
    '?', // mask 0 never decodes
    'A', 'C', 'M', 'G', 'R', 'S', 'V', 'T', 'W', 'Y', 'H', 'K', 'D', 'B', 'N',
];

/// Encodes one IUPAC nucleotide code as a symbol mask over A=1, C=2, G=4,
/// T=8. Case-insensitive; `U` is accepted as a synonym for `T`.
pub fn encode_iupac(ch: char) -> Result<Symbol> {
    let mask = match ch.to_ascii_uppercase() {
        'A' => 1,
        'C' => 2,
        'G' => 4,
        'T' | 'U' => 8,
        'R' => 1 | 4,
        'Y' => 2 | 8,
        'S' => 2 | 4,
        'W' => 1 | 8,
        'K' => 4 | 8,
        'M' => 1 | 2,
        'B' => 2 | 4 | 8,
        'D' => 1 | 4 | 8,
        'H' => 1 | 2 | 8,
        'V' => 1 | 2 | 4,
        'N' => 15,
        _ => return Err(Error::InvalidCharacter { ch, column: 0 }),
    };
    Ok(Symbol(mask))
}

/// Exact inverse of [`encode_iupac`] on the 15 valid DNA masks.
pub fn decode_iupac(s: Symbol) -> Result<char> {
    if s.0 == 0 || s.0 > 15 {
        return Err(Error::InvalidMask {
            mask: s.0,
            sigma: 4,
        });
    }
    Ok(IUPAC_CHARS[s.0 as usize])
}

/// True iff `u` is a degenerate prefix of `x`: `u` is no longer than `x` and
/// every position of `u` intersects the corresponding position of `x`.
pub fn is_degenerate_prefix(u: &[Symbol], x: &[Symbol]) -> bool {
    u.len() <= x.len() && u.iter().zip(x).all(|(a, b)| a.intersects(*b))
}

/// A sequence of degenerate symbols over a fixed base alphabet.
///
/// Positions reported by matchers are 1-based; in-memory access through
/// [`symbols`](Self::symbols) is an ordinary 0-based slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegenerateString {
    symbols: Vec<Symbol>,
    alphabet: BaseAlphabet,
}

impl DegenerateString {
    pub fn new(symbols: Vec<Symbol>, alphabet: BaseAlphabet) -> Result<Self> {
        for s in &symbols {
            if !alphabet.contains_mask(s.mask()) {
                return Err(Error::InvalidMask {
                    mask: s.mask(),
                    sigma: alphabet.sigma(),
                });
            }
        }
        Ok(DegenerateString { symbols, alphabet })
    }

    pub fn from_masks<I: IntoIterator<Item = u8>>(masks: I, alphabet: BaseAlphabet) -> Result<Self> {
        let symbols = masks
            .into_iter()
            .map(|m| Symbol::from_mask(m, alphabet))
            .collect::<Result<Vec<_>>>()?;
        Ok(DegenerateString { symbols, alphabet })
    }

    /// Parses an IUPAC DNA string (case-insensitive, `U` = `T`).
    pub fn from_iupac(text: &str) -> Result<Self> {
        Self::parse(text, BaseAlphabet::DNA)
    }

    /// Parses the text form of a degenerate string.
    ///
    /// For the DNA alphabet the input is IUPAC codes, with bracket sets such
    /// as `[ACG]` allowed as an explicit alternative (brackets may contain
    /// any IUPAC codes; their masks are or-ed). For other alphabet sizes the
    /// letters are the base digits `0..sigma-1` and bracket sets contain
    /// digits. Columns in errors are 1-based.
    pub fn parse(text: &str, alphabet: BaseAlphabet) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        let mut chars = text.chars().enumerate().peekable();
        while let Some((i, ch)) = chars.next() {
            let column = i + 1;
            match ch {
                c if c.is_whitespace() => continue,
                '[' => {
                    let mut mask = 0u8;
                    let mut closed = false;
                    for (j, inner) in chars.by_ref() {
                        if inner == ']' {
                            closed = true;
                            break;
                        }
                        mask |= Self::single_mask(inner, alphabet, j + 1)?;
                    }
                    if !closed {
                        return Err(Error::UnterminatedSet { column });
                    }
                    if mask == 0 {
                        return Err(Error::EmptySymbolSet { column });
                    }
                    symbols.push(Symbol(mask));
                }
                ']' => return Err(Error::InvalidCharacter { ch, column }),
                _ => symbols.push(Symbol(Self::single_mask(ch, alphabet, column)?)),
            }
        }
        Ok(DegenerateString { symbols, alphabet })
    }

    fn single_mask(ch: char, alphabet: BaseAlphabet, column: usize) -> Result<u8> {
        if alphabet.sigma() == 4 {
            match encode_iupac(ch) {
                Ok(s) => Ok(s.mask()),
                Err(_) => Err(Error::InvalidCharacter { ch, column }),
            }
        } else {
            match ch.to_digit(10) {
                Some(d) if (d as u8) < alphabet.sigma() => Ok(1u8 << d),
                _ => Err(Error::InvalidCharacter { ch, column }),
            }
        }
    }

    pub fn alphabet(&self) -> BaseAlphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Number of non-solid positions.
    pub fn degenerate_letter_count(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_solid()).count()
    }

    /// A string is conservative within `q` if it has at most `q` non-solid
    /// letters.
    pub fn is_conservative_within(&self, q: usize) -> bool {
        self.degenerate_letter_count() <= q
    }

    pub fn is_degenerate_prefix_of(&self, x: &DegenerateString) -> bool {
        is_degenerate_prefix(&self.symbols, &x.symbols)
    }
}

impl fmt::Display for DegenerateString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            if self.alphabet.sigma() == 4 {
                f.write_str(IUPAC_CHARS[s.mask() as usize].encode_utf8(&mut [0; 4]))?;
            } else if s.is_solid() {
                write!(f, "{}", s.mask().trailing_zeros())?;
            } else {
                f.write_str("[")?;
                for b in s.bases() {
                    write!(f, "{b}")?;
                }
                f.write_str("]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(mask: u8) -> Symbol {
        Symbol::from_mask_unchecked(mask)
    }

    #[test]
    fn intersects_is_bitwise_and() {
        // {A,G} vs {C}: disjoint
        assert!(!intersects(sym(5), sym(2)));
        // {A,G} vs {G}: shared base
        assert!(intersects(sym(5), sym(4)));
        // sentinel intersects nothing, not even N
        assert!(!intersects(Symbol::SENTINEL, sym(15)));
        assert!(!intersects(Symbol::SENTINEL, Symbol::SENTINEL));
    }

    #[test]
    fn iupac_solid_codes_are_powers_of_two() {
        assert_eq!(encode_iupac('A').unwrap().mask(), 1);
        assert_eq!(encode_iupac('C').unwrap().mask(), 2);
        assert_eq!(encode_iupac('G').unwrap().mask(), 4);
        assert_eq!(encode_iupac('T').unwrap().mask(), 8);
    }

    #[test]
    fn iupac_multi_base_codes_or_their_constituents() {
        assert_eq!(encode_iupac('N').unwrap().mask(), 15);
        assert_eq!(encode_iupac('R').unwrap().mask(), 5);
        assert_eq!(encode_iupac('r').unwrap().mask(), 5);
        assert_eq!(encode_iupac('U').unwrap().mask(), 8);
    }

    #[test]
    fn iupac_rejects_unknown_characters() {
        assert!(encode_iupac('X').is_err());
        assert!(encode_iupac('$').is_err());
    }

    #[test]
    fn decode_inverts_encode() {
        assert_eq!(decode_iupac(sym(1)).unwrap(), 'A');
        assert_eq!(decode_iupac(sym(15)).unwrap(), 'N');
        assert_eq!(decode_iupac(sym(5)).unwrap(), 'R');
        for mask in 1..=15u8 {
            let ch = decode_iupac(sym(mask)).unwrap();
            assert_eq!(encode_iupac(ch).unwrap().mask(), mask);
        }
        assert!(decode_iupac(Symbol::SENTINEL).is_err());
        assert!(decode_iupac(sym(16)).is_err());
    }

    #[test]
    fn degenerate_prefix_examples() {
        let x: Vec<Symbol> = [1, 2, 4].iter().map(|&m| sym(m)).collect();
        let u: Vec<Symbol> = [5, 2].iter().map(|&m| sym(m)).collect();
        assert!(is_degenerate_prefix(&u, &x));
        assert!(!is_degenerate_prefix(&[sym(8)], &x));
        let too_long: Vec<Symbol> = [1, 2, 4, 8].iter().map(|&m| sym(m)).collect();
        assert!(!is_degenerate_prefix(&too_long, &x));
        // empty prefix of anything
        assert!(is_degenerate_prefix(&[], &x));
    }

    #[test]
    fn solid_equal_length_prefix_is_equality() {
        let a = DegenerateString::from_iupac("ACGT").unwrap();
        let b = DegenerateString::from_iupac("ACGT").unwrap();
        let c = DegenerateString::from_iupac("ACGA").unwrap();
        assert!(is_degenerate_prefix(a.symbols(), b.symbols()));
        assert!(!is_degenerate_prefix(a.symbols(), c.symbols()));
    }

    #[test]
    fn symbol_order_is_numeric_with_sentinel_smallest() {
        assert!(Symbol::SENTINEL < sym(1));
        assert_eq!(sym(5).cmp(&sym(5)), std::cmp::Ordering::Equal);
        assert!(sym(3) < sym(12));
    }

    #[test]
    fn intersection_is_symmetric() {
        for a in 0..=15u8 {
            for b in 0..=15u8 {
                assert_eq!(intersects(sym(a), sym(b)), intersects(sym(b), sym(a)));
            }
        }
    }

    #[test]
    fn symbol_order_is_a_strict_total_order() {
        use std::cmp::Ordering;
        let all: Vec<Symbol> = (0..=15u8).map(sym).collect();
        for &a in &all {
            assert_eq!(a.cmp(&a), Ordering::Equal);
            for &b in &all {
                // trichotomy
                let ab = a.cmp(&b);
                assert_eq!(ab.reverse(), b.cmp(&a));
                for &c in &all {
                    // transitivity
                    if ab == Ordering::Less && b.cmp(&c) == Ordering::Less {
                        assert_eq!(a.cmp(&c), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn alphabet_bounds() {
        assert!(BaseAlphabet::new(0).is_err());
        assert!(BaseAlphabet::new(9).is_err());
        assert_eq!(BaseAlphabet::new(8).unwrap().max_mask(), 255);
        assert_eq!(BaseAlphabet::DNA.max_mask(), 15);
        assert_eq!(BaseAlphabet::DNA.symbol_values(), 16);
    }

    #[test]
    fn mask_validation_respects_sigma() {
        let two = BaseAlphabet::new(2).unwrap();
        assert!(Symbol::from_mask(3, two).is_ok());
        assert!(Symbol::from_mask(4, two).is_err());
        assert!(Symbol::from_mask(0, two).is_err());
    }

    #[test]
    fn parse_iupac_and_brackets() {
        let s = DegenerateString::parse("A[CG]t N", BaseAlphabet::DNA).unwrap();
        let masks: Vec<u8> = s.symbols().iter().map(|s| s.mask()).collect();
        assert_eq!(masks, vec![1, 6, 8, 15]);
        assert_eq!(s.to_string(), "ASTN");
    }

    #[test]
    fn parse_reports_column_of_bad_character() {
        match DegenerateString::parse("ACXG", BaseAlphabet::DNA) {
            Err(Error::InvalidCharacter { ch: 'X', column: 3 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        assert!(matches!(
            DegenerateString::parse("AC[GT", BaseAlphabet::DNA),
            Err(Error::UnterminatedSet { column: 3 })
        ));
        assert!(matches!(
            DegenerateString::parse("A[]C", BaseAlphabet::DNA),
            Err(Error::EmptySymbolSet { column: 2 })
        ));
        assert!(matches!(
            DegenerateString::parse("A]C", BaseAlphabet::DNA),
            Err(Error::InvalidCharacter { ch: ']', column: 2 })
        ));
    }

    #[test]
    fn parse_digit_form_for_non_dna_alphabets() {
        let two = BaseAlphabet::new(2).unwrap();
        let s = DegenerateString::parse("0[01]1", two).unwrap();
        let masks: Vec<u8> = s.symbols().iter().map(|s| s.mask()).collect();
        assert_eq!(masks, vec![1, 3, 2]);
        assert_eq!(s.to_string(), "0[01]1");
        assert!(DegenerateString::parse("2", two).is_err());
    }

    #[test]
    fn degenerate_letter_count_counts_non_solid() {
        let s = DegenerateString::from_iupac("ACGRNT").unwrap();
        assert_eq!(s.degenerate_letter_count(), 2);
        assert!(s.is_conservative_within(2));
        assert!(!s.is_conservative_within(1));
    }
}
