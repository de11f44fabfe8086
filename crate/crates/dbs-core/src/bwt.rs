//! BWT index over a sentinel-extended degenerate text: last column, symbol
//! counts, rank checkpoints and a sampled suffix array for locating.
//!
//! The text `t` of length `n` is extended with a unique sentinel (mask 0,
//! written `$`), so the sorted-rotation matrix equals the sorted-suffix
//! order and has `n + 1` rows. Rows and text positions are 1-based in the
//! public interface.

use crate::alphabet::{BaseAlphabet, DegenerateString, Symbol};
use crate::error::{Error, Result};
use crate::sais;
use crate::search::Interval;

/// Default suffix-array sampling rate: locate costs at most this many
/// LF-steps per occurrence.
pub const DEFAULT_SAMPLE_RATE: u32 = 32;

/// Rank checkpoint spacing over the last column.
const CHECKPOINT_INTERVAL: usize = 64;

/// The suffix array of the sentinel-extended text: a permutation of the
/// 1-based positions `1..=n+1`, in increasing suffix order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArray {
    positions: Vec<u32>,
}

impl SuffixArray {
    /// 1-based text positions in suffix order; index 0 is row 1.
    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Sorts the suffixes of `t·$` under the symbol order (sentinel smallest,
/// then numeric mask order).
pub fn build_suffix_array(t: &DegenerateString) -> Result<SuffixArray> {
    let bytes = sentinel_extended(t)?;
    let sa = sais::suffix_array(&bytes);
    Ok(SuffixArray {
        positions: sa.into_iter().map(|p| p + 1).collect(),
    })
}

fn sentinel_extended(t: &DegenerateString) -> Result<Vec<u8>> {
    if t.is_empty() {
        return Err(Error::EmptyText);
    }
    // Rows must fit u32 for the checkpoint counters.
    if t.len() as u64 + 1 > u32::MAX as u64 {
        return Err(Error::TextTooLarge(t.len()));
    }
    let mut bytes: Vec<u8> = t.symbols().iter().map(|s| s.mask()).collect();
    bytes.push(0);
    Ok(bytes)
}

/// An immutable BWT index: safe to share across threads; queries need no
/// synchronization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BwtIndex {
    pub(crate) alphabet: BaseAlphabet,
    /// Original text length, without the sentinel.
    pub(crate) n: usize,
    /// 1-based row of `t·$` in the sorted rotation matrix.
    pub(crate) h: usize,
    /// Last column, one mask per row; exactly one sentinel (0).
    pub(crate) l: Vec<u8>,
    /// `c[m]` counts the positions of `t·$` holding a symbol smaller than
    /// `m`; indexed `0..=2^sigma`, so `c[2^sigma] = n + 1`.
    pub(crate) c: Vec<u64>,
    /// Flattened `[block][symbol]` counts of each symbol in the first
    /// `block * CHECKPOINT_INTERVAL` rows of `l`.
    pub(crate) checkpoints: Vec<u32>,
    pub(crate) sample_rate: u32,
    /// Rows whose text position is ≡ 1 (mod sample_rate), ascending.
    pub(crate) sample_rows: Vec<u64>,
    pub(crate) sample_positions: Vec<u64>,
    /// Non-sentinel masks that occur in the text, ascending.
    pub(crate) occurring: Vec<u8>,
}

impl BwtIndex {
    /// Builds the index with the default suffix-array sampling rate.
    pub fn build(t: &DegenerateString) -> Result<Self> {
        Self::build_with_rate(t, DEFAULT_SAMPLE_RATE)
    }

    pub fn build_with_rate(t: &DegenerateString, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::CorruptIndex("sample rate must be positive"));
        }
        let bytes = sentinel_extended(t)?;
        let sa = sais::suffix_array(&bytes);
        let rows = bytes.len();
        let n = rows - 1;

        let mut l = vec![0u8; rows];
        let mut h = 0usize;
        for (r, &p) in sa.iter().enumerate() {
            let p = p as usize;
            l[r] = if p == 0 { bytes[n] } else { bytes[p - 1] };
            if p == 0 {
                h = r + 1;
            }
        }

        let alphabet = t.alphabet();
        let symbol_values = alphabet.symbol_values();
        let mut counts = vec![0u64; symbol_values];
        for &b in &bytes {
            counts[b as usize] += 1;
        }
        let mut c = vec![0u64; symbol_values + 1];
        for m in 0..symbol_values {
            c[m + 1] = c[m] + counts[m];
        }
        let occurring: Vec<u8> = (1..symbol_values)
            .filter(|&m| counts[m] > 0)
            .map(|m| m as u8)
            .collect();

        let checkpoints = build_checkpoints(&l, symbol_values);

        let mut sample_rows = Vec::with_capacity(rows / sample_rate as usize + 1);
        let mut sample_positions = Vec::with_capacity(sample_rows.capacity());
        for (r, &p) in sa.iter().enumerate() {
            if (p as u64).is_multiple_of(sample_rate as u64) {
                sample_rows.push(r as u64 + 1);
                sample_positions.push(p as u64 + 1);
            }
        }

        Ok(BwtIndex {
            alphabet,
            n,
            h,
            l,
            c,
            checkpoints,
            sample_rate,
            sample_rows,
            sample_positions,
            occurring,
        })
    }

    pub fn alphabet(&self) -> BaseAlphabet {
        self.alphabet
    }

    /// Original text length (sentinel excluded).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows of the sorted rotation matrix: `n + 1`.
    pub fn rows(&self) -> usize {
        self.n + 1
    }

    /// 1-based row of the original string in the sorted matrix.
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    /// Last-column masks, row `r` at slot `r - 1`.
    pub fn last_column(&self) -> &[u8] {
        &self.l
    }

    /// The cumulative count array; `c()[m]` counts symbols smaller than `m`.
    pub fn c_array(&self) -> &[u64] {
        &self.c
    }

    /// Occurrences of `symbol` in the sentinel-extended text.
    pub fn symbol_count(&self, symbol: Symbol) -> u64 {
        let m = symbol.mask() as usize;
        self.c[m + 1] - self.c[m]
    }

    /// Non-sentinel masks occurring in the text, ascending.
    pub fn occurring_symbols(&self) -> &[u8] {
        &self.occurring
    }

    /// Occurrences of `symbol` among the first `prefix_len` rows of the last
    /// column. `prefix_len` ranges over `0..=n+1`; `rank(c, 0) = 0`.
    pub fn rank(&self, symbol: Symbol, prefix_len: usize) -> usize {
        assert!(prefix_len <= self.rows(), "rank prefix out of range");
        let block = prefix_len / CHECKPOINT_INTERVAL;
        let mut count =
            self.checkpoints[block * self.alphabet.symbol_values() + symbol.mask() as usize]
                as usize;
        let mask = symbol.mask();
        for &b in &self.l[block * CHECKPOINT_INTERVAL..prefix_len] {
            if b == mask {
                count += 1;
            }
        }
        count
    }

    /// Last-to-first mapping: the row of the rotation one position to the
    /// left. A permutation of `1..=n+1`.
    pub fn lf(&self, row: usize) -> usize {
        debug_assert!(row >= 1 && row <= self.rows());
        let symbol = Symbol::from_mask_unchecked(self.l[row - 1]);
        self.c[symbol.mask() as usize] as usize + self.rank(symbol, row)
    }

    /// Text position (1-based) of `row`, via LF-steps to the nearest sample.
    pub fn resolve_row(&self, row: usize) -> usize {
        debug_assert!(row >= 1 && row <= self.rows());
        let mut r = row;
        let mut steps = 0usize;
        loop {
            if let Ok(k) = self.sample_rows.binary_search(&(r as u64)) {
                return self.sample_positions[k] as usize + steps;
            }
            r = self.lf(r);
            steps += 1;
        }
    }

    /// Text positions of the rows in `interval`, sorted ascending.
    pub fn locate(&self, interval: Interval) -> Result<Vec<usize>> {
        if interval.start() < 1 || interval.end() > self.rows() {
            return Err(Error::IntervalOutOfRange {
                start: interval.start(),
                end: interval.end(),
                rows: self.rows(),
            });
        }
        let mut positions: Vec<usize> = (interval.start()..=interval.end())
            .map(|r| self.resolve_row(r))
            .collect();
        positions.sort_unstable();
        Ok(positions)
    }

    /// Reconstructs the original text, a round-trip self-check.
    pub fn text(&self) -> DegenerateString {
        let mut out = Vec::with_capacity(self.rows());
        let mut row = self.h;
        for _ in 0..self.rows() {
            out.push(self.l[row - 1]);
            row = self.lf(row);
        }
        out.reverse();
        let sentinel = out.pop();
        debug_assert_eq!(sentinel, Some(0));
        DegenerateString::from_masks(out, self.alphabet)
            .expect("index invariant: text masks are valid")
    }
}

pub(crate) fn build_checkpoints(l: &[u8], symbol_values: usize) -> Vec<u32> {
    let blocks = l.len() / CHECKPOINT_INTERVAL + 1;
    let mut checkpoints = vec![0u32; blocks * symbol_values];
    let mut running = vec![0u32; symbol_values];
    for (i, &b) in l.iter().enumerate() {
        if i > 0 && i.is_multiple_of(CHECKPOINT_INTERVAL) {
            let block = i / CHECKPOINT_INTERVAL;
            checkpoints[block * symbol_values..(block + 1) * symbol_values]
                .copy_from_slice(&running);
        }
        running[b as usize] += 1;
    }
    // Blocks at or past the end of l keep the final totals.
    for block in l.len().div_ceil(CHECKPOINT_INTERVAL)..blocks {
        checkpoints[block * symbol_values..(block + 1) * symbol_values].copy_from_slice(&running);
    }
    checkpoints
}

/// Builds the index; alias for [`BwtIndex::build`] mirroring the transform
/// name.
pub fn bwt_build(t: &DegenerateString) -> Result<BwtIndex> {
    BwtIndex::build(t)
}

/// Inverts a `(L, h)` pair back to the original text via the last-first
/// mapping. Rejects inputs with no (or several) sentinels, an out-of-range
/// `h`, or a row `h` that does not precede the sentinel.
pub fn inverse_bwt(l: &[Symbol], h: usize, alphabet: BaseAlphabet) -> Result<DegenerateString> {
    let rows = l.len();
    if rows < 2 {
        return Err(Error::EmptyText);
    }
    if h < 1 || h > rows {
        return Err(Error::MalformedBwt("row index h out of range"));
    }
    let sentinels = l.iter().filter(|s| s.is_sentinel()).count();
    if sentinels != 1 {
        return Err(Error::MalformedBwt("expected exactly one sentinel"));
    }
    if !l[h - 1].is_sentinel() {
        return Err(Error::MalformedBwt("row h must wrap to the sentinel"));
    }
    for s in l {
        if !s.is_sentinel() && !alphabet.contains_mask(s.mask()) {
            return Err(Error::MalformedBwt("symbol mask out of alphabet range"));
        }
    }

    let symbol_values = alphabet.symbol_values();
    let mut counts = vec![0u64; symbol_values];
    for s in l {
        counts[s.mask() as usize] += 1;
    }
    let mut c = vec![0u64; symbol_values + 1];
    for m in 0..symbol_values {
        c[m + 1] = c[m] + counts[m];
    }

    // lf[r] in one pass: cumulative per-symbol occurrence counts.
    let mut seen = vec![0u64; symbol_values];
    let mut lf = vec![0usize; rows + 1];
    for (r, s) in l.iter().enumerate() {
        let m = s.mask() as usize;
        seen[m] += 1;
        lf[r + 1] = (c[m] + seen[m]) as usize;
    }

    let mut out = Vec::with_capacity(rows);
    let mut row = h;
    for _ in 0..rows {
        out.push(l[row - 1].mask());
        row = lf[row];
    }
    out.reverse();
    if out.pop() != Some(0) {
        return Err(Error::MalformedBwt("last-first walk did not close"));
    }
    if out.contains(&0) {
        return Err(Error::MalformedBwt("sentinel inside reconstructed text"));
    }
    DegenerateString::from_masks(out, alphabet)
}
