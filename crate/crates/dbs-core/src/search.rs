//! Backward search for degenerate patterns over a [`BwtIndex`].
//!
//! Processing the pattern right to left, each step refines a set `H` of row
//! intervals of the sorted rotation matrix. Unlike classic backward search a
//! step may branch: every symbol `c` occurring in the text that intersects
//! the current pattern symbol maps each interval of `H` into the `c` block
//! of rows. The resulting intervals never overlap, and adjacent ones are
//! coalesced, which keeps `H` at no more than `n + 1` intervals.

use crate::alphabet::{DegenerateString, Symbol};
use crate::bwt::BwtIndex;
use crate::error::{Error, Result};

/// An inclusive range `(start, end)` of 1-based rows of the sorted rotation
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    start: usize,
    end: usize,
}

// An interval is never empty: start <= end by construction.
#[allow(clippy::len_without_is_empty)]
impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        assert!(start >= 1 && start <= end, "invalid interval ({start}, {end})");
        Interval { start, end }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    /// Number of rows covered.
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.start, self.end)
    }
}

/// A sorted sequence of pairwise disjoint row intervals. Sets produced by
/// [`merge`] are additionally non-adjacent: consecutive intervals always
/// leave a gap.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// The whole matrix: `{(1, rows)}`.
    pub fn full(rows: usize) -> Self {
        IntervalSet {
            intervals: vec![Interval::new(1, rows)],
        }
    }

    /// Wraps a list that is already sorted and pairwise disjoint.
    pub fn from_sorted_disjoint(intervals: Vec<Interval>) -> Self {
        debug_assert!(is_sorted_disjoint(&intervals), "intervals overlap or are unsorted");
        IntervalSet { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.intervals.iter()
    }

    /// Number of intervals.
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Total number of rows covered.
    pub fn covered_rows(&self) -> usize {
        self.intervals.iter().map(|iv| iv.len()).sum()
    }

    /// All covered rows, ascending. Intended for tests and small sets.
    pub fn rows(&self) -> Vec<usize> {
        self.intervals
            .iter()
            .flat_map(|iv| iv.start()..=iv.end())
            .collect()
    }

    /// True when no two consecutive intervals touch.
    pub fn is_non_adjacent(&self) -> bool {
        self.intervals
            .windows(2)
            .all(|w| w[0].end() + 1 < w[1].start())
    }
}

impl<'a> IntoIterator for &'a IntervalSet {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.intervals.iter()
    }
}

fn is_sorted_disjoint(intervals: &[Interval]) -> bool {
    intervals.windows(2).all(|w| w[0].end() < w[1].start())
}

/// Coalesces runs of adjacent intervals in a sorted, disjoint list.
/// Idempotent; the union of covered rows is preserved exactly. Overlapping
/// input is a programming error.
pub fn merge(intervals: Vec<Interval>) -> IntervalSet {
    debug_assert!(is_sorted_disjoint(&intervals), "merge input must be sorted and disjoint");
    let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        match out.last_mut() {
            Some(last) if last.end + 1 == iv.start => last.end = iv.end,
            _ => out.push(iv),
        }
    }
    let merged = IntervalSet { intervals: out };
    debug_assert!(merged.is_non_adjacent());
    merged
}

/// One backward-search step without the final coalescing: for every interval
/// `(i, j)` of `h` and every text symbol `c` intersecting `pk`, emits
///
/// ```text
/// r = C[c] + rank_c(L, i - 1) + 1,   s = C[c] + rank_c(L, j)
/// ```
///
/// whenever `r <= s`. The output is sorted and pairwise disjoint: distinct
/// symbols map into distinct `C`-blocks, and within one symbol the images of
/// disjoint source intervals stay disjoint. Exposed for instrumentation;
/// search itself uses [`one_step`].
pub fn one_step_unmerged(h: &IntervalSet, pk: Symbol, idx: &BwtIndex) -> Vec<Interval> {
    let mut out = Vec::new();
    let c_array = idx.c_array();
    // Only symbols actually occurring in the text can produce rows; the
    // sentinel never qualifies since it intersects nothing.
    for &mask in idx.occurring_symbols() {
        let c = Symbol::from_mask_unchecked(mask);
        if !c.intersects(pk) {
            continue;
        }
        let base = c_array[mask as usize] as usize;
        for iv in h {
            let r = base + idx.rank(c, iv.start() - 1) + 1;
            let s = base + idx.rank(c, iv.end());
            if r <= s {
                out.push(Interval::new(r, s));
            }
        }
    }
    debug_assert!(is_sorted_disjoint(&out), "one_step produced overlapping intervals");
    out
}

/// One backward-search step: [`one_step_unmerged`] followed by [`merge`].
pub fn one_step(h: &IntervalSet, pk: Symbol, idx: &BwtIndex) -> IntervalSet {
    merge(one_step_unmerged(h, pk, idx))
}

/// Per-step snapshot recorded by [`degenerate_backward_search_traced`].
#[derive(Debug, Clone)]
pub struct StepState {
    /// 1-based pattern position processed by this step (`m` down to `1`).
    pub k: usize,
    /// Intervals emitted before coalescing.
    pub emitted: usize,
    /// The set `H` after the step.
    pub state: IntervalSet,
}

fn check_pattern(p: &DegenerateString, idx: &BwtIndex) -> Result<()> {
    if p.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if p.alphabet().sigma() != idx.alphabet().sigma() {
        return Err(Error::AlphabetMismatch {
            pattern: p.alphabet().sigma(),
            text: idx.alphabet().sigma(),
        });
    }
    Ok(())
}

/// Backward search of a degenerate pattern over the index.
///
/// The result covers row `r` iff the pattern is a degenerate prefix of the
/// rotation at row `r`. Starts from the full matrix `{(1, n+1)}` and exits
/// as soon as `H` becomes empty. A pattern longer than the text has no
/// occurrences.
pub fn degenerate_backward_search(p: &DegenerateString, idx: &BwtIndex) -> Result<IntervalSet> {
    check_pattern(p, idx)?;
    if p.len() > idx.n() {
        return Ok(IntervalSet::empty());
    }
    let mut h = IntervalSet::full(idx.rows());
    for &pk in p.symbols().iter().rev() {
        h = one_step(&h, pk, idx);
        if h.is_empty() {
            break;
        }
        debug_assert!(h.len() <= idx.rows());
    }
    Ok(h)
}

/// [`degenerate_backward_search`] with per-step instrumentation. With
/// `use_merge` off the steps keep adjacency uncoalesced, which changes the
/// interval bookkeeping but never the covered rows.
pub fn degenerate_backward_search_traced(
    p: &DegenerateString,
    idx: &BwtIndex,
    use_merge: bool,
) -> Result<(IntervalSet, Vec<StepState>)> {
    check_pattern(p, idx)?;
    if p.len() > idx.n() {
        return Ok((IntervalSet::empty(), Vec::new()));
    }
    let m = p.len();
    let mut h = IntervalSet::full(idx.rows());
    let mut steps = Vec::with_capacity(m);
    for (k, &pk) in p.symbols().iter().enumerate().rev() {
        let emitted = one_step_unmerged(&h, pk, idx);
        let emitted_count = emitted.len();
        h = if use_merge {
            merge(emitted)
        } else {
            IntervalSet::from_sorted_disjoint(emitted)
        };
        steps.push(StepState {
            k: k + 1,
            emitted: emitted_count,
            state: h.clone(),
        });
        if h.is_empty() {
            break;
        }
    }
    Ok((h, steps))
}

/// All 1-based start positions of occurrences of `p` in the indexed text,
/// sorted ascending: the located rows of the backward-search result.
pub fn find_occurrences(p: &DegenerateString, idx: &BwtIndex) -> Result<Vec<usize>> {
    let h = degenerate_backward_search(p, idx)?;
    let mut positions = Vec::new();
    for iv in &h {
        positions.extend(idx.locate(*iv)?);
    }
    positions.sort_unstable();
    positions.dedup();
    debug_assert!(positions.iter().all(|&j| j + p.len() - 1 <= idx.n()));
    Ok(positions)
}
