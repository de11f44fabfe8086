//! Exact pattern matching in degenerate strings.
//!
//! A degenerate (indeterminate) string holds at each position a non-empty
//! subset of the base alphabet — IUPAC codes, for DNA. This crate indexes
//! such a text with a Burrows-Wheeler transform and answers degenerate
//! pattern queries by backward search, where each step may split a row
//! interval per intersecting symbol; interval sets stay sorted, disjoint
//! and coalesced. Two reference matchers, a naive scanner and a
//! bit-parallel BNDM variant, serve as independent baselines.
//!
//! ```
//! use dbs_core::{BwtIndex, DegenerateString, find_occurrences};
//!
//! let text = DegenerateString::from_iupac("ACGACG").unwrap();
//! let index = BwtIndex::build(&text).unwrap();
//! let pattern = DegenerateString::from_iupac("MS").unwrap(); // [AC][CG]
//! assert_eq!(find_occurrences(&pattern, &index).unwrap(), vec![1, 2, 4, 5]);
//! ```
//!
//! Positions and matrix rows are 1-based throughout the public interface.

pub mod alphabet;
pub mod baselines;
pub mod bwt;
pub mod error;
pub mod fasta;
pub mod gen;
mod index_io;
mod sais;
pub mod search;

pub use alphabet::{
    decode_iupac, encode_iupac, intersects, is_degenerate_prefix, BaseAlphabet, DegenerateString,
    Symbol,
};
pub use baselines::{bndm_degenerate, naive_match, BitMaskTable};
pub use bwt::{
    build_suffix_array, bwt_build, inverse_bwt, BwtIndex, SuffixArray, DEFAULT_SAMPLE_RATE,
};
pub use error::{Error, Result};
pub use fasta::{read_fasta, read_fasta_from, write_fasta, FastaRecord};
pub use gen::{generate, random_light_pattern, random_pattern, GenKind, GenSpec};
pub use search::{
    degenerate_backward_search, degenerate_backward_search_traced, find_occurrences, merge,
    one_step, one_step_unmerged, Interval, IntervalSet, StepState,
};
