use thiserror::Error;

/// Errors produced by index construction, parsing, searching and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet size must be between 1 and 8, got {0}")]
    InvalidAlphabetSize(u8),

    #[error("symbol mask {mask:#04x} out of range for a {sigma}-letter alphabet")]
    InvalidMask { mask: u8, sigma: u8 },

    #[error("invalid character '{ch}' at column {column}")]
    InvalidCharacter { ch: char, column: usize },

    #[error("empty symbol set at column {column}")]
    EmptySymbolSet { column: usize },

    #[error("unterminated '[' starting at column {column}")]
    UnterminatedSet { column: usize },

    #[error("empty text")]
    EmptyText,

    #[error("empty pattern")]
    EmptyPattern,

    #[error("text too large: {0} symbols exceeds the u32 row limit")]
    TextTooLarge(usize),

    #[error("pattern alphabet (sigma={pattern}) does not match text alphabet (sigma={text})")]
    AlphabetMismatch { pattern: u8, text: u8 },

    #[error("pattern length {0} exceeds the bit-parallel limit of 64; use the dbs or naive engine")]
    PatternTooLong(usize),

    #[error("row interval ({start}, {end}) out of range for {rows} rows")]
    IntervalOutOfRange {
        start: usize,
        end: usize,
        rows: usize,
    },

    #[error("malformed BWT input: {0}")]
    MalformedBwt(&'static str),

    #[error("not an index file (bad magic)")]
    BadMagic,

    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u16),

    #[error("index file truncated")]
    Truncated,

    #[error("index file checksum mismatch")]
    ChecksumMismatch,

    #[error("corrupt index file: {0}")]
    CorruptIndex(&'static str),

    #[error("record '{record}', line {line}, column {column}: invalid character '{ch}'")]
    FastaInvalidCharacter {
        record: String,
        line: usize,
        column: usize,
        ch: char,
    },

    #[error("record '{record}' (line {line}) has an empty sequence")]
    FastaEmptyRecord { record: String, line: usize },

    #[error("line {line}: sequence data before the first '>' header")]
    FastaMissingHeader { line: usize },

    #[error("FASTA output requires the 4-letter DNA alphabet, got sigma={0}")]
    FastaUnsupportedAlphabet(u8),

    #[error("conservative generator needs q <= n, got q={q}, n={n}")]
    InvalidGenSpec { q: usize, n: usize },

    #[error("degenerate fraction must lie in [0, 1], got {0}")]
    InvalidGenFraction(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
