//! Minimal multi-record FASTA reading and writing for IUPAC DNA sequences.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::alphabet::{encode_iupac, BaseAlphabet, DegenerateString, Symbol};
use crate::error::{Error, Result};

/// A named sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    pub name: String,
    pub sequence: DegenerateString,
}

/// Reads all records from a FASTA file. Sequence letters are IUPAC codes,
/// case-insensitive; whitespace inside sequence lines is skipped. Errors
/// carry the record name, 1-based line and column.
pub fn read_fasta<P: AsRef<Path>>(path: P) -> Result<Vec<FastaRecord>> {
    read_fasta_from(BufReader::new(File::open(path)?))
}

pub fn read_fasta_from<R: BufRead>(reader: R) -> Result<Vec<FastaRecord>> {
    let mut records: Vec<FastaRecord> = Vec::new();
    let mut current: Option<(String, usize, Vec<Symbol>)> = None;

    for (line_idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = line_idx + 1;
        if let Some(rest) = line.strip_prefix('>') {
            if let Some(record) = finish_record(current.take())? {
                records.push(record);
            }
            current = Some((rest.trim().to_string(), line_no, Vec::new()));
            continue;
        }
        let Some((name, _, symbols)) = current.as_mut() else {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::FastaMissingHeader { line: line_no });
        };
        for (col_idx, ch) in line.chars().enumerate() {
            if ch.is_whitespace() {
                continue;
            }
            match encode_iupac(ch) {
                Ok(sym) => symbols.push(sym),
                Err(_) => {
                    return Err(Error::FastaInvalidCharacter {
                        record: name.clone(),
                        line: line_no,
                        column: col_idx + 1,
                        ch,
                    })
                }
            }
        }
    }
    if let Some(record) = finish_record(current)? {
        records.push(record);
    }
    Ok(records)
}

fn finish_record(current: Option<(String, usize, Vec<Symbol>)>) -> Result<Option<FastaRecord>> {
    let Some((name, header_line, symbols)) = current else {
        return Ok(None);
    };
    if symbols.is_empty() {
        return Err(Error::FastaEmptyRecord {
            record: name,
            line: header_line,
        });
    }
    let sequence = DegenerateString::new(symbols, BaseAlphabet::DNA)
        .expect("IUPAC masks are always valid for the DNA alphabet");
    Ok(Some(FastaRecord { name, sequence }))
}

/// Writes records in FASTA form, wrapping sequences at 60 columns. Only the
/// DNA alphabet has a character form, so other alphabets are rejected.
pub fn write_fasta<W: Write>(mut writer: W, records: &[FastaRecord]) -> Result<()> {
    for record in records {
        if record.sequence.alphabet().sigma() != 4 {
            return Err(Error::FastaUnsupportedAlphabet(
                record.sequence.alphabet().sigma(),
            ));
        }
        writeln!(writer, ">{}", record.name)?;
        let text = record.sequence.to_string();
        for chunk in text.as_bytes().chunks(60) {
            writer.write_all(chunk)?;
            writer.write_all(b"\n")?;
        }
    }
    Ok(())
}
