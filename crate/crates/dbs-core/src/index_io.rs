//! Binary serialization of [`BwtIndex`].
//!
//! Format (all integers little-endian; the exact layout is also documented
//! in the repository README and pinned by golden files):
//!
//! ```text
//! magic        4 bytes   "DBSI"
//! version      u16       currently 1
//! sigma        u8        base alphabet size, 1..=8
//! n            u64       text length without the sentinel
//! h            u64       1-based row of the original string
//! c            (2^sigma + 1) x u64
//! L            nibble-packed when sigma == 4 (low nibble first),
//!              one byte per symbol otherwise; n + 1 symbols
//! checkpoints  ((n + 1) / 64 + 1) x 2^sigma x u32
//! rate         u32       suffix-array sample rate
//! count        u64       number of samples
//! samples      count x (u64 row, u64 position)
//! crc32        u32       CRC-32 (IEEE) of all preceding bytes
//! ```

use std::io::{Read, Write};

use crate::alphabet::BaseAlphabet;
use crate::bwt::BwtIndex;
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"DBSI";
const FORMAT_VERSION: u16 = 1;

impl BwtIndex {
    /// Serializes the index to its binary form.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        buf.push(self.alphabet.sigma());
        buf.extend_from_slice(&(self.n as u64).to_le_bytes());
        buf.extend_from_slice(&(self.h as u64).to_le_bytes());
        for &v in &self.c {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        if self.alphabet.sigma() == 4 {
            for pair in self.l.chunks(2) {
                let low = pair[0];
                let high = pair.get(1).copied().unwrap_or(0);
                buf.push(low | (high << 4));
            }
        } else {
            buf.extend_from_slice(&self.l);
        }
        for &v in &self.checkpoints {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        buf.extend_from_slice(&self.sample_rate.to_le_bytes());
        buf.extend_from_slice(&(self.sample_rows.len() as u64).to_le_bytes());
        for (&row, &pos) in self.sample_rows.iter().zip(&self.sample_positions) {
            buf.extend_from_slice(&row.to_le_bytes());
            buf.extend_from_slice(&pos.to_le_bytes());
        }
        let crc = crc32fast::hash(&buf);
        buf.extend_from_slice(&crc.to_le_bytes());
        buf
    }

    pub fn write_to<W: Write>(&self, mut writer: W) -> Result<()> {
        writer.write_all(&self.to_bytes())?;
        Ok(())
    }

    /// Parses an index from its binary form, verifying magic, version,
    /// length and checksum before touching the payload.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 4 || &bytes[..4] != MAGIC {
            return Err(Error::BadMagic);
        }
        // magic + version + sigma + n + h + crc
        if bytes.len() < 4 + 2 + 1 + 8 + 8 + 4 {
            return Err(Error::Truncated);
        }
        let version = u16::from_le_bytes([bytes[4], bytes[5]]);
        if version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let (payload, crc_bytes) = bytes.split_at(bytes.len() - 4);
        let stored = u32::from_le_bytes(crc_bytes.try_into().unwrap());
        if crc32fast::hash(payload) != stored {
            return Err(Error::ChecksumMismatch);
        }

        let mut cursor = Cursor::new(&payload[6..]);
        let sigma = cursor.take_u8()?;
        let alphabet =
            BaseAlphabet::new(sigma).map_err(|_| Error::CorruptIndex("invalid alphabet size"))?;
        let n = cursor.take_u64()? as usize;
        let h = cursor.take_u64()? as usize;
        if n == 0 {
            return Err(Error::CorruptIndex("empty text"));
        }
        let rows = n
            .checked_add(1)
            .filter(|&r| r as u64 <= u32::MAX as u64)
            .ok_or(Error::CorruptIndex("text length out of range"))?;
        if h < 1 || h > rows {
            return Err(Error::CorruptIndex("row index h out of range"));
        }

        let symbol_values = alphabet.symbol_values();
        let mut c = Vec::with_capacity(symbol_values + 1);
        for _ in 0..=symbol_values {
            c.push(cursor.take_u64()?);
        }
        if c[0] != 0 || c[symbol_values] != rows as u64 {
            return Err(Error::CorruptIndex("count array does not sum to n + 1"));
        }
        if c.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::CorruptIndex("count array is not monotone"));
        }

        let l = if sigma == 4 {
            let packed = cursor.take_slice(rows.div_ceil(2))?;
            let mut l = Vec::with_capacity(rows);
            for &b in packed {
                l.push(b & 0x0f);
                if l.len() < rows {
                    l.push(b >> 4);
                }
            }
            if rows % 2 == 1 && packed[packed.len() - 1] >> 4 != 0 {
                return Err(Error::CorruptIndex("nonzero padding nibble"));
            }
            l
        } else {
            cursor.take_slice(rows)?.to_vec()
        };
        let max_mask = alphabet.max_mask();
        if l.iter().filter(|&&b| b == 0).count() != 1 {
            return Err(Error::CorruptIndex("expected exactly one sentinel"));
        }
        if l.iter().any(|&b| b > max_mask) {
            return Err(Error::CorruptIndex("symbol mask out of alphabet range"));
        }
        if l[h - 1] != 0 {
            return Err(Error::CorruptIndex("row h must wrap to the sentinel"));
        }

        // Sizes below come from the header; slice before allocating so a
        // crafted length cannot balloon memory.
        let blocks = rows / 64 + 1;
        let checkpoint_bytes = cursor.take_slice(blocks * symbol_values * 4)?;
        let checkpoints: Vec<u32> = checkpoint_bytes
            .chunks_exact(4)
            .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
            .collect();
        if checkpoints != crate::bwt::build_checkpoints(&l, symbol_values) {
            return Err(Error::CorruptIndex("checkpoint block disagrees with L"));
        }

        let sample_rate = cursor.take_u32()?;
        if sample_rate == 0 {
            return Err(Error::CorruptIndex("sample rate must be positive"));
        }
        let count = cursor.take_u64()? as usize;
        if count > rows {
            return Err(Error::CorruptIndex("too many suffix-array samples"));
        }
        let sample_bytes = cursor.take_slice(count * 16)?;
        let mut sample_rows = Vec::with_capacity(count);
        let mut sample_positions = Vec::with_capacity(count);
        for pair in sample_bytes.chunks_exact(16) {
            sample_rows.push(u64::from_le_bytes(pair[..8].try_into().unwrap()));
            sample_positions.push(u64::from_le_bytes(pair[8..].try_into().unwrap()));
        }
        if !cursor.is_exhausted() {
            return Err(Error::CorruptIndex("trailing data after samples"));
        }
        if sample_rows.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::CorruptIndex("sample rows not strictly ascending"));
        }

        let mut counts = vec![0u64; symbol_values];
        for &b in &l {
            counts[b as usize] += 1;
        }
        for m in 0..symbol_values {
            if c[m + 1] - c[m] != counts[m] {
                return Err(Error::CorruptIndex("count array disagrees with L"));
            }
        }
        let occurring: Vec<u8> = (1..symbol_values)
            .filter(|&m| counts[m] > 0)
            .map(|m| m as u8)
            .collect();

        let idx = BwtIndex {
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
        };

        // Walk the last-first mapping once around from row h. A genuine BWT
        // closes a single cycle through all rows, and the walk yields every
        // row's text position, so the sample table can be checked exactly.
        // This keeps locate total on anything this function accepts.
        let mut row = idx.h;
        let mut pos = 1u64;
        let mut verified = 0usize;
        for step in 0..rows {
            if (pos - 1).is_multiple_of(sample_rate as u64) {
                match idx.sample_rows.binary_search(&(row as u64)) {
                    Ok(k) if idx.sample_positions[k] == pos => verified += 1,
                    _ => return Err(Error::CorruptIndex("sample table disagrees with L")),
                }
            }
            row = idx.lf(row);
            pos = if pos == 1 { rows as u64 } else { pos - 1 };
            if row == idx.h && step + 1 < rows {
                return Err(Error::CorruptIndex("last-first mapping is not a single cycle"));
            }
        }
        if verified != idx.sample_rows.len() {
            return Err(Error::CorruptIndex("sample table disagrees with L"));
        }

        Ok(idx)
    }

    /// Reads an index from a stream; see [`BwtIndex::from_bytes`].
    pub fn read_from<R: Read>(mut reader: R) -> Result<Self> {
        let mut bytes = Vec::new();
        reader.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn new(data: &'a [u8]) -> Self {
        Cursor { data, offset: 0 }
    }

    fn take_slice(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.offset.checked_add(len).ok_or(Error::Truncated)?;
        if end > self.data.len() {
            return Err(Error::Truncated);
        }
        let slice = &self.data[self.offset..end];
        self.offset = end;
        Ok(slice)
    }

    fn take_u8(&mut self) -> Result<u8> {
        Ok(self.take_slice(1)?[0])
    }

    fn take_u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take_slice(4)?.try_into().unwrap()))
    }

    fn take_u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take_slice(8)?.try_into().unwrap()))
    }

    fn is_exhausted(&self) -> bool {
        self.offset == self.data.len()
    }
}
