//! On-disk index format.
//!
//! An index with prefix `p` is stored as two files:
//!
//! * `p.ri`: magic `RUNIDX\0\0`, then little-endian `u64` fields: version,
//!   n, r, alphabet size, run-length width, sample width; r run-head bytes
//!   (symbol codes, `$ # A C G N T` = 0..=6); r run lengths; the run-start
//!   bit vector as ceil(n/64) `u64` words (bit i is bit i%64 of word i/64);
//!   the C array as `u64`; r run-start samples; r run-end samples.
//!
//!   Run lengths and samples are little-endian integers of the stated byte
//!   width (1 to 8), the smallest width that holds the largest value.
//! * `p.1.ri`: magic `RUNCAT\0\0`, version, entry count, then per entry the
//!   name length, name bytes (UTF-8), start offset and length.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::alphabet::SIGMA;
use crate::error::{Error, Result};
use crate::index::Index;
use crate::rlbwt::RunLengthBwt;
use crate::samples::SampledSuffixes;
use crate::seq_io::{CatalogEntry, SequenceCatalog};

pub const FORMAT_VERSION: u64 = 1;
pub const INDEX_MAGIC: [u8; 8] = *b"RUNIDX\0\0";
pub const CATALOG_MAGIC: [u8; 8] = *b"RUNCAT\0\0";

/// `prefix.ri`
pub fn index_path(prefix: &Path) -> PathBuf {
    with_suffix(prefix, ".ri")
}

/// `prefix.1.ri`
pub fn catalog_path(prefix: &Path) -> PathBuf {
    with_suffix(prefix, ".1.ri")
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(prefix.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

/// Writes `prefix.ri` and `prefix.1.ri`.
pub fn serialize_index(index: &Index, prefix: &Path) -> Result<()> {
    write_file(&index_path(prefix), &encode_index(index))?;
    write_file(&catalog_path(prefix), &encode_catalog(index.catalog()))
}

/// Loads an index written by [`serialize_index`].
pub fn deserialize_index(prefix: &Path) -> Result<Index> {
    let index_file = index_path(prefix);
    let catalog_file = catalog_path(prefix);
    let main = read_file(&index_file)?;
    let cat = read_file(&catalog_file)?;
    let (rlbwt, samples) = decode_index(&main)?;
    let catalog = decode_catalog(&cat)?;
    if let Some(last) = catalog.entries().last() {
        // The separator after the last entry and the terminator must fit.
        if last.start + last.length + 2 > rlbwt.len() {
            return Err(Error::CorruptIndex(format!(
                "catalog extends past the indexed text ({} symbols)",
                rlbwt.len()
            )));
        }
    }
    Ok(Index::from_parts(rlbwt, samples, catalog))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let wrap = |source| Error::File {
        path: path.to_path_buf(),
        source,
    };
    let mut out = BufWriter::new(File::create(path).map_err(wrap)?);
    out.write_all(bytes).map_err(wrap)?;
    out.flush().map_err(wrap)
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })
}

fn put_u64(buf: &mut Vec<u8>, v: u64) {
    buf.extend_from_slice(&v.to_le_bytes());
}

/// Bytes needed to store `max` (at least 1).
fn byte_width(max: usize) -> usize {
    let bits = usize::BITS - max.leading_zeros();
    (bits as usize).div_ceil(8).max(1)
}

fn put_uint(buf: &mut Vec<u8>, v: usize, width: usize) {
    buf.extend_from_slice(&(v as u64).to_le_bytes()[..width]);
}

pub fn encode_index(index: &Index) -> Vec<u8> {
    let rl = index.rlbwt();
    let samples = index.samples();
    let (n, r) = (rl.len(), rl.runs());
    let length_width = byte_width(rl.run_lengths().iter().copied().max().unwrap_or(0));
    let sample_width = byte_width(n.saturating_sub(1));
    let mut buf = Vec::with_capacity(
        56 + r * (1 + length_width + 2 * sample_width) + n.div_ceil(64) * 8 + SIGMA * 8,
    );
    buf.extend_from_slice(&INDEX_MAGIC);
    for v in [
        FORMAT_VERSION as usize,
        n,
        r,
        SIGMA,
        length_width,
        sample_width,
    ] {
        put_u64(&mut buf, v as u64);
    }
    buf.extend_from_slice(rl.run_heads());
    for &len in rl.run_lengths() {
        put_uint(&mut buf, len, length_width);
    }
    for &w in rl.run_start_marks().words() {
        put_u64(&mut buf, w);
    }
    for &c in rl.less() {
        put_u64(&mut buf, c as u64);
    }
    for &s in samples.starts().iter().chain(samples.ends()) {
        put_uint(&mut buf, s, sample_width);
    }
    buf
}

pub fn encode_catalog(catalog: &SequenceCatalog) -> Vec<u8> {
    let mut buf = Vec::new();
    buf.extend_from_slice(&CATALOG_MAGIC);
    put_u64(&mut buf, FORMAT_VERSION);
    put_u64(&mut buf, catalog.len() as u64);
    for e in catalog.entries() {
        put_u64(&mut buf, e.name.len() as u64);
        buf.extend_from_slice(e.name.as_bytes());
        put_u64(&mut buf, e.start as u64);
        put_u64(&mut buf, e.length as u64);
    }
    buf
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(len)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::CorruptIndex("file is truncated".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?)
            .map_err(|_| Error::CorruptIndex("value does not fit in memory".into()))
    }

    /// `count` u64 values, bounds-checked before allocating.
    fn usizes(&mut self, count: usize) -> Result<Vec<usize>> {
        self.uints(count, 8)
    }

    /// `count` little-endian integers of `width` bytes each.
    fn uints(&mut self, count: usize, width: usize) -> Result<Vec<usize>> {
        let bytes = self.take(
            count
                .checked_mul(width)
                .ok_or_else(|| Error::CorruptIndex("field length overflows".into()))?,
        )?;
        bytes
            .chunks_exact(width)
            .map(|c| {
                let mut word = [0u8; 8];
                word[..width].copy_from_slice(c);
                usize::try_from(u64::from_le_bytes(word))
                    .map_err(|_| Error::CorruptIndex("value does not fit in memory".into()))
            })
            .collect()
    }

    fn header(&mut self, magic: &[u8; 8]) -> Result<()> {
        if self
            .take(8)
            .map_err(|_| Error::CorruptIndex("bad magic".into()))?
            != magic
        {
            return Err(Error::CorruptIndex("bad magic".into()));
        }
        match self.u64()? {
            FORMAT_VERSION => Ok(()),
            v => Err(Error::UnsupportedVersion(v)),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.bytes.len() {
            return Err(Error::CorruptIndex(format!(
                "{} trailing bytes",
                self.bytes.len() - self.pos
            )));
        }
        Ok(())
    }
}

pub fn decode_index(bytes: &[u8]) -> Result<(RunLengthBwt, SampledSuffixes)> {
    let corrupt = |msg: &str| Error::CorruptIndex(msg.to_string());
    let mut cur = Cursor { bytes, pos: 0 };
    cur.header(&INDEX_MAGIC)?;
    let n = cur.usize()?;
    let r = cur.usize()?;
    let sigma = cur.usize()?;
    let length_width = cur.usize()?;
    let sample_width = cur.usize()?;
    if sigma != SIGMA {
        return Err(corrupt("unexpected alphabet size"));
    }
    if r == 0 || r > n {
        return Err(corrupt("run count out of range"));
    }
    if !(1..=8).contains(&length_width) || !(1..=8).contains(&sample_width) {
        return Err(corrupt("integer width out of range"));
    }
    let heads = cur.take(r)?.to_vec();
    let lengths = cur.uints(r, length_width)?;
    let marks = cur.usizes(n.div_ceil(64))?;
    let less = cur.usizes(SIGMA)?;
    let starts = cur.uints(r, sample_width)?;
    let ends = cur.uints(r, sample_width)?;
    cur.finish()?;

    let rlbwt =
        RunLengthBwt::from_runs(heads, lengths).map_err(|e| Error::CorruptIndex(e.to_string()))?;
    if rlbwt.len() != n {
        return Err(corrupt("run lengths do not sum to n"));
    }
    if rlbwt
        .run_start_marks()
        .words()
        .iter()
        .zip(&marks)
        .any(|(a, &b)| *a != b as u64)
    {
        return Err(corrupt("run-start bit vector disagrees with run lengths"));
    }
    if rlbwt.less()[..] != less[..] {
        return Err(corrupt("C array disagrees with run lengths"));
    }
    if starts.iter().chain(&ends).any(|&s| s >= n) {
        return Err(corrupt("suffix-array sample out of range"));
    }
    let samples = SampledSuffixes::from_samples(starts, ends)
        .map_err(|e| Error::CorruptIndex(e.to_string()))?;
    Ok((rlbwt, samples))
}

pub fn decode_catalog(bytes: &[u8]) -> Result<SequenceCatalog> {
    let mut cur = Cursor { bytes, pos: 0 };
    cur.header(&CATALOG_MAGIC)?;
    let count = cur.usize()?;
    let mut entries = Vec::new();
    for _ in 0..count {
        let name_len = cur.usize()?;
        let name = String::from_utf8(cur.take(name_len)?.to_vec())
            .map_err(|_| Error::CorruptIndex("sequence name is not UTF-8".into()))?;
        let start = cur.usize()?;
        let length = cur.usize()?;
        if length == 0 {
            return Err(Error::CorruptIndex(format!("empty sequence {name:?}")));
        }
        entries.push(CatalogEntry {
            name,
            start,
            length,
        });
    }
    cur.finish()?;
    SequenceCatalog::from_entries(entries).map_err(|e| Error::CorruptIndex(e.to_string()))
}
