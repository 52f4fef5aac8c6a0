//! FASTA/FASTQ input and assembly of the indexed text.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;

use crate::alphabet::{self, SEPARATOR, TERMINATOR};
use crate::error::{Error, Result};

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

/// A named, normalized sequence. Reads from FASTQ also carry their quality string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub name: String,
    pub bases: Vec<u8>,
    pub quality: Option<Vec<u8>>,
}

impl SequenceRecord {
    pub fn new(name: impl Into<String>, bases: &[u8]) -> Self {
        let mut bases = bases.to_vec();
        alphabet::normalize(&mut bases);
        SequenceRecord {
            name: name.into(),
            bases,
            quality: None,
        }
    }
}

/// Concatenated text the index is built over, stored as alphabet codes.
///
/// Layout: every sequence followed by one separator, then one terminator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextCorpus {
    text: Vec<u8>,
}

impl TextCorpus {
    /// Wraps an already encoded text. The terminator invariant is checked
    /// by the construction routines, not here.
    pub fn from_codes(text: Vec<u8>) -> Self {
        TextCorpus { text }
    }

    /// Encodes a printable text such as `"ACGT#GG#$"`.
    pub fn from_ascii(text: &[u8]) -> Result<Self> {
        let text = text
            .iter()
            .map(|&b| alphabet::encode(b).ok_or(Error::InvalidSymbol(b as char)))
            .collect::<Result<Vec<u8>>>()?;
        Ok(TextCorpus { text })
    }

    pub fn codes(&self) -> &[u8] {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn to_ascii(&self) -> Vec<u8> {
        self.text.iter().map(|&c| alphabet::decode(c)).collect()
    }

    /// Checks that the text ends with a terminator occurring nowhere else.
    pub fn check_terminator(&self) -> Result<()> {
        match self.text.split_last() {
            Some((&TERMINATOR, rest)) if !rest.contains(&TERMINATOR) => Ok(()),
            _ => Err(Error::MissingTerminator),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub start: usize,
    pub length: usize,
}

/// Maps global text offsets back to the sequences they came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SequenceCatalog {
    entries: Vec<CatalogEntry>,
}

impl SequenceCatalog {
    /// Entries must be sorted by start and non-overlapping.
    pub fn from_entries(entries: Vec<CatalogEntry>) -> Result<Self> {
        for pair in entries.windows(2) {
            if pair[0].start + pair[0].length >= pair[1].start {
                return Err(Error::Inconsistent(format!(
                    "catalog entries {:?} and {:?} overlap or are out of order",
                    pair[0].name, pair[1].name
                )));
            }
        }
        Ok(SequenceCatalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry whose span `[start, start + length)` contains `offset`.
    pub fn entry_at(&self, offset: usize) -> Option<&CatalogEntry> {
        let idx = self.entries.partition_point(|e| e.start <= offset);
        let entry = self.entries.get(idx.checked_sub(1)?)?;
        (offset < entry.start + entry.length).then_some(entry)
    }
}

/// Parses FASTA, optionally gzip-compressed.
pub fn read_fasta<R: Read>(stream: R, gzipped: bool) -> Result<Vec<SequenceRecord>> {
    if gzipped {
        parse_fasta(BufReader::new(MultiGzDecoder::new(stream)))
    } else {
        parse_fasta(BufReader::new(stream))
    }
}

/// Opens a FASTA file, detecting gzip compression from the magic bytes.
pub fn open_fasta(path: &Path) -> Result<Vec<SequenceRecord>> {
    let file_err = |source| Error::File {
        path: path.to_path_buf(),
        source,
    };
    let mut reader = BufReader::new(File::open(path).map_err(file_err)?);
    let gzipped = reader
        .fill_buf()
        .map_err(file_err)?
        .starts_with(&GZIP_MAGIC);
    read_fasta(reader, gzipped)
}

fn parse_fasta<R: BufRead>(mut reader: R) -> Result<Vec<SequenceRecord>> {
    let mut records: Vec<SequenceRecord> = Vec::new();
    let mut line = Vec::new();
    loop {
        line.clear();
        if reader.read_until(b'\n', &mut line)? == 0 {
            break;
        }
        let line = trim_line_end(&line);
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix(b">") {
            if let Some(prev) = records.last() {
                if prev.bases.is_empty() {
                    return Err(Error::EmptySequence(prev.name.clone()));
                }
            }
            records.push(SequenceRecord {
                name: header_name(header),
                bases: Vec::new(),
                quality: None,
            });
        } else {
            let Some(record) = records.last_mut() else {
                return Err(Error::MalformedFasta(
                    "first non-empty line does not start with '>'".into(),
                ));
            };
            record
                .bases
                .extend(line.iter().map(|&b| alphabet::normalize_base(b)));
        }
    }
    if let Some(last) = records.last() {
        if last.bases.is_empty() {
            return Err(Error::EmptySequence(last.name.clone()));
        }
    }
    Ok(records)
}

/// Streaming FASTQ reader yielding one record per four lines.
pub struct FastqReader<R> {
    reader: R,
    line: Vec<u8>,
    record_no: usize,
}

impl<R: BufRead> FastqReader<R> {
    pub fn new(reader: R) -> Self {
        FastqReader {
            reader,
            line: Vec::new(),
            record_no: 0,
        }
    }

    fn next_line(&mut self) -> Result<Option<Vec<u8>>> {
        self.line.clear();
        if self.reader.read_until(b'\n', &mut self.line)? == 0 {
            return Ok(None);
        }
        Ok(Some(trim_line_end(&self.line).to_vec()))
    }

    fn truncated(&self) -> Error {
        Error::MalformedFastq(format!(
            "record {} is truncated (line count not divisible by 4)",
            self.record_no
        ))
    }

    fn read_record(&mut self) -> Result<Option<SequenceRecord>> {
        let header = loop {
            match self.next_line()? {
                None => return Ok(None),
                Some(l) if l.is_empty() => continue,
                Some(l) => break l,
            }
        };
        self.record_no += 1;
        let Some(name) = header.strip_prefix(b"@") else {
            return Err(Error::MalformedFastq(format!(
                "record {} header does not start with '@'",
                self.record_no
            )));
        };
        let name = header_name(name);
        let mut bases = self.next_line()?.ok_or_else(|| self.truncated())?;
        let plus = self.next_line()?.ok_or_else(|| self.truncated())?;
        if !plus.starts_with(b"+") {
            return Err(Error::MalformedFastq(format!(
                "record {} ({name}) is missing its '+' line",
                self.record_no
            )));
        }
        let quality = self.next_line()?.ok_or_else(|| self.truncated())?;
        if bases.is_empty() {
            return Err(Error::EmptySequence(name));
        }
        if quality.len() != bases.len() {
            return Err(Error::QualityLengthMismatch {
                name,
                bases: bases.len(),
                quality: quality.len(),
            });
        }
        alphabet::normalize(&mut bases);
        Ok(Some(SequenceRecord {
            name,
            bases,
            quality: Some(quality),
        }))
    }
}

impl<R: BufRead> Iterator for FastqReader<R> {
    type Item = Result<SequenceRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        self.read_record().transpose()
    }
}

/// Parses a whole FASTQ stream.
pub fn read_fastq<R: Read>(stream: R) -> Result<Vec<SequenceRecord>> {
    FastqReader::new(BufReader::new(stream)).collect()
}

/// Concatenates records into the indexed text and records where each one starts.
pub fn build_corpus(records: &[SequenceRecord]) -> Result<(TextCorpus, SequenceCatalog)> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let total: usize = records.iter().map(|r| r.bases.len() + 1).sum::<usize>() + 1;
    let mut text = Vec::with_capacity(total);
    let mut entries = Vec::with_capacity(records.len());
    for record in records {
        if record.bases.is_empty() {
            return Err(Error::EmptySequence(record.name.clone()));
        }
        entries.push(CatalogEntry {
            name: record.name.clone(),
            start: text.len(),
            length: record.bases.len(),
        });
        for &b in &record.bases {
            text.push(alphabet::encode_base(alphabet::normalize_base(b))?);
        }
        text.push(SEPARATOR);
    }
    text.push(TERMINATOR);
    Ok((TextCorpus { text }, SequenceCatalog { entries }))
}

fn trim_line_end(line: &[u8]) -> &[u8] {
    let mut end = line.len();
    while end > 0 && matches!(line[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    &line[..end]
}

fn header_name(header: &[u8]) -> String {
    String::from_utf8_lossy(header).trim().to_string()
}
