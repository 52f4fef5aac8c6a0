use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors produced while parsing input, building, loading or querying an index.
#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed FASTA: {0}")]
    MalformedFasta(String),

    #[error("malformed FASTQ: {0}")]
    MalformedFastq(String),

    #[error("quality length mismatch in read {name}: {bases} bases, {quality} quality values")]
    QualityLengthMismatch {
        name: String,
        bases: usize,
        quality: usize,
    },

    #[error("empty sequence for record {0}")]
    EmptySequence(String),

    #[error("no sequences to index")]
    EmptyInput,

    #[error("text must end with a unique terminator")]
    MissingTerminator,

    #[error("symbol {0:?} is outside the index alphabet")]
    InvalidSymbol(char),

    #[error("empty pattern")]
    EmptyPattern,

    #[error("row {row} out of range for index of length {len}")]
    RowOutOfRange { row: usize, len: usize },

    #[error("suffix-array value {0} belongs to the first BWT row and has no predecessor")]
    NoPredecessor(usize),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("offset {0} does not lie within a single indexed sequence")]
    UnresolvableOffset(usize),

    #[error("corrupt index: {0}")]
    CorruptIndex(String),

    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u64),

    #[error("unsupported construction algorithm: {0}")]
    UnsupportedAlgorithm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
