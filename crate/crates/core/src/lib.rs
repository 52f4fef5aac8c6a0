//! A run-length compressed full-text index (r-index) over collections of
//! genomic sequences.
//!
//! The index stores the BWT as runs together with suffix-array samples at
//! run boundaries, so it takes O(r) words where r is the number of BWT runs.
//! It supports counting the longest matching suffix of a read and locating
//! every occurrence of fully matching reads.
//!
//! ```
//! use rindex::{build_corpus, build_index, SequenceRecord};
//!
//! let records = vec![
//!     SequenceRecord::new("a", b"ACGTACGT"),
//!     SequenceRecord::new("b", b"TTACG"),
//! ];
//! let (corpus, catalog) = build_corpus(&records).unwrap();
//! let index = build_index(&corpus, catalog).unwrap();
//!
//! let count = index.count_longest_suffix(b"TACG").unwrap();
//! assert_eq!((count.matched_len, count.occurrences), (4, 2));
//! ```

pub mod align_out;
pub mod alphabet;
pub mod bits;
pub mod construct;
pub mod error;
pub mod format;
pub mod index;
pub mod rlbwt;
mod sais;
pub mod samples;
pub mod seq_io;

pub use align_out::{
    format_count_record, resolve, sam_header, sam_records, ResolvedHit, SamRecord, SamTag,
};
pub use construct::{build_index, build_index_with_sa, bwt_from_sa, suffix_array, Algorithm};
pub use error::{Error, Result};
pub use format::{deserialize_index, serialize_index, FORMAT_VERSION};
pub use index::{BwtRange, CountResult, Hit, Index};
pub use rlbwt::{run_length_encode, RunLengthBwt};
pub use samples::{sample_boundaries, SampledSuffixes};
pub use seq_io::{
    build_corpus, open_fasta, read_fasta, read_fastq, CatalogEntry, FastqReader, SequenceCatalog,
    SequenceRecord, TextCorpus,
};
