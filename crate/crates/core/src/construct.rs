//! Index construction: suffix array, BWT, runs and samples.

use std::str::FromStr;

use crate::alphabet::{SIGMA, TERMINATOR};
use crate::error::{Error, Result};
use crate::index::Index;
use crate::rlbwt::{run_length_encode, RunLengthBwt};
use crate::sais;
use crate::samples::sample_boundaries;
use crate::seq_io::{SequenceCatalog, TextCorpus};

/// Construction algorithms accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Induced suffix sorting.
    Sais,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sais" => Ok(Algorithm::Sais),
            other => Err(Error::UnsupportedAlgorithm(other.to_string())),
        }
    }
}

/// Suffix array of the corpus text.
pub fn suffix_array(corpus: &TextCorpus) -> Result<Vec<usize>> {
    corpus.check_terminator()?;
    Ok(sais::suffix_array(corpus.codes(), SIGMA))
}

/// `bwt[i] = text[sa[i] - 1]`, or the terminator where `sa[i] = 0`.
pub fn bwt_from_sa(corpus: &TextCorpus, sa: &[usize]) -> Result<Vec<u8>> {
    let text = corpus.codes();
    if sa.len() != text.len() {
        return Err(Error::Inconsistent(format!(
            "suffix array has {} entries for a text of length {}",
            sa.len(),
            text.len()
        )));
    }
    Ok(sa
        .iter()
        .map(|&p| if p == 0 { TERMINATOR } else { text[p - 1] })
        .collect())
}

/// Runs the whole pipeline. The suffix array and plain BWT are dropped.
pub fn build_index(corpus: &TextCorpus, catalog: SequenceCatalog) -> Result<Index> {
    let (index, _sa) = build_index_with_sa(corpus, catalog)?;
    Ok(index)
}

/// Like [`build_index`], but also hands back the full suffix array.
pub fn build_index_with_sa(
    corpus: &TextCorpus,
    catalog: SequenceCatalog,
) -> Result<(Index, Vec<usize>)> {
    let sa = suffix_array(corpus)?;
    let rlbwt: RunLengthBwt = run_length_encode(&bwt_from_sa(corpus, &sa)?)?;
    let samples = sample_boundaries(&sa, &rlbwt)?;
    Ok((Index::from_parts(rlbwt, samples, catalog), sa))
}
