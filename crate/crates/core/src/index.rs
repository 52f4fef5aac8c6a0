//! Queries on a built index: rank, LF, backward search with toehold,
//! longest-suffix counting and phi-based locate.

use crate::alphabet;
use crate::error::{Error, Result};
use crate::rlbwt::RunLengthBwt;
use crate::samples::SampledSuffixes;
use crate::seq_io::SequenceCatalog;

/// Half-open interval of BWT rows, plus the SA value at row `hi - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BwtRange {
    pub lo: usize,
    pub hi: usize,
    pub toehold: Option<usize>,
}

impl BwtRange {
    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }
}

/// Longest suffix of a pattern found in the text and how often it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountResult {
    pub matched_len: usize,
    pub pattern_len: usize,
    pub occurrences: usize,
}

impl CountResult {
    pub fn is_full_match(&self) -> bool {
        self.matched_len == self.pattern_len && self.occurrences > 0
    }
}

/// Start of one occurrence of a pattern in the indexed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hit {
    pub global_offset: usize,
}

/// A loaded r-index: run-length BWT, run-boundary samples and the
/// sequence catalog. Immutable, so it can be shared between threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Index {
    rlbwt: RunLengthBwt,
    samples: SampledSuffixes,
    catalog: SequenceCatalog,
}

impl Index {
    pub fn from_parts(
        rlbwt: RunLengthBwt,
        samples: SampledSuffixes,
        catalog: SequenceCatalog,
    ) -> Self {
        Index {
            rlbwt,
            samples,
            catalog,
        }
    }

    /// Text length, separators and terminator included.
    pub fn n(&self) -> usize {
        self.rlbwt.len()
    }

    /// Number of BWT runs.
    pub fn r(&self) -> usize {
        self.rlbwt.runs()
    }

    pub fn rlbwt(&self) -> &RunLengthBwt {
        &self.rlbwt
    }

    pub fn samples(&self) -> &SampledSuffixes {
        &self.samples
    }

    pub fn catalog(&self) -> &SequenceCatalog {
        &self.catalog
    }

    /// Occurrences of `symbol` (printable, e.g. `b'A'` or `b'$'`) in `BWT[0, i)`.
    pub fn rank(&self, symbol: u8, i: usize) -> Result<usize> {
        let c = alphabet::encode(symbol).ok_or(Error::InvalidSymbol(symbol as char))?;
        if i > self.n() {
            return Err(Error::RowOutOfRange {
                row: i,
                len: self.n(),
            });
        }
        Ok(self.rlbwt.rank(c, i))
    }

    /// LF mapping: `C(BWT[i]) + rank(BWT[i], i)`.
    pub fn lf(&self, i: usize) -> Result<usize> {
        if i >= self.n() {
            return Err(Error::RowOutOfRange {
                row: i,
                len: self.n(),
            });
        }
        let c = self.rlbwt.get(i);
        Ok(self.rlbwt.less()[c as usize] + self.rlbwt.rank(c, i))
    }

    /// All rows; the toehold is SA[n-1], the end sample of the last run.
    pub fn full_range(&self) -> BwtRange {
        let last = self.r() - 1;
        BwtRange {
            lo: 0,
            hi: self.n(),
            toehold: Some(self.samples.end(last)),
        }
    }

    /// One backward-search step with a printable base symbol.
    pub fn backward_step(&self, range: BwtRange, symbol: u8) -> Result<BwtRange> {
        Ok(self.step(range, alphabet::encode_base(symbol)?))
    }

    fn step(&self, range: BwtRange, c: u8) -> BwtRange {
        let empty = BwtRange {
            lo: range.lo,
            hi: range.lo,
            toehold: None,
        };
        if range.is_empty() {
            return empty;
        }
        let base = self.rlbwt.less()[c as usize];
        let lo = base + self.rlbwt.rank(c, range.lo);
        let hi = base + self.rlbwt.rank(c, range.hi);
        if lo >= hi {
            return BwtRange {
                lo,
                hi: lo,
                toehold: None,
            };
        }
        let last_run = self.rlbwt.run_of(range.hi - 1);
        let sample = if self.rlbwt.run_heads()[last_run] == c {
            range.toehold
        } else {
            // A c-run intersects [lo, hi) because the new range is non-empty;
            // the last one ends inside it.
            self.rlbwt
                .last_run_before(c, last_run)
                .map(|run| self.samples.end(run))
        };
        BwtRange {
            lo,
            hi,
            // The sampled row holds c in the BWT, so its SA value is never 0.
            toehold: sample.map(|s| s - 1),
        }
    }

    fn encode_pattern(pattern: &[u8]) -> Result<Vec<u8>> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        pattern.iter().map(|&b| alphabet::encode_base(b)).collect()
    }

    fn longest_suffix_range(&self, codes: &[u8]) -> (CountResult, BwtRange) {
        let mut range = self.full_range();
        let mut matched = 0;
        for &c in codes.iter().rev() {
            let next = self.step(range, c);
            if next.is_empty() {
                break;
            }
            range = next;
            matched += 1;
        }
        let occurrences = if matched == 0 { 0 } else { range.len() };
        let result = CountResult {
            matched_len: matched,
            pattern_len: codes.len(),
            occurrences,
        };
        (result, range)
    }

    /// Length and occurrence count of the longest suffix of `pattern`
    /// occurring in the text.
    pub fn count_longest_suffix(&self, pattern: &[u8]) -> Result<CountResult> {
        let codes = Self::encode_pattern(pattern)?;
        Ok(self.longest_suffix_range(&codes).0)
    }

    /// Maps `SA[i]` to `SA[i - 1]`.
    pub fn phi(&self, sa_value: usize) -> Result<usize> {
        if sa_value + 1 >= self.n() {
            // SA[0] is always n - 1, the terminator.
            return Err(Error::NoPredecessor(sa_value));
        }
        let (key, value) = self
            .samples
            .phi_predecessor(sa_value)
            .ok_or(Error::NoPredecessor(sa_value))?;
        Ok(value + (sa_value - key))
    }

    /// Counts `pattern` and, if it matches in full, enumerates its
    /// occurrences starting from the toehold and walking phi.
    ///
    /// Patterns occurring more than `max_range` times get no hits; at most
    /// `max_hits` hits are returned otherwise. The count is never truncated.
    pub fn locate(
        &self,
        pattern: &[u8],
        max_hits: Option<usize>,
        max_range: Option<usize>,
    ) -> Result<(CountResult, Vec<Hit>)> {
        let codes = Self::encode_pattern(pattern)?;
        let (result, range) = self.longest_suffix_range(&codes);
        if !result.is_full_match() || max_range.is_some_and(|k| result.occurrences > k) {
            return Ok((result, Vec::new()));
        }
        let wanted = max_hits.map_or(result.occurrences, |k| k.min(result.occurrences));
        let mut hits = Vec::with_capacity(wanted);
        let mut current = range
            .toehold
            .ok_or_else(|| Error::CorruptIndex("non-empty range without toehold".into()))?;
        for i in 0..wanted {
            if i > 0 {
                current = self.phi(current)?;
            }
            hits.push(Hit {
                global_offset: current,
            });
        }
        Ok((result, hits))
    }
}
