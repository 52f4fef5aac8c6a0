//! Suffix-array samples at BWT run boundaries and the predecessor
//! structure used to evaluate phi.

use crate::error::{Error, Result};
use crate::rlbwt::RunLengthBwt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledSuffixes {
    starts: Vec<usize>,
    ends: Vec<usize>,
    // Sorted SA values at run starts (first run excluded) and, for each,
    // the SA value at the BWT position just before it.
    phi_keys: Vec<usize>,
    phi_values: Vec<usize>,
}

impl SampledSuffixes {
    /// `starts[j]`/`ends[j]` are the SA values at the first/last position of run j.
    pub fn from_samples(starts: Vec<usize>, ends: Vec<usize>) -> Result<Self> {
        if starts.len() != ends.len() || starts.is_empty() {
            return Err(Error::Inconsistent(format!(
                "{} start samples and {} end samples",
                starts.len(),
                ends.len()
            )));
        }
        let mut pairs: Vec<(usize, usize)> = starts[1..]
            .iter()
            .copied()
            .zip(ends[..ends.len() - 1].iter().copied())
            .collect();
        pairs.sort_unstable_by_key(|&(k, _)| k);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Inconsistent("duplicate run-start sample".into()));
        }
        let (phi_keys, phi_values) = pairs.into_iter().unzip();
        Ok(SampledSuffixes {
            starts,
            ends,
            phi_keys,
            phi_values,
        })
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn ends(&self) -> &[usize] {
        &self.ends
    }

    /// SA value at the first BWT position of `run`.
    pub fn start(&self, run: usize) -> usize {
        self.starts[run]
    }

    /// SA value at the last BWT position of `run`.
    pub fn end(&self, run: usize) -> usize {
        self.ends[run]
    }

    /// Predecessor lookup: the largest run-start key `<= sa_value` and its value.
    pub fn phi_predecessor(&self, sa_value: usize) -> Option<(usize, usize)> {
        let k = self.phi_keys.partition_point(|&key| key <= sa_value);
        let k = k.checked_sub(1)?;
        Some((self.phi_keys[k], self.phi_values[k]))
    }
}

/// Records SA values at both ends of every run.
pub fn sample_boundaries(sa: &[usize], rlbwt: &RunLengthBwt) -> Result<SampledSuffixes> {
    if sa.len() != rlbwt.len() {
        return Err(Error::Inconsistent(format!(
            "suffix array has {} entries but runs cover {} positions",
            sa.len(),
            rlbwt.len()
        )));
    }
    let (starts, ends) = (0..rlbwt.runs())
        .map(|j| (sa[rlbwt.run_start(j)], sa[rlbwt.run_end(j)]))
        .unzip();
    SampledSuffixes::from_samples(starts, ends)
}
