//! Run-length encoded BWT with rank support in O(r) words plus an n-bit
//! run-start bit vector.

use crate::alphabet::SIGMA;
use crate::bits::BitVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthBwt {
    n: usize,
    heads: Vec<u8>,
    lengths: Vec<usize>,
    run_starts: Vec<usize>,
    run_start_marks: BitVector,
    /// For each symbol, the ids of its runs in BWT order.
    symbol_runs: [Vec<usize>; SIGMA],
    /// For each symbol, total length of its first k runs (k = 0..=runs).
    symbol_cumulative: [Vec<usize>; SIGMA],
    /// For run j, how many earlier runs share its head.
    run_rank: Vec<usize>,
    /// C(c): number of BWT symbols strictly smaller than c.
    less: [usize; SIGMA],
}

impl RunLengthBwt {
    /// Builds the structure from a run decomposition. Adjacent heads must
    /// differ and every length must be positive.
    pub fn from_runs(heads: Vec<u8>, lengths: Vec<usize>) -> Result<Self> {
        if heads.is_empty() {
            return Err(Error::Inconsistent("BWT has no runs".into()));
        }
        if heads.len() != lengths.len() {
            return Err(Error::Inconsistent(format!(
                "{} run heads but {} run lengths",
                heads.len(),
                lengths.len()
            )));
        }
        if let Some(&h) = heads.iter().find(|&&h| h as usize >= SIGMA) {
            return Err(Error::Inconsistent(format!(
                "run head code {h} outside alphabet"
            )));
        }
        if heads.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Inconsistent("adjacent runs share a symbol".into()));
        }
        if lengths.contains(&0) {
            return Err(Error::Inconsistent("zero-length run".into()));
        }

        let mut run_starts = Vec::with_capacity(heads.len());
        let mut n = 0usize;
        for &len in &lengths {
            run_starts.push(n);
            n = n
                .checked_add(len)
                .ok_or_else(|| Error::Inconsistent("run lengths overflow".into()))?;
        }
        let run_start_marks = BitVector::from_ones(n, run_starts.iter().copied());

        let mut symbol_runs: [Vec<usize>; SIGMA] = Default::default();
        let mut symbol_cumulative: [Vec<usize>; SIGMA] = std::array::from_fn(|_| vec![0]);
        let mut run_rank = Vec::with_capacity(heads.len());
        for (j, (&h, &len)) in heads.iter().zip(&lengths).enumerate() {
            let c = h as usize;
            run_rank.push(symbol_runs[c].len());
            symbol_runs[c].push(j);
            let last = *symbol_cumulative[c].last().unwrap();
            symbol_cumulative[c].push(last + len);
        }
        let mut less = [0usize; SIGMA];
        let mut sum = 0;
        for c in 0..SIGMA {
            less[c] = sum;
            sum += symbol_cumulative[c].last().unwrap();
        }

        Ok(RunLengthBwt {
            n,
            heads,
            lengths,
            run_starts,
            run_start_marks,
            symbol_runs,
            symbol_cumulative,
            run_rank,
            less,
        })
    }

    /// Total BWT length.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of runs.
    pub fn runs(&self) -> usize {
        self.heads.len()
    }

    pub fn run_heads(&self) -> &[u8] {
        &self.heads
    }

    pub fn run_lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn run_start(&self, run: usize) -> usize {
        self.run_starts[run]
    }

    pub fn run_end(&self, run: usize) -> usize {
        self.run_starts[run] + self.lengths[run] - 1
    }

    pub fn run_start_marks(&self) -> &BitVector {
        &self.run_start_marks
    }

    /// The C array, indexed by symbol code.
    pub fn less(&self) -> &[usize; SIGMA] {
        &self.less
    }

    /// Occurrences of symbol `c` in the whole BWT.
    pub fn total(&self, c: u8) -> usize {
        *self.symbol_cumulative[c as usize].last().unwrap()
    }

    /// Run containing BWT position `i < n`.
    #[inline]
    pub fn run_of(&self, i: usize) -> usize {
        self.run_start_marks.rank1(i + 1) - 1
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.heads[self.run_of(i)]
    }

    /// Occurrences of symbol `c` in `BWT[0, i)`.
    pub fn rank(&self, c: u8, i: usize) -> usize {
        let c = c as usize;
        if i == 0 {
            return 0;
        }
        if i >= self.n {
            return *self.symbol_cumulative[c].last().unwrap();
        }
        let j = self.run_of(i);
        if self.heads[j] as usize == c {
            self.symbol_cumulative[c][self.run_rank[j]] + (i - self.run_starts[j])
        } else {
            let k = self.symbol_runs[c].partition_point(|&x| x < j);
            self.symbol_cumulative[c][k]
        }
    }

    /// Last run of symbol `c` whose id is below `run`.
    pub fn last_run_before(&self, c: u8, run: usize) -> Option<usize> {
        let runs = &self.symbol_runs[c as usize];
        let k = runs.partition_point(|&x| x < run);
        k.checked_sub(1).map(|k| runs[k])
    }

    /// Expands the runs back into the plain BWT (codes).
    pub fn expand(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n);
        for (&h, &len) in self.heads.iter().zip(&self.lengths) {
            out.extend(std::iter::repeat_n(h, len));
        }
        out
    }
}

/// Splits a BWT (alphabet codes) into maximal runs.
pub fn run_length_encode(bwt: &[u8]) -> Result<RunLengthBwt> {
    if bwt.is_empty() {
        return Err(Error::Inconsistent("empty BWT".into()));
    }
    let mut heads = Vec::new();
    let mut lengths: Vec<usize> = Vec::new();
    for &c in bwt {
        match heads.last() {
            Some(&h) if h == c => *lengths.last_mut().unwrap() += 1,
            _ => {
                heads.push(c);
                lengths.push(1);
            }
        }
    }
    RunLengthBwt::from_runs(heads, lengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{decode, encode};
    use proptest::prelude::*;

    fn codes(ascii: &[u8]) -> Vec<u8> {
        ascii.iter().map(|&b| encode(b).unwrap()).collect()
    }

    fn naive_runs(bwt: &[u8]) -> (Vec<u8>, Vec<usize>) {
        let mut heads = Vec::new();
        let mut lengths = Vec::new();
        let mut i = 0;
        while i < bwt.len() {
            let mut j = i;
            while j < bwt.len() && bwt[j] == bwt[i] {
                j += 1;
            }
            heads.push(bwt[i]);
            lengths.push(j - i);
            i = j;
        }
        (heads, lengths)
    }

    #[test]
    fn encode_examples() {
        let bwt = codes(b"TT$AACCGG");
        assert_eq!(naive_runs(&bwt).1, vec![2, 1, 2, 2, 2]);
        let rl = run_length_encode(&bwt).unwrap();
        let heads: Vec<u8> = rl.run_heads().iter().map(|&c| decode(c)).collect();
        assert_eq!(heads, b"T$ACG");
        assert_eq!(rl.run_lengths(), &[2, 1, 2, 2, 2]);
        assert_eq!(rl.runs(), 5);

        let rl = run_length_encode(&codes(b"AAAA")).unwrap();
        assert_eq!(rl.run_heads(), &codes(b"A")[..]);
        assert_eq!(rl.run_lengths(), &[4]);
        assert_eq!(run_length_encode(&codes(b"ACAC")).unwrap().runs(), 4);
        assert!(run_length_encode(&[]).is_err());
    }

    #[test]
    fn rank_examples() {
        let rl = run_length_encode(&codes(b"TT$AACCGG")).unwrap();
        let t = encode(b'T').unwrap();
        let g = encode(b'G').unwrap();
        assert_eq!(rl.rank(t, 9), 2);
        assert_eq!(rl.rank(g, 8), 1);
        for c in 0..SIGMA as u8 {
            assert_eq!(rl.rank(c, 0), 0);
        }
        // $ A C G T counts: 1 2 2 2 2; # and N absent.
        assert_eq!(rl.less(), &[0, 1, 1, 3, 5, 7, 7]);
    }

    #[test]
    fn from_runs_rejects_bad_input() {
        assert!(RunLengthBwt::from_runs(vec![2, 2], vec![1, 1]).is_err());
        assert!(RunLengthBwt::from_runs(vec![2], vec![0]).is_err());
        assert!(RunLengthBwt::from_runs(vec![9], vec![1]).is_err());
        assert!(RunLengthBwt::from_runs(vec![2, 3], vec![1]).is_err());
    }

    proptest! {
        #[test]
        fn rank_and_expand_agree_with_plain_bwt(bwt in prop::collection::vec(0u8..7, 1..500)) {
            let rl = run_length_encode(&bwt).unwrap();
            prop_assert_eq!(rl.expand(), bwt.clone());
            prop_assert_eq!(rl.run_lengths().iter().sum::<usize>(), bwt.len());
            prop_assert!(rl.run_heads().windows(2).all(|w| w[0] != w[1]));
            let mut counts = [0usize; SIGMA];
            for i in 0..=bwt.len() {
                for (c, &expected) in counts.iter().enumerate() {
                    prop_assert_eq!(rl.rank(c as u8, i), expected);
                }
                if i < bwt.len() {
                    prop_assert_eq!(rl.get(i), bwt[i]);
                    counts[bwt[i] as usize] += 1;
                }
            }
            prop_assert!(rl.less().windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
