//! Plain bit vector with constant-time rank.

/// Bits per rank superblock.
const SUPERBLOCK_WORDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
    // Number of ones before each superblock, plus a final total.
    superblocks: Vec<u64>,
}

impl BitVector {
    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), len.div_ceil(64));
        let mut superblocks = Vec::with_capacity(words.len() / SUPERBLOCK_WORDS + 2);
        let mut total = 0u64;
        for chunk in words.chunks(SUPERBLOCK_WORDS) {
            superblocks.push(total);
            total += chunk.iter().map(|w| w.count_ones() as u64).sum::<u64>();
        }
        superblocks.push(total);
        BitVector {
            words,
            len,
            superblocks,
        }
    }

    /// Bit vector of length `len` with ones at the given (increasing) positions.
    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for i in ones {
            assert!(i < len, "bit {i} out of range for length {len}");
            words[i / 64] |= 1 << (i % 64);
        }
        Self::from_words(words, len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        *self.superblocks.last().unwrap_or(&0) as usize
    }

    /// Number of ones in `[0, i)`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let word = i / 64;
        let block = word / SUPERBLOCK_WORDS;
        let mut rank = self.superblocks[block];
        for w in &self.words[block * SUPERBLOCK_WORDS..word] {
            rank += w.count_ones() as u64;
        }
        let bit = i % 64;
        if bit > 0 {
            rank += (self.words[word] & ((1u64 << bit) - 1)).count_ones() as u64;
        }
        rank as usize
    }
}
