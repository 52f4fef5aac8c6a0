#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use rindex::SequenceRecord;

pub const BASES: &[u8] = b"ACGTN";

pub fn random_bases(rng: &mut StdRng, len: usize, alphabet: &[u8]) -> Vec<u8> {
    (0..len)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
        .collect()
}

/// 1-20 sequences with total length at most `max_total`. Every other
/// collection is built from mutated copies of one base sequence so that
/// the BWT has long runs.
pub fn random_collection(rng: &mut StdRng, max_total: usize) -> Vec<SequenceRecord> {
    let k = rng.gen_range(1..=20);
    let total = rng.gen_range(k..=max_total);
    let repetitive = rng.gen_bool(0.5);
    let base = random_bases(rng, total / k + 1, BASES);
    let mut remaining = total;
    (0..k)
        .map(|i| {
            let len = if i + 1 == k {
                remaining
            } else {
                let max = remaining - (k - i - 1);
                rng.gen_range(1..=max.min(2 * total / k).max(1))
            };
            remaining -= len;
            let bases = if repetitive {
                let mut s: Vec<u8> = base.iter().cycle().take(len).copied().collect();
                for b in s.iter_mut() {
                    if rng.gen_bool(0.02) {
                        *b = BASES[rng.gen_range(0..BASES.len())];
                    }
                }
                s
            } else {
                random_bases(rng, len, BASES)
            };
            SequenceRecord::new(format!("seq{i}|len:{len}"), &bases)
        })
        .collect()
}

/// Half of the patterns are substrings of the records, half are
/// substrings with a few random substitutions.
pub fn random_patterns(
    rng: &mut StdRng,
    records: &[SequenceRecord],
    count: usize,
    max_len: usize,
) -> Vec<Vec<u8>> {
    (0..count)
        .map(|i| {
            let rec = &records[rng.gen_range(0..records.len())];
            let len = rng.gen_range(1..=max_len).min(rec.bases.len());
            let start = rng.gen_range(0..=rec.bases.len() - len);
            let mut p = rec.bases[start..start + len].to_vec();
            if i % 2 == 1 {
                for _ in 0..rng.gen_range(1..=3) {
                    let at = rng.gen_range(0..p.len());
                    p[at] = BASES[rng.gen_range(0..BASES.len())];
                }
            }
            p
        })
        .collect()
}

/// Printable corpus text exactly as the index lays it out.
pub fn layout(records: &[SequenceRecord]) -> Vec<u8> {
    let mut text = Vec::new();
    for r in records {
        text.extend_from_slice(&r.bases);
        text.push(b'#');
    }
    text.push(b'$');
    text
}

/// Longest suffix of `pattern` occurring in `text` and its occurrence count,
/// by matching backwards from every end position.
pub fn naive_count(text: &[u8], pattern: &[u8]) -> (usize, usize) {
    let m = pattern.len();
    let mut best = 0;
    let mut count = 0;
    for end in 0..text.len() {
        let mut k = 0;
        while k < m && k <= end && text[end - k] == pattern[m - 1 - k] {
            k += 1;
        }
        if k > best {
            best = k;
            count = 1;
        } else if k == best && k > 0 {
            count += 1;
        }
    }
    (best, count)
}

/// Every start offset of `pattern` in `text`, overlapping allowed.
pub fn naive_occurrences(text: &[u8], pattern: &[u8]) -> Vec<usize> {
    if pattern.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pattern.len())
        .filter(|&i| &text[i..i + pattern.len()] == pattern)
        .collect()
}

/// Suffix array by comparison sort.
pub fn naive_suffix_array(text: &[u8]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..text.len()).collect();
    sa.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
    sa
}

pub fn mutated_copies(
    rng: &mut StdRng,
    base: &[u8],
    copies: usize,
    rate: f64,
) -> Vec<SequenceRecord> {
    (0..copies)
        .map(|i| {
            let mut s = base.to_vec();
            for b in s.iter_mut() {
                if rng.gen_bool(rate) {
                    let old = *b;
                    while *b == old {
                        *b = b"ACGT"[rng.gen_range(0..4)];
                    }
                }
            }
            SequenceRecord::new(format!("copy.{i}"), &s)
        })
        .collect()
}
