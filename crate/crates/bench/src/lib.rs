//! Synthetic repetitive collections for benchmarking.

use rand::Rng;
use rindex::SequenceRecord;

pub fn random_bases<R: Rng>(rng: &mut R, len: usize) -> Vec<u8> {
    (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
}

/// `copies` variants of `base`, each with independent substitutions at
/// rate `rate` per position.
pub fn mutated_copies<R: Rng>(
    rng: &mut R,
    base: &[u8],
    copies: usize,
    rate: f64,
) -> Vec<SequenceRecord> {
    (0..copies)
        .map(|i| {
            let mut seq = base.to_vec();
            for b in seq.iter_mut() {
                if rng.gen_bool(rate) {
                    let old = *b;
                    while *b == old {
                        *b = b"ACGT"[rng.gen_range(0..4)];
                    }
                }
            }
            SequenceRecord::new(format!("copy.{i}"), &seq)
        })
        .collect()
}

/// Reads of length `len` sampled from random positions of the records.
pub fn sample_reads<R: Rng>(
    rng: &mut R,
    records: &[SequenceRecord],
    count: usize,
    len: usize,
) -> Vec<Vec<u8>> {
    (0..count)
        .map(|_| {
            let rec = &records[rng.gen_range(0..records.len())];
            let start = rng.gen_range(0..=rec.bases.len() - len);
            rec.bases[start..start + len].to_vec()
        })
        .collect()
}
