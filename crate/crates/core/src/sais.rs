//! Suffix array construction by induced sorting (SA-IS).
//!
//! The input must end with a unique smallest symbol. Recursion runs on the
//! reduced string of LMS-substring names, which keeps the same property.

const EMPTY: usize = usize::MAX;

trait Symbol: Copy + Ord {
    fn index(self) -> usize;
}

impl Symbol for u8 {
    #[inline]
    fn index(self) -> usize {
        self as usize
    }
}

impl Symbol for usize {
    #[inline]
    fn index(self) -> usize {
        self
    }
}

/// Suffix array of `text`, whose symbols are all `< alphabet_size` and whose
/// last symbol is strictly smaller than every other symbol.
pub(crate) fn suffix_array(text: &[u8], alphabet_size: usize) -> Vec<usize> {
    sais(text, alphabet_size)
}

fn sais<T: Symbol>(s: &[T], k: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        _ => {}
    }

    // true = S-type
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];

    let mut counts = vec![0usize; k];
    for &c in s {
        counts[c.index()] += 1;
    }

    let mut sa = vec![EMPTY; n];
    let mut ends = bucket_ends(&counts);
    for i in (1..n).rev() {
        if is_lms(i) {
            let c = s[i].index();
            ends[c] -= 1;
            sa[ends[c]] = i;
        }
    }
    induce(s, &stype, &counts, &mut sa);

    // Sorted LMS substrings, compacted to the front.
    let mut m = 0;
    for i in 0..n {
        if is_lms(sa[i]) {
            sa[m] = sa[i];
            m += 1;
        }
    }

    let mut names = vec![EMPTY; n];
    let mut name = 0;
    let mut prev = EMPTY;
    for &pos in &sa[..m] {
        if prev == EMPTY || !lms_substrings_equal(s, &stype, prev, pos) {
            name += 1;
        }
        names[pos] = name - 1;
        prev = pos;
    }

    let lms_positions: Vec<usize> = (1..n).filter(|&i| is_lms(i)).collect();
    let reduced: Vec<usize> = lms_positions.iter().map(|&p| names[p]).collect();
    drop(names);

    let reduced_sa = if name < m {
        sais(&reduced, name)
    } else {
        let mut direct = vec![0; m];
        for (i, &c) in reduced.iter().enumerate() {
            direct[c] = i;
        }
        direct
    };

    sa.fill(EMPTY);
    let mut ends = bucket_ends(&counts);
    for &r in reduced_sa.iter().rev() {
        let p = lms_positions[r];
        let c = s[p].index();
        ends[c] -= 1;
        sa[ends[c]] = p;
    }
    induce(s, &stype, &counts, &mut sa);
    sa
}

fn bucket_starts(counts: &[usize]) -> Vec<usize> {
    let mut sum = 0;
    counts
        .iter()
        .map(|&c| {
            let start = sum;
            sum += c;
            start
        })
        .collect()
}

fn bucket_ends(counts: &[usize]) -> Vec<usize> {
    let mut sum = 0;
    counts
        .iter()
        .map(|&c| {
            sum += c;
            sum
        })
        .collect()
}

fn induce<T: Symbol>(s: &[T], stype: &[bool], counts: &[usize], sa: &mut [usize]) {
    let n = s.len();
    let mut starts = bucket_starts(counts);
    for i in 0..n {
        let j = sa[i];
        if j != EMPTY && j > 0 && !stype[j - 1] {
            let c = s[j - 1].index();
            sa[starts[c]] = j - 1;
            starts[c] += 1;
        }
    }
    let mut ends = bucket_ends(counts);
    for i in (0..n).rev() {
        let j = sa[i];
        if j != EMPTY && j > 0 && stype[j - 1] {
            let c = s[j - 1].index();
            ends[c] -= 1;
            sa[ends[c]] = j - 1;
        }
    }
}

fn lms_substrings_equal<T: Symbol>(s: &[T], stype: &[bool], a: usize, b: usize) -> bool {
    let n = s.len();
    if a == n - 1 || b == n - 1 {
        return a == b;
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];
    let mut i = 0;
    loop {
        if s[a + i] != s[b + i] || stype[a + i] != stype[b + i] {
            return false;
        }
        if i > 0 {
            match (is_lms(a + i), is_lms(b + i)) {
                (true, true) => return true,
                (false, false) => {}
                _ => return false,
            }
        }
        i += 1;
    }
}
