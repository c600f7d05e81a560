//! Exact weight distributions of linear codes by message-space enumeration.
//!
//! Enumeration always walks the `q^rank` messages of a row-reduced basis,
//! never the raw parameter space, so rank deficiency and repeated codewords
//! in a redundant presentation are handled uniformly.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::GeneratorMatrix;

/// Sparse weight distribution of a linear code: `counts[w]` codewords of
/// Hamming weight `w`, plus `(n, k)` and the alphabet size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    k: u32,
    alphabet: u64,
    counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn new(n: usize, k: u32, alphabet: u64, counts: BTreeMap<u64, u64>) -> Self {
        debug_assert!(counts.keys().all(|&w| w <= n as u64));
        debug_assert_eq!(counts.get(&0).copied(), Some(1));
        WeightDistribution { n, k, alphabet, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension: rank over the code's alphabet.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alphabet(&self) -> u64 {
        self.alphabet
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, w: u64) -> u64 {
        self.counts.get(&w).copied().unwrap_or(0)
    }

    /// Total number of codewords, `alphabet^k` for a consistent distribution.
    pub fn total(&self) -> BigUint {
        self.counts.values().map(|&c| BigUint::from(c)).sum()
    }

    /// Smallest weight with a nonzero count among weights >= 1; `None` for
    /// the zero code.
    pub fn min_distance(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w > 0)
    }
}

/// Exact weight distribution of the code generated by `g`, enumerating the
/// `q^rank` messages of its row-reduced basis. `budget` caps the number of
/// enumerated codewords.
pub fn weight_distribution(g: &GeneratorMatrix, budget: u64) -> Result<WeightDistribution> {
    weight_distribution_threaded(g, budget, 1)
}

/// As [`weight_distribution`], partitioning the message space across
/// `threads` workers. The merge is a plain sum of per-range counts, so the
/// result is identical for every thread count.
pub fn weight_distribution_threaded(
    g: &GeneratorMatrix,
    budget: u64,
    threads: usize,
) -> Result<WeightDistribution> {
    let basis = g.row_space_basis();
    let q = g.field().order();
    let r = if basis.rows() == 1 && basis.row(0).iter().all(|e| e.is_zero()) {
        0u32
    } else {
        basis.rows() as u32
    };
    let total: u128 = (q as u128).pow(r);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { required: total, budget });
    }
    let total = total as u64;

    let threads = threads.max(1).min(total.max(1) as usize);
    let counts = if threads == 1 || total < 1024 {
        count_range(&basis, r, 0, total)
    } else {
        let chunk = total / threads as u64;
        let mut ranges = Vec::new();
        let mut start = 0;
        for t in 0..threads {
            let end = if t + 1 == threads { total } else { start + chunk };
            ranges.push((start, end));
            start = end;
        }
        let basis_ref = &basis;
        let partials: Vec<BTreeMap<u64, u64>> = std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|(lo, hi)| scope.spawn(move || count_range(basis_ref, r, lo, hi)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut merged = BTreeMap::new();
        for partial in partials {
            for (w, c) in partial {
                *merged.entry(w).or_insert(0) += c;
            }
        }
        merged
    };
    Ok(WeightDistribution::new(g.cols(), r, q, counts))
}

/// Counts weights for messages with indices in `[lo, hi)`, decoding each
/// start index to base-q digits and stepping the codeword incrementally.
fn count_range(basis: &GeneratorMatrix, rank: u32, lo: u64, hi: u64) -> BTreeMap<u64, u64> {
    let f = basis.field();
    let q = f.order();
    let n = basis.cols();
    let mut counts = BTreeMap::new();
    if lo >= hi {
        return counts;
    }
    if rank == 0 {
        counts.insert(0u64, hi - lo);
        return counts;
    }
    let r = rank as usize;

    let mut digits = vec![0u64; r];
    let mut rest = lo;
    for d in digits.iter_mut() {
        *d = rest % q;
        rest /= q;
    }
    // Codeword for the starting message.
    let mut word: Vec<_> = (0..n)
        .map(|j| {
            let mut acc = f.zero();
            for (i, &d) in digits.iter().enumerate() {
                acc = f.add(acc, f.mul(f.element(d), basis.entry(i, j)));
            }
            acc
        })
        .collect();

    let mut index = lo;
    loop {
        let w = word.iter().filter(|e| !e.is_zero()).count() as u64;
        *counts.entry(w).or_insert(0) += 1;
        index += 1;
        if index == hi {
            break;
        }
        // Odometer step: digit i rolls q-1 -> 0, which adds row i once more
        // (q copies of a row sum to zero); the digit that increments adds
        // row i once.
        let mut i = 0;
        loop {
            digits[i] += 1;
            for (j, w) in word.iter_mut().enumerate() {
                *w = f.add(*w, basis.entry(i, j));
            }
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
    counts
}
