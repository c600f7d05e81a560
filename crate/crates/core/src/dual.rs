//! Dual-code analysis without enumerating the dual: the first four power
//! moments recover the low-weight dual counts A1, A2, A3 from an exact
//! primal weight distribution, and an independent column-dependency search
//! recounts them straight from the generator matrix.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::bound::{classify, ClassFlags};
use crate::error::{Error, Result};
use crate::matrix::GeneratorMatrix;
use crate::weight::WeightDistribution;

/// Minimum dual distance as determined by (A1, A2, A3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualDistance {
    Exact(u64),
    /// All three counts vanish; the dual distance is at least 4.
    AtLeastFour,
}

/// Dual parameters inferred from the primal weight distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    pub n: usize,
    pub k_dual: usize,
    pub a1: BigUint,
    pub a2: BigUint,
    pub a3: BigUint,
    pub d_perp: DualDistance,
    /// Optimality classification of the dual code; empty when the dual
    /// distance is not pinned down by the three counts.
    pub flags: ClassFlags,
}

/// Solves the second, third and fourth power-moment identities sequentially
/// for the dual counts A1, A2, A3, in exact integer arithmetic. The zeroth
/// identity (total codeword count) is checked as a precondition, and any
/// negative or non-integral solve is reported as a corrupted distribution.
pub fn pless_dual_a123(wd: &WeightDistribution) -> Result<(BigUint, BigUint, BigUint)> {
    let p = BigInt::from(wd.alphabet());
    let n = BigInt::from(wd.n());
    let k = wd.k();
    let pk = p.pow(k);

    let moment = |t: u32| -> BigInt {
        wd.counts()
            .iter()
            .map(|(&w, &c)| BigInt::from(w).pow(t) * BigInt::from(c))
            .sum()
    };
    if moment(0) != pk {
        return Err(Error::InconsistentMoments(format!(
            "codeword total {} differs from {}^{}",
            moment(0),
            wd.alphabet(),
            k
        )));
    }

    let exact = |numerator: BigInt, denominator: BigInt, what: &str| -> Result<BigUint> {
        if (&numerator % &denominator) != BigInt::zero() || numerator.is_negative() {
            return Err(Error::InconsistentMoments(format!("{what} solves to {numerator}/{denominator}")));
        }
        Ok((numerator / denominator).to_biguint().unwrap())
    };

    // p * S1 = p^k (pn - n - A1)
    let s1 = moment(1);
    let a1 = exact((&p * &n - &n) * &pk - &p * s1, pk.clone(), "A1")?;
    let a1_int = BigInt::from(a1.clone());

    // p^2 S2 = p^k [(p-1) n (pn - n + 1) - (2pn - p - 2n + 2) A1 + 2 A2]
    let s2 = moment(2);
    let c_a1 = BigInt::from(2u32) * &p * &n - &p - BigInt::from(2u32) * &n + 2;
    let base2 = (&p - 1) * &n * (&p * &n - &n + 1);
    let a2 = exact(
        p.pow(2) * s2 - &pk * (base2 - &c_a1 * &a1_int),
        BigInt::from(2u32) * &pk,
        "A2",
    )?;
    let a2_int = BigInt::from(a2.clone());

    // p^3 S3 = p^k [C0 - C1 A1 + 6 (pn - p - n + 2) A2 - 6 A3]
    let s3 = moment(3);
    let n2 = &n * &n;
    let p2 = &p * &p;
    let c0 = (&p - 1)
        * &n
        * (&p2 * &n2 - BigInt::from(2u32) * &p * &n2 + BigInt::from(3u32) * &p * &n - &p + &n2
            - BigInt::from(3u32) * &n
            + 2);
    let c1 = BigInt::from(3u32) * &p2 * &n2 - BigInt::from(3u32) * &p2 * &n
        - BigInt::from(6u32) * &p * &n2
        + BigInt::from(12u32) * &p * &n
        + &p2
        - BigInt::from(6u32) * &p
        + BigInt::from(3u32) * &n2
        - BigInt::from(9u32) * &n
        + 6;
    let c_a2 = BigInt::from(6u32) * (&p * &n - &p - &n + 2);
    let a3 = exact(
        &pk * (c0 - c1 * &a1_int + c_a2 * &a2_int) - p.pow(3) * s3,
        BigInt::from(6u32) * &pk,
        "A3",
    )?;

    Ok((a1, a2, a3))
}

/// Builds the full dual report for a code with the given exact weight
/// distribution: dual dimension, the three counts, the dual distance they
/// determine, and the sphere-packing classification of the dual parameters.
pub fn dual_report(wd: &WeightDistribution) -> Result<DualReport> {
    let (a1, a2, a3) = pless_dual_a123(wd)?;
    let n = wd.n();
    let k_dual = n - wd.k() as usize;
    let d_perp = if !a1.is_zero() {
        DualDistance::Exact(1)
    } else if !a2.is_zero() {
        DualDistance::Exact(2)
    } else if !a3.is_zero() {
        DualDistance::Exact(3)
    } else {
        DualDistance::AtLeastFour
    };
    let flags = match d_perp {
        DualDistance::Exact(d) => classify(n as u64, k_dual as u64, d, wd.alphabet()),
        DualDistance::AtLeastFour => ClassFlags::default(),
    };
    Ok(DualReport { n, k_dual, a1, a2, a3, d_perp, flags })
}

/// Counts dual codewords of weight exactly `w` (1, 2 or 3) by searching the
/// columns of the row-reduced generator matrix for dependencies with all
/// coefficients nonzero. Scalar multiples count as distinct codewords,
/// matching the convention of the power moments.
///
/// Columns are grouped into projective classes first, so the search costs
/// O(n) for w <= 2 and O(t^2 (p-1)) for w = 3, with t the number of
/// distinct classes.
pub fn low_weight_dual_count(g: &GeneratorMatrix, w: u8, budget: u64) -> Result<BigUint> {
    assert!((1..=3).contains(&w), "only weights 1..=3 are supported");
    let f = g.field().clone();
    let p = f.order();
    let basis = g.row_space_basis();
    let r = basis.rows();

    // Projective classification: zero columns counted apart, nonzero columns
    // scaled so their first nonzero entry is 1.
    let mut zero_cols = 0u64;
    let mut classes: HashMap<Vec<u64>, u64> = HashMap::new();
    for j in 0..basis.cols() {
        let col = basis.column(j);
        match col.iter().find(|e| !e.is_zero()) {
            None => zero_cols += 1,
            Some(&lead) => {
                let inv = f.inv(lead).expect("lead is nonzero");
                let key: Vec<u64> = col.iter().map(|&e| f.mul(e, inv).index()).collect();
                *classes.entry(key).or_insert(0) += 1;
            }
        }
    }

    let t = classes.len() as u128;
    let cost: u128 = match w {
        3 => t * t.saturating_sub(1) / 2 * (p as u128 - 1) + basis.cols() as u128,
        _ => basis.cols() as u128,
    };
    if cost > budget as u128 {
        return Err(Error::BudgetExceeded { required: cost, budget });
    }

    let p1 = p as u128 - 1; // p - 1
    let choose2 = |x: u64| -> u128 { x as u128 * (x as u128).saturating_sub(1) / 2 };
    let choose3 =
        |x: u64| -> u128 { x as u128 * (x as u128).saturating_sub(1) * (x as u128).saturating_sub(2) / 6 };

    let count: u128 = match w {
        // Each zero column supports p - 1 unit-style dual words.
        1 => zero_cols as u128 * p1,
        // Either two zero columns with free coefficients, or a proportional
        // pair within one projective class.
        2 => {
            choose2(zero_cols) * p1 * p1
                + classes.values().map(|&m| choose2(m) * p1).sum::<u128>()
        }
        _ => {
            // Three zero columns.
            let mut acc = choose3(zero_cols) * p1 * p1 * p1;
            // One zero column plus a proportional pair.
            acc += zero_cols as u128
                * classes.values().map(|&m| choose2(m) * p1).sum::<u128>()
                * p1;
            // Three columns of one class: coefficient triples with a
            // two-term partial sum never vanishing give (p-1)(p-2) words.
            acc += classes.values().map(|&m| choose3(m) * p1 * (p1 - 1)).sum::<u128>();
            // Three pairwise non-proportional columns: dependent iff the
            // representative of one class lies in the span of the other two.
            // Every dependent class triple is discovered from each of its
            // three pairs exactly once.
            let reps: Vec<(&Vec<u64>, u64)> = classes.iter().map(|(k, &m)| (k, m)).collect();
            let mut triple_sum: u128 = 0;
            for i in 0..reps.len() {
                let vi: Vec<_> = reps[i].0.iter().map(|&x| f.element(x)).collect();
                for j in (i + 1)..reps.len() {
                    let vj: Vec<_> = reps[j].0.iter().map(|&x| f.element(x)).collect();
                    for mu in 1..p {
                        let s = f.element(mu);
                        let combo: Vec<_> =
                            (0..r).map(|row| f.add(vi[row], f.mul(s, vj[row]))).collect();
                        let Some(&lead) = combo.iter().find(|e| !e.is_zero()) else {
                            unreachable!("distinct projective classes cannot cancel");
                        };
                        let inv = f.inv(lead).expect("lead is nonzero");
                        let key: Vec<u64> = combo.iter().map(|&e| f.mul(e, inv).index()).collect();
                        if let Some(&mk) = classes.get(&key) {
                            triple_sum += reps[i].1 as u128 * reps[j].1 as u128 * mk as u128;
                        }
                    }
                }
            }
            debug_assert_eq!(triple_sum % 3, 0);
            acc += triple_sum / 3 * p1;
            acc
        }
    };
    Ok(BigUint::from(count))
}
