//! Invariant suites: field axioms, character-sum orthogonality and
//! closed-form/direct agreement, trace-representation equivalence, basis
//! independence, the dual-distance inequality for subfield codes, and
//! power-moment consistency.

use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use subfield_codes_core::charsum::{
    additive_char, approx_eq, c1_zero_count, c1_zero_count_direct, c2_zero_count,
    c2_zero_count_direct, character_trace_counts, character_trace_counts_direct,
    gauss_sum_closed, gauss_sum_numeric, mult_char, weil_sum_direct, weil_sum_quadratic,
};
use subfield_codes_core::field::{is_prime, FiniteField, PrimeElement};
use subfield_codes_core::matrix::{Basis, GeneratorMatrix};
use subfield_codes_core::weight::{weight_distribution, WeightDistribution};
use subfield_codes_core::{build_c1, build_c2, low_weight_dual_count, pless_dual_a123};

fn prime_powers(limit: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in 2..=limit {
        if !is_prime(p) {
            continue;
        }
        let mut q = p;
        let mut m = 1;
        while q <= limit {
            out.push((p, m));
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
            m += 1;
        }
    }
    out
}

fn odd_prime_powers(limit: u64) -> Vec<(u64, u32)> {
    prime_powers(limit).into_iter().filter(|&(p, _)| p != 2).collect()
}

#[test]
fn field_axioms_hold_exhaustively_up_to_125() {
    for (p, m) in prime_powers(125) {
        let f = FiniteField::new(p, m).unwrap();
        let elems: Vec<_> = f.elements().collect();
        for &a in &elems {
            assert_eq!(f.add(a, f.zero()), a);
            assert_eq!(f.mul(a, f.one()), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for &b in &elems {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &elems {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn trace_is_linear_and_lands_in_the_prime_subfield() {
    for (p, m) in prime_powers(125) {
        let f = FiniteField::new(p, m).unwrap();
        for a in f.elements() {
            let ta = f.trace(a).value();
            // Fixed by Frobenius: the embedded trace equals its own p-th power.
            let embedded = f.embed(PrimeElement(ta));
            assert_eq!(f.pow(embedded, p as i64).unwrap(), embedded);
            let nm = f.embed(f.norm(a));
            assert_eq!(f.pow(nm, p as i64).unwrap(), nm);
            for b in f.elements() {
                assert_eq!(f.trace(f.add(a, b)).value(), (ta + f.trace(b).value()) % p);
            }
            for s in 0..p {
                let scaled = f.mul(f.embed(PrimeElement(s)), a);
                assert_eq!(f.trace(scaled).value(), s * ta % p);
            }
        }
    }
}

#[test]
fn norm_is_multiplicative_on_nonzero_elements() {
    for (p, m) in prime_powers(125) {
        let f = FiniteField::new(p, m).unwrap();
        let nonzero: Vec<_> = f.nonzero_elements().collect();
        for &a in &nonzero {
            for &b in &nonzero {
                let lhs = f.norm(f.mul(a, b)).value();
                let rhs = f.norm(a).value() * f.norm(b).value() % p;
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn quadratic_character_is_multiplicative_and_matches_squares() {
    for (p, m) in odd_prime_powers(125) {
        let f = FiniteField::new(p, m).unwrap();
        let squares: HashSet<_> = f.squares().unwrap().into_iter().collect();
        assert_eq!(squares.len() as u64, (f.order() + 1) / 2);
        let nonzero: Vec<_> = f.nonzero_elements().collect();
        for &a in &nonzero {
            let ea = f.quadratic_character(a).unwrap();
            assert_eq!(ea == 1, squares.contains(&a));
            for &b in &nonzero {
                assert_eq!(
                    f.quadratic_character(f.mul(a, b)).unwrap(),
                    ea * f.quadratic_character(b).unwrap()
                );
            }
        }
        // Squaring is exactly 2-to-1 on nonzero elements.
        let mut preimages: std::collections::HashMap<u64, u64> = Default::default();
        for &x in &nonzero {
            *preimages.entry(f.mul(x, x).index()).or_insert(0) += 1;
        }
        assert!(preimages.values().all(|&c| c == 2));
    }
}

#[test]
fn character_orthogonality_up_to_125() {
    for (p, m) in prime_powers(125) {
        let f = FiniteField::new(p, m).unwrap();
        let q = f.order();
        for a in f.elements() {
            let total: num_complex::Complex64 =
                f.elements().map(|x| additive_char(&f, a, x)).sum();
            if a.is_zero() {
                assert!(approx_eq(total, num_complex::Complex64::new(q as f64, 0.0), 1e-9));
            } else {
                assert!(total.norm() < 1e-9, "additive orthogonality failed at q = {q}");
            }
        }
        for j in 0..(q - 1).min(24) {
            let total: num_complex::Complex64 =
                f.nonzero_elements().map(|x| mult_char(&f, j, x)).sum();
            if j == 0 {
                assert!(approx_eq(total, num_complex::Complex64::new((q - 1) as f64, 0.0), 1e-9));
            } else {
                assert!(total.norm() < 1e-9, "multiplicative orthogonality failed at q = {q}");
            }
        }
    }
}

#[test]
fn gauss_sums_agree_for_all_odd_q_up_to_125() {
    for (p, m) in odd_prime_powers(125) {
        let f = FiniteField::new(p, m).unwrap();
        let tol = 1e-9 * (f.order() as f64).sqrt();
        let numeric = gauss_sum_numeric(&f).unwrap();
        let closed = gauss_sum_closed(&f).unwrap();
        assert!(approx_eq(numeric, closed, tol), "Gauss sum mismatch at q = {}", f.order());
        assert!((numeric.norm() - (f.order() as f64).sqrt()).abs() <= tol);
    }
}

#[test]
fn weil_sums_agree_on_random_quadratics() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    for (p, m) in odd_prime_powers(125) {
        let f = FiniteField::new(p, m).unwrap();
        let q = f.order();
        let tol = 1e-9 * (q as f64).sqrt();
        for _ in 0..200 {
            let a2 = f.element(rng.random_range(1..q));
            let a1 = f.element(rng.random_range(0..q));
            let a0 = f.element(rng.random_range(0..q));
            let closed = weil_sum_quadratic(&f, a2, a1, a0).unwrap();
            let direct = weil_sum_direct(&f, a2, a1, a0);
            assert!(
                approx_eq(closed, direct, tol),
                "Weil sum mismatch at q = {q} for ({}, {}, {})",
                a2.index(),
                a1.index(),
                a0.index()
            );
        }
    }
}

#[test]
fn character_trace_counts_agree_for_all_odd_q_up_to_3125() {
    for (p, m) in odd_prime_powers(3125) {
        let f = FiniteField::new(p, m).unwrap();
        let closed = character_trace_counts(&f).unwrap();
        let direct = character_trace_counts_direct(&f).unwrap();
        assert_eq!(closed, direct, "count mismatch at q = {}", f.order());
        assert_eq!(closed.total(), f.order() - 1);
    }
}

#[test]
fn c1_zero_counts_agree_for_all_arguments_up_to_q_25() {
    for (p, m) in odd_prime_powers(25) {
        let f = FiniteField::new(p, m).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in 0..p {
                    let c = PrimeElement(c);
                    assert_eq!(
                        c1_zero_count(&f, a, b, c).unwrap(),
                        c1_zero_count_direct(&f, a, b, c).unwrap(),
                        "mismatch at q = {}, ({}, {}, {})",
                        f.order(),
                        a.index(),
                        b.index(),
                        c.value()
                    );
                }
            }
        }
    }
}

#[test]
fn c2_zero_counts_agree_for_all_arguments_up_to_q_25() {
    for p in [2u64, 3, 5] {
        let f = FiniteField::new(p, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in 0..p {
                    let c = PrimeElement(c);
                    assert_eq!(
                        c2_zero_count(&f, a, b, c).unwrap(),
                        c2_zero_count_direct(&f, a, b, c).unwrap(),
                        "mismatch at q = {}, ({}, {}, {})",
                        f.order(),
                        a.index(),
                        b.index(),
                        c.value()
                    );
                }
            }
        }
    }
}

/// The halving identity behind the square-set count: twice the count over
/// the square set equals the count over all x of `trace(a x^2 + b y) + c = 0`
/// plus the count at x = 0.
#[test]
fn c1_zero_count_halving_identity() {
    for (p, m) in [(3u64, 1u32), (5, 1), (3, 2)] {
        let f = FiniteField::new(p, m).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for cv in 0..p {
                    let c = PrimeElement(cv);
                    let over_squares = c1_zero_count_direct(&f, a, b, c).unwrap();
                    let mut all_x = 0u64;
                    for x in f.elements() {
                        let ax2 = f.mul(a, f.mul(x, x));
                        for y in f.elements() {
                            let t = f.trace(f.add(ax2, f.mul(b, y))).value();
                            if (t + cv) % p == 0 {
                                all_x += 1;
                            }
                        }
                    }
                    let mut at_zero = 0u64;
                    for y in f.elements() {
                        if (f.trace(f.mul(b, y)).value() + cv) % p == 0 {
                            at_zero += 1;
                        }
                    }
                    assert_eq!(2 * over_squares, all_x + at_zero);
                }
            }
        }
    }
}

fn random_matrix(f: &FiniteField, rows: usize, cols: usize, rng: &mut StdRng) -> GeneratorMatrix {
    let data = (0..rows * cols).map(|_| f.element(rng.random_range(0..f.order()))).collect();
    GeneratorMatrix::new(f.clone(), rows, cols, data)
}

/// Distinct codewords of the row space of a matrix over a prime field,
/// as residue vectors.
fn row_space_words(g: &GeneratorMatrix) -> HashSet<Vec<u64>> {
    assert_eq!(g.field().degree(), 1);
    // Over GF(p) the trace is the identity, so the trace stream of the
    // reduced basis enumerates the row space exactly once per word.
    g.row_space_basis().trace_word_set()
}

#[test]
fn trace_representation_equals_expanded_row_space() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut cases: Vec<GeneratorMatrix> = vec![build_c1(3, 2).unwrap(), build_c2(2).unwrap()];
    for &(p, m) in &[(2u64, 2u32), (3, 2), (2, 3), (5, 2)] {
        let f = FiniteField::new(p, m).unwrap();
        for _ in 0..4 {
            let rows = rng.random_range(1..=3usize);
            let cols = rng.random_range(1..=6usize);
            if (f.order() as u128).pow(rows as u32 * m) <= 1 << 20 {
                cases.push(random_matrix(&f, rows, cols, &mut rng));
            }
        }
    }
    for g in cases {
        let expanded = g.subfield_expand(&Basis::polynomial(g.field())).unwrap();
        let from_trace = g.trace_word_set();
        let from_expansion = row_space_words(&expanded);
        assert_eq!(from_trace, from_expansion);
    }
}

fn random_basis(f: &FiniteField, rng: &mut StdRng) -> Basis {
    loop {
        let elems: Vec<_> =
            (0..f.degree()).map(|_| f.element(rng.random_range(0..f.order()))).collect();
        if let Ok(b) = Basis::new(f, elems) {
            return b;
        }
    }
}

#[test]
fn subfield_expansion_is_basis_independent() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    for g in [build_c1(3, 2).unwrap(), build_c1(3, 3).unwrap(), build_c1(5, 2).unwrap()] {
        let f = g.field().clone();
        let reference = g.subfield_expand(&Basis::polynomial(&f)).unwrap();
        for _ in 0..20 {
            let b = random_basis(&f, &mut rng);
            let other = g.subfield_expand(&b).unwrap();
            assert!(reference.row_space_eq(&other), "row space changed under basis change");
        }
    }
}

/// Minimum dual distance by searching supports for a column dependency with
/// all coefficients nonzero, in increasing support size. The search is
/// bounded by rank + 1 (a Singleton-type cap for the dual), so it terminates
/// quickly on the small random codes it is used for. `None` when the dual
/// code is zero.
fn dual_min_distance(g: &GeneratorMatrix) -> Option<u64> {
    let f = g.field();
    let n = g.cols();
    let r = g.rank();
    if r == n {
        return None;
    }
    let q = f.order() as i128;
    let rank_of = |support: &[usize]| -> usize {
        let mut cols: Vec<Vec<_>> = support.iter().map(|&j| g.column(j)).collect();
        let mut rank = 0;
        for row in 0..g.rows() {
            let Some(pivot) = (rank..cols.len()).find(|&t| !cols[t][row].is_zero()) else {
                continue;
            };
            cols.swap(rank, pivot);
            let inv = f.inv(cols[rank][row]).unwrap();
            for t in 0..cols.len() {
                if t == rank || cols[t][row].is_zero() {
                    continue;
                }
                let scale = f.mul(cols[t][row], inv);
                for i in 0..g.rows() {
                    let v = f.sub(cols[t][i], f.mul(scale, cols[rank][i]));
                    cols[t][i] = v;
                }
            }
            rank += 1;
            if rank == cols.len() {
                break;
            }
        }
        rank
    };
    for w in 1..=(r + 1).min(n) {
        for support in (0..n).combinations(w) {
            // Inclusion-exclusion over subsets: the number of dependencies
            // with every coefficient nonzero is
            // sum_T (-1)^{w-|T|} q^{|T|-rank(T)}.
            let mut count: i128 = 0;
            for mask in 0u32..(1 << w) {
                let sub: Vec<usize> =
                    (0..w).filter(|&i| mask >> i & 1 == 1).map(|i| support[i]).collect();
                let t = sub.len();
                let term = q.pow((t - rank_of(&sub)) as u32);
                count += if (w - t) % 2 == 0 { term } else { -term };
            }
            debug_assert!(count >= 0);
            if count > 0 {
                return Some(w as u64);
            }
        }
    }
    unreachable!("a dependency exists within rank + 1 columns");
}

#[test]
fn subfield_dual_distance_dominates_parent_dual_distance() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    for &(p, m) in &[(2u64, 2u32), (3, 2)] {
        let f = FiniteField::new(p, m).unwrap();
        for _ in 0..25 {
            let k = rng.random_range(1..=3usize);
            let n = rng.random_range(4..=10usize);
            let g = random_matrix(&f, k, n, &mut rng);
            let Some(parent) = dual_min_distance(&g) else {
                continue;
            };
            let expanded = g.subfield_expand(&Basis::polynomial(&f)).unwrap();
            match dual_min_distance(&expanded) {
                Some(sub) => assert!(
                    sub >= parent,
                    "dual distance dropped from {parent} to {sub} (q = {}, n = {n}, k = {k})",
                    f.order()
                ),
                // Zero dual on the subfield side dominates vacuously.
                None => {}
            }
        }
    }
}

/// Re-substitutes the solved dual counts into the four power-moment
/// identities and checks them as exact integer identities.
fn assert_moments_consistent(wd: &WeightDistribution) {
    let (a1, a2, a3) = pless_dual_a123(wd).unwrap();
    let p = BigInt::from(wd.alphabet());
    let n = BigInt::from(wd.n());
    let pk = p.pow(wd.k());
    let moment = |t: u32| -> BigInt {
        wd.counts().iter().map(|(&w, &c)| BigInt::from(w).pow(t) * BigInt::from(c)).sum()
    };
    let (a1, a2, a3) = (BigInt::from(a1), BigInt::from(a2), BigInt::from(a3));
    assert_eq!(moment(0), pk);
    assert_eq!(&p * moment(1), &pk * (&p * &n - &n - &a1));
    assert_eq!(
        p.pow(2) * moment(2),
        &pk * ((&p - 1) * &n * (&p * &n - &n + 1)
            - (BigInt::from(2) * &p * &n - &p - BigInt::from(2) * &n + 2) * &a1
            + BigInt::from(2) * &a2)
    );
    let n2 = &n * &n;
    let p2 = &p * &p;
    let c0 = (&p - 1)
        * &n
        * (&p2 * &n2 - BigInt::from(2) * &p * &n2 + BigInt::from(3) * &p * &n - &p + &n2
            - BigInt::from(3) * &n
            + 2);
    let c1 = BigInt::from(3) * &p2 * &n2 - BigInt::from(3) * &p2 * &n
        - BigInt::from(6) * &p * &n2
        + BigInt::from(12) * &p * &n
        + &p2
        - BigInt::from(6) * &p
        + BigInt::from(3) * &n2
        - BigInt::from(9) * &n
        + 6;
    assert_eq!(
        p.pow(3) * moment(3),
        &pk * (c0 - c1 * &a1 + BigInt::from(6) * (&p * &n - &p - &n + 2) * &a2
            - BigInt::from(6) * &a3)
    );
}

#[test]
fn power_moments_are_consistent_and_match_column_search() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut cases = Vec::new();
    for &(p, m) in &[(3u64, 1u32), (5, 1), (3, 2)] {
        let g = build_c1(p, m).unwrap();
        cases.push(g.subfield_expand(&Basis::polynomial(g.field())).unwrap());
    }
    for p in [2u64, 3] {
        let g = build_c2(p).unwrap();
        cases.push(g.subfield_expand(&Basis::polynomial(g.field())).unwrap());
    }
    for p in [2u64, 3, 5] {
        let f = FiniteField::new(p, 1).unwrap();
        for _ in 0..5 {
            let k = rng.random_range(1..=4usize);
            let n = rng.random_range(k..=9usize);
            cases.push(random_matrix(&f, k, n, &mut rng));
        }
    }
    for g in cases {
        let wd = weight_distribution(&g, 1 << 22).unwrap();
        assert_moments_consistent(&wd);
        let (a1, a2, a3) = pless_dual_a123(&wd).unwrap();
        assert_eq!(a1, low_weight_dual_count(&g, 1, 1 << 26).unwrap());
        assert_eq!(a2, low_weight_dual_count(&g, 2, 1 << 26).unwrap());
        assert_eq!(a3, low_weight_dual_count(&g, 3, 1 << 26).unwrap());
    }
}

#[test]
fn c1_dual_counts_match_full_dual_enumeration_at_3_1() {
    let g = build_c1(3, 1).unwrap();
    let expanded = g.subfield_expand(&Basis::polynomial(g.field())).unwrap();
    let wd = weight_distribution(&expanded, 1 << 20).unwrap();
    let (a1, a2, a3) = pless_dual_a123(&wd).unwrap();
    // Independent route: enumerate all 3^5 dual codewords.
    let dual_wd = weight_distribution(&expanded.dual_basis(), 1 << 20).unwrap();
    assert_eq!(dual_wd.total(), 243u32.into());
    assert_eq!(a1, dual_wd.count(1).into());
    assert_eq!(a2, dual_wd.count(2).into());
    assert_eq!(a3, dual_wd.count(3).into());
    assert_eq!(a3, 22u32.into());
}
