//! The two code families and their closed-form weight distributions.
//!
//! Family `c1` (odd p, any degree m, q = p^m): a 3-row generator over GF(q)
//! whose first (q^2 + q)/2 columns are `(x, y, 1)` for `x` in the square set
//! and `y` in GF(q), followed by the two unit columns `(1,0,0)` and
//! `(0,1,0)`. Family `c2` (any prime p, degree fixed at 2, q = p^2): columns
//! `(norm(x), y, 1)` for nonzero `x` and `y` in GF(q), plus the same two
//! unit columns. The objects of interest are the subfield codes over GF(p)
//! generated by the coordinate expansions of these matrices.
//!
//! Column order is not pinned down by the weight theory (distributions are
//! permutation-invariant); the builders fix generator-power order with 0
//! first so emitted matrices are reproducible.

use std::collections::BTreeMap;

use crate::bound::ClassFlags;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::matrix::GeneratorMatrix;
use crate::weight::WeightDistribution;

/// The two supported code families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    C1,
    C2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::C1 => "c1",
            Family::C2 => "c2",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "c1" => Ok(Family::C1),
            "c2" => Ok(Family::C2),
            other => Err(format!("unknown family {other:?}, expected c1 or c2")),
        }
    }
}

/// `[n, k, d]` parameter triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

/// Everything the construction guarantees for one `(family, p, m)` instance:
/// primal and dual parameters, the dual optimality flags, and the closed-form
/// weight distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct ClaimSet {
    pub family: Family,
    pub p: u64,
    pub m: u32,
    pub primal: CodeParams,
    pub dual: CodeParams,
    pub dual_flags: ClassFlags,
    pub distribution: WeightDistribution,
}

fn c1_field(p: u64, m: u32) -> Result<FiniteField> {
    if p == 2 {
        return Err(Error::OddPrimeRequired);
    }
    FiniteField::new(p, m)
}

/// The `(x, y)` column index list shared by the c1 builder and its
/// trace-representation stream: squares (0 first, then ascending even
/// generator powers) crossed with the field in generator-power order.
fn c1_columns(field: &FiniteField) -> Result<Vec<(FieldElement, FieldElement)>> {
    let squares = field.squares()?;
    let mut cols = Vec::with_capacity(squares.len() * field.order() as usize);
    for &x in &squares {
        for y in field.elements_by_power() {
            cols.push((x, y));
        }
    }
    Ok(cols)
}

/// Column list for c2: nonzero `x` by generator power crossed with the field
/// in generator-power order; the matrix stores `norm(x)` in the top row.
fn c2_columns(field: &FiniteField) -> Vec<(FieldElement, FieldElement)> {
    let q = field.order();
    let mut cols = Vec::with_capacity(((q - 1) * q) as usize);
    for x in field.elements_by_power().skip(1) {
        for y in field.elements_by_power() {
            cols.push((x, y));
        }
    }
    cols
}

/// Builds the 3 x ((q^2+q)/2 + 2) generator matrix of family c1 over
/// GF(p^m), p odd.
pub fn build_c1(p: u64, m: u32) -> Result<GeneratorMatrix> {
    let field = c1_field(p, m)?;
    let cols = c1_columns(&field)?;
    let (zero, one) = (field.zero(), field.one());
    let mut top = Vec::with_capacity(cols.len() + 2);
    let mut mid = Vec::with_capacity(cols.len() + 2);
    let mut bot = Vec::with_capacity(cols.len() + 2);
    for &(x, y) in &cols {
        top.push(x);
        mid.push(y);
        bot.push(one);
    }
    top.extend([one, zero]);
    mid.extend([zero, one]);
    bot.extend([zero, zero]);
    Ok(GeneratorMatrix::from_rows(field, vec![top, mid, bot]))
}

/// Builds the 3 x (q(q-1) + 2) generator matrix of family c2 over GF(p^2).
pub fn build_c2(p: u64) -> Result<GeneratorMatrix> {
    let field = FiniteField::new(p, 2)?;
    let cols = c2_columns(&field);
    let (zero, one) = (field.zero(), field.one());
    let mut top = Vec::with_capacity(cols.len() + 2);
    let mut mid = Vec::with_capacity(cols.len() + 2);
    let mut bot = Vec::with_capacity(cols.len() + 2);
    for &(x, y) in &cols {
        top.push(field.embed(field.norm(x)));
        mid.push(y);
        bot.push(one);
    }
    top.extend([one, zero]);
    mid.extend([zero, one]);
    bot.extend([zero, zero]);
    Ok(GeneratorMatrix::from_rows(field, vec![top, mid, bot]))
}

/// Subfield codewords of family c1 as the trace representation streams them:
/// `((trace(a x + b y) + c)_{x,y}, trace(a), trace(b))` over all
/// `(a, b)` in `GF(q)^2` and `c` in `GF(p)`. Yields `q^2 p` words whose
/// distinct set is the subfield code.
pub fn c1_trace_words(p: u64, m: u32) -> Result<impl Iterator<Item = Vec<u64>>> {
    let field = c1_field(p, m)?;
    let cols = c1_columns(&field)?;
    Ok(family_trace_words(field, cols, false))
}

/// Subfield codewords of family c2 via its trace representation:
/// `((trace(a norm(x) + b y) + c)_{x,y}, trace(a), trace(b))`. Yields
/// `q^2 p` words; every distinct word repeats p times.
pub fn c2_trace_words(p: u64) -> Result<impl Iterator<Item = Vec<u64>>> {
    let field = FiniteField::new(p, 2)?;
    let cols = c2_columns(&field);
    Ok(family_trace_words(field, cols, true))
}

/// Streams the `q^2 p` trace-representation words of a family, indexed by
/// `(a, b, c)` with `a, b` over the field and `c` a prime residue.
struct FamilyTraceWords {
    field: FiniteField,
    /// First-row entries (already norm-mapped for c2) paired with `y`.
    cols: Vec<(FieldElement, FieldElement)>,
    a: u64,
    b: u64,
    c: u64,
    done: bool,
}

impl Iterator for FamilyTraceWords {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let f = &self.field;
        let p = f.characteristic();
        let (a, b) = (f.element(self.a), f.element(self.b));
        let mut word = Vec::with_capacity(self.cols.len() + 2);
        for &(x, y) in &self.cols {
            let t = f.trace(f.add(f.mul(a, x), f.mul(b, y)));
            word.push((t.value() + self.c) % p);
        }
        word.push(f.trace(a).value());
        word.push(f.trace(b).value());

        self.c += 1;
        if self.c == p {
            self.c = 0;
            self.b += 1;
            if self.b == f.order() {
                self.b = 0;
                self.a += 1;
                if self.a == f.order() {
                    self.done = true;
                }
            }
        }
        Some(word)
    }
}

fn family_trace_words(
    field: FiniteField,
    cols: Vec<(FieldElement, FieldElement)>,
    norm_first: bool,
) -> impl Iterator<Item = Vec<u64>> {
    let cols = if norm_first {
        cols.into_iter().map(|(x, y)| (field.embed(field.norm(x)), y)).collect()
    } else {
        cols
    };
    FamilyTraceWords { field, cols, a: 0, b: 0, c: 0, done: false }
}

/// `(-1)^e`
fn sign_pow(e: u64) -> i128 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn distribution_from_rows(
    n: u64,
    k: u32,
    p: u64,
    rows: Vec<(i128, i128)>,
) -> WeightDistribution {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for (w, c) in rows {
        assert!(w >= 0 && c >= 0, "table evaluated to a negative entry");
        assert!(w as u64 <= n, "table weight exceeds the length");
        if c == 0 {
            continue;
        }
        *counts.entry(w as u64).or_insert(0) += c as u64;
    }
    let total: u128 = counts.values().map(|&c| c as u128).sum();
    assert_eq!(total, (p as u128).pow(k), "table multiplicities do not sum to p^k");
    WeightDistribution::new(n as usize, k, p, counts)
}

/// Closed-form weight distribution of the c1 subfield code, evaluated in
/// exact integer arithmetic with coincident weights merged and vanishing
/// multiplicities dropped.
pub fn closed_form_wd_c1(p: u64, m: u32) -> Result<WeightDistribution> {
    c1_field(p, m)?; // validates p, m and the size cap
    let pi = p as i128;
    let q = pi.pow(m); // p^m
    let qq = q * q; // p^{2m}
    let qp = q / pi; // p^{m-1}
    let qqp = qq / pi; // p^{2m-1}
    let n = (qq + q) / 2 + 2;
    let k = 2 * m + 1;

    let mut rows: Vec<(i128, i128)> = vec![
        (0, 1),
        ((qq + q) / 2, pi - 1),
        ((qq + q - qqp - qp) / 2, (qp - 1) * q),
        ((qq + q - qqp - qp) / 2 + 1, (q - qp) * (2 * q - pi)),
        ((qq + q - qqp - qp) / 2 + 2, pi * (q - qp) * (q - qp)),
    ];
    if m % 2 == 1 {
        let u = sign_pow((p - 1) / 2 * ((m as u64 + 1) / 2));
        let p31 = pi.pow((3 * m - 1) / 2) * u; // signed p^{(3m-1)/2}
        rows.extend([
            ((qq - qqp) / 2, qp - 1),
            ((qq - qqp) / 2 + 1, q - qp),
            ((qq + q - qqp - p31) / 2, (qp - 1) * (pi - 1) / 2),
            ((qq + q - qqp - p31) / 2 + 1, qp * (pi - 1) * (pi - 1) / 2),
            ((qq + q - qqp + p31) / 2, (qp - 1) * (pi - 1) / 2),
            ((qq + q - qqp + p31) / 2 + 1, qp * (pi - 1) * (pi - 1) / 2),
        ]);
    } else {
        let s = sign_pow((p - 1) / 2 * (m as u64 / 2));
        let p32 = pi.pow((3 * m - 2) / 2) * s; // signed p^{(3m-2)/2}
        let ph = pi.pow((m - 2) / 2) * s; // signed p^{(m-2)/2}
        rows.extend([
            ((qq - qqp + (pi - 1) * p32) / 2, (qp - 1 - (pi - 1) * ph) / 2),
            ((qq - qqp + (pi - 1) * p32) / 2 + 1, (pi - 1) * (qp + ph) / 2),
            ((qq - qqp - (pi - 1) * p32) / 2, (qp - 1 + (pi - 1) * ph) / 2),
            ((qq - qqp - (pi - 1) * p32) / 2 + 1, (pi - 1) * (qp - ph) / 2),
            ((qq + q - qqp - p32) / 2, (pi - 1) * (qp - 1 - (pi - 1) * ph) / 2),
            ((qq + q - qqp - p32) / 2 + 1, (pi - 1) * (pi - 1) * (qp + ph) / 2),
            ((qq + q - qqp + p32) / 2, (pi - 1) * (qp - 1 + (pi - 1) * ph) / 2),
            ((qq + q - qqp + p32) / 2 + 1, (pi - 1) * (pi - 1) * (qp - ph) / 2),
        ]);
    }
    Ok(distribution_from_rows(n as u64, k, p, rows))
}

/// Closed-form weight distribution of the c2 subfield code (degree fixed
/// at 2), with coincident weights merged; at p = 2 the last row lands on
/// weight 1.
pub fn closed_form_wd_c2(p: u64) -> Result<WeightDistribution> {
    FiniteField::new(p, 2)?;
    let pi = p as i128;
    let q = pi * pi;
    let n = q * (q - 1) + 2;
    let rows: Vec<(i128, i128)> = vec![
        (0, 1),
        (q * (q - 1), pi - 1),
        (q * (q - 1) + 1, pi - 1),
        ((q - pi) * (q - 1), pi * (pi - 1)),
        ((q - pi) * (q - 1) + 1, pi * (pi - 1) * (2 * pi - 1)),
        ((q - pi) * (q - 1) + 2, (q - pi) * (q - pi)),
        (pi * pi * (pi + 1) * (pi - 2) + 1, (pi - 1) * (pi - 1)),
    ];
    Ok(distribution_from_rows(n as u64, 4, p, rows))
}

/// The guaranteed parameters, dual parameters, dual optimality flags and
/// closed-form distribution for one family instance.
pub fn expected_claims(family: Family, p: u64, m: u32) -> Result<ClaimSet> {
    match family {
        Family::C1 => {
            let distribution = closed_form_wd_c1(p, m)?;
            let pi = p as i128;
            let q = pi.pow(m);
            let n = (q * q + q) / 2 + 2;
            let k = (2 * m + 1) as u64;
            let d = if m == 1 {
                (pi * pi - pi + 2) / 2
            } else if m % 2 == 1 {
                (q * q + q - q * q / pi - pi.pow((3 * m - 1) / 2)) / 2
            } else {
                (q * q - q * q / pi - (pi - 1) * pi.pow((3 * m - 2) / 2)) / 2
            };
            Ok(ClaimSet {
                family,
                p,
                m,
                primal: CodeParams { n: n as u64, k, d: d as u64 },
                dual: CodeParams { n: n as u64, k: n as u64 - k, d: 3 },
                dual_flags: ClassFlags {
                    dimension_optimal: true,
                    almost_mds: m == 1,
                    ..Default::default()
                },
                distribution,
            })
        }
        Family::C2 => {
            if m != 2 {
                return Err(Error::DegreeNotTwo(m));
            }
            let distribution = closed_form_wd_c2(p)?;
            let n = p * p * (p * p - 1) + 2;
            let d = p * p * (p + 1) * (p.saturating_sub(2)) + 1;
            Ok(ClaimSet {
                family,
                p,
                m: 2,
                primal: CodeParams { n, k: 4, d },
                dual: CodeParams { n, k: n - 4, d: 2 },
                // The binary instance's dual is only optimal relative to
                // external code tables, which are out of reach here; no
                // sphere-packing flag is claimed for it.
                dual_flags: ClassFlags {
                    distance_optimal: p >= 3,
                    ..Default::default()
                },
                distribution,
            })
        }
    }
}
