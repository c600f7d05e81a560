//! Exact arithmetic in GF(p^m).
//!
//! A [`FiniteField`] is built from a prime `p` and a degree `m`. The modulus
//! is the lexicographically smallest (coefficient list, constant term first)
//! monic primitive polynomial of degree `m` over Z_p, so a field is
//! reproducible bit-for-bit across runs and machines. Elements are stored as
//! indices `sum(c_i * p^i)` encoding their coordinate vector `(c_0, ..,
//! c_{m-1})` in the polynomial basis `1, x, .., x^{m-1}`.
//!
//! Multiplication, inversion and powering go through precomputed log/antilog
//! tables over the generator, since enumeration loops dominate every
//! downstream workload. Fields are immutable after construction and all
//! operations take `&self`, so one field can be shared freely across threads.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Hard cap on the number of field elements; larger fields cannot be
/// tabulated.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// An element of a [`FiniteField`], identified by its coordinate vector in
/// the polynomial basis (packed as base-`p` digits of `index`).
///
/// Elements are plain copyable handles; all arithmetic goes through the
/// owning field. Mixing elements of different field instances panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement {
    field: u32,
    index: u32,
}

impl FieldElement {
    /// Packed coordinate vector: `sum(c_i * p^i)`.
    pub fn index(self) -> u64 {
        self.index as u64
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }
}

/// An element of the prime subfield GF(p), as a plain residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct PrimeElement(pub u64);

impl PrimeElement {
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldInner {
    id: u32,
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, coefficient list of length `m + 1`, constant term first.
    modulus: Vec<u64>,
    /// `exp[j]` = index of `generator^j`, for `j` in `0 .. 2(q-1)`.
    exp: Vec<u32>,
    /// `log[index]` for nonzero indices; `log[0] = NO_LOG`.
    log: Vec<u32>,
    /// trace(x^i) for `i` in `0 .. m`, as residues mod p. Trace is Z_p-linear,
    /// so these determine the trace of every element.
    trace_basis: Vec<u64>,
    prime: OnceLock<FiniteField>,
}

/// A realization of GF(p^m). Cheap to clone (shared immutable tables).
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<FieldInner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for FiniteField {}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.m)
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u64, u32), FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), FiniteField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn next_field_id() -> u32 {
    static NEXT: AtomicU32 = AtomicU32::new(1);
    NEXT.fetch_add(1, Ordering::Relaxed)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("a prime modulus always has a primitive root")
}

/// Dense polynomial arithmetic over Z_p, used only during modulus search.
mod poly {
    use super::pow_mod;

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv_lead = pow_mod(b[db], p - 2, p);
        while r.len() > db {
            let da = r.len() - 1;
            let c = r[da] * inv_lead % p;
            for i in 0..=db {
                let idx = da - db + i;
                r[idx] = (r[idx] + p - c * b[i] % p) % p;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        rem(&prod, f, p)
    }

    pub fn pow_x_mod(mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(&[0, 1], f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            out[i] = (ai + p - bi) % p;
        }
        trim(&mut out);
        out
    }
}

fn is_irreducible(coeffs: &[u64], p: u64, m: u32) -> bool {
    // coeffs has length m + 1 and is monic. Standard criterion:
    // x^{p^m} == x mod f, and gcd(x^{p^{m/r}} - x, f) = 1 for primes r | m.
    let x = vec![0u64, 1];
    let pm = (p as u128).pow(m);
    if pm > u64::MAX as u128 {
        return false;
    }
    let xpm = poly::pow_x_mod(pm as u64, coeffs, p);
    if poly::sub(&xpm, &x, p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(m as u64) {
        let e = (p as u128).pow(m / r as u32) as u64;
        let xe = poly::pow_x_mod(e, coeffs, p);
        let g = poly::gcd(&poly::sub(&xe, &x, p), coeffs, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn residue_class_is_primitive(coeffs: &[u64], p: u64, q: u64) -> bool {
    // Order of the class of x in the field Z_p[x]/(f) must be exactly q - 1.
    for r in prime_factors(q - 1) {
        let xe = poly::pow_x_mod((q - 1) / r, coeffs, p);
        if xe == vec![1u64] {
            return false;
        }
    }
    true
}

/// Finds the lexicographically smallest monic primitive polynomial of degree
/// `m >= 2` over Z_p (coefficient list compared constant term first).
fn smallest_primitive_modulus(p: u64, m: u32) -> Vec<u64> {
    let total = (p as u128).pow(m);
    let mut j: u128 = 0;
    while j < total {
        let mut coeffs = vec![0u64; m as usize + 1];
        coeffs[m as usize] = 1;
        let mut rest = j;
        // Digit order: coeffs[0] is the most significant lexicographic
        // position, so it varies slowest.
        for i in (0..m as usize).rev() {
            coeffs[i] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        j += 1;
        if coeffs[0] == 0 {
            continue; // divisible by x
        }
        let q = (p as u128).pow(m) as u64;
        if is_irreducible(&coeffs, p, m) && residue_class_is_primitive(&coeffs, p, q) {
            return coeffs;
        }
    }
    unreachable!("primitive polynomials of every degree exist over Z_p")
}

impl FiniteField {
    /// Builds (or fetches from the process-wide cache) the canonical
    /// realization of GF(p^m).
    pub fn new(p: u64, m: u32) -> Result<FiniteField> {
        if m < 1 {
            return Err(Error::InvalidDegree);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let q = (p as u128).pow(m);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let mut cache = field_cache().lock().unwrap();
        if let Some(f) = cache.get(&(p, m)) {
            return Ok(f.clone());
        }
        let field = Self::build(p, m, q as u64);
        cache.insert((p, m), field.clone());
        Ok(field)
    }

    fn build(p: u64, m: u32, q: u64) -> FiniteField {
        let (modulus, gen_digits) = if m == 1 {
            let g = smallest_primitive_root(p);
            // Degree-1 primitive modulus x + c0: its root -c0 must generate
            // GF(p)*. The smallest such c0 wins.
            let factors = prime_factors(p - 1);
            let c0 = (1..p)
                .find(|&c| {
                    let root = (p - c) % p;
                    root != 0 && factors.iter().all(|&r| pow_mod(root, (p - 1) / r, p) != 1)
                })
                .unwrap_or(1);
            (vec![c0, 1], vec![g])
        } else {
            let modulus = smallest_primitive_modulus(p, m);
            let mut g = vec![0u64; m as usize];
            g[1] = 1; // the class of x
            (modulus, g)
        };

        // x^m = -(c_{m-1} x^{m-1} + ... + c_0) mod f, used by multiply-by-x.
        let reduction: Vec<u64> = modulus[..m as usize].iter().map(|&c| (p - c % p) % p).collect();

        let gen_index = Self::digits_to_index(&gen_digits, p);
        let mut exp = vec![0u32; (2 * (q - 1)) as usize];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = vec![0u64; m as usize];
        cur[0] = 1;
        for j in 0..(q - 1) {
            let idx = Self::digits_to_index(&cur, p) as u32;
            exp[j as usize] = idx;
            exp[(j + q - 1) as usize] = idx;
            debug_assert_eq!(log[idx as usize], NO_LOG, "generator order below q - 1");
            log[idx as usize] = j as u32;
            // cur *= generator
            cur = Self::mul_digits(&cur, &gen_digits, &reduction, p, m);
        }
        debug_assert_eq!(Self::digits_to_index(&cur, p) as u32, exp[0]);

        let inner = FieldInner {
            id: next_field_id(),
            p,
            m,
            q,
            modulus,
            exp,
            log,
            trace_basis: Vec::new(),
            prime: OnceLock::new(),
        };
        let mut field = FiniteField { inner: Arc::new(inner) };

        // trace(x^i) = sum_j (x^i)^{p^j}; every power of the generator is a
        // table lookup, so compute the m basis traces directly.
        let mut trace_basis = vec![0u64; m as usize];
        trace_basis[0] = (m as u64) % p; // trace(1)
        for i in 1..m as usize {
            let base_log = field.log_of_index(field.index_of_basis_power(i, gen_index));
            let mut acc = field.zero();
            for j in 0..m {
                let e = ((base_log as u128) * (p as u128).pow(j) % (q as u128 - 1)) as u64;
                acc = field.add(acc, field.element_of_log(e));
            }
            debug_assert!(acc.index() < p, "trace must land in the prime subfield");
            trace_basis[i] = acc.index();
        }
        Arc::get_mut(&mut field.inner).unwrap().trace_basis = trace_basis;
        field
    }

    fn index_of_basis_power(&self, i: usize, _gen_index: u64) -> u64 {
        // x^i for i < m is the element with a single coordinate 1 at digit i.
        (self.inner.p as u128).pow(i as u32) as u64
    }

    fn log_of_index(&self, index: u64) -> u64 {
        debug_assert_ne!(index, 0);
        self.inner.log[index as usize] as u64
    }

    fn element_of_log(&self, j: u64) -> FieldElement {
        FieldElement { field: self.inner.id, index: self.inner.exp[j as usize] }
    }

    fn digits_to_index(digits: &[u64], p: u64) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    fn mul_digits(a: &[u64], b: &[u64], reduction: &[u64], p: u64, m: u32) -> Vec<u64> {
        let m = m as usize;
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        // Reduce degrees m .. 2m-2 using x^m = reduction.
        for d in (m..2 * m).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (t, &r) in reduction.iter().enumerate() {
                prod[d - m + t] = (prod[d - m + t] + c * r) % p;
            }
        }
        prod.truncate(m);
        prod
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// Number of elements, q = p^m.
    pub fn order(&self) -> u64 {
        self.inner.q
    }

    /// Monic modulus polynomial, coefficient list with constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// The designated primitive element (smallest primitive root for m = 1,
    /// the class of the indeterminate otherwise).
    pub fn generator(&self) -> FieldElement {
        self.element_of_log(1 % (self.inner.q - 1))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.inner.id, index: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.inner.id, index: 1 }
    }

    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.inner.q, "element index {index} out of range");
        FieldElement { field: self.inner.id, index: index as u32 }
    }

    /// Element with the given coordinates (constant first); coordinates are
    /// reduced mod p and missing trailing ones default to zero.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.inner.m as usize, "too many coordinates");
        let p = self.inner.p;
        let index = coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c % p);
        self.element(index)
    }

    /// Coordinates of `x` in the polynomial basis, constant term first.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        self.check(x);
        let p = self.inner.p;
        let mut idx = x.index();
        let mut out = vec![0u64; self.inner.m as usize];
        for c in out.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        out
    }

    /// Embeds a prime-subfield residue as a field element.
    pub fn embed(&self, c: PrimeElement) -> FieldElement {
        assert!(c.0 < self.inner.p, "residue {} out of range mod {}", c.0, self.inner.p);
        self.element(c.0)
    }

    /// All elements, ordered by packed index.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(move |i| self.element(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.inner.q).map(move |i| self.element(i))
    }

    /// All elements in generator-power order: 0 first, then g^0, g^1, ...
    /// This is the deterministic column order used by the code builders.
    pub fn elements_by_power(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(self.zero()).chain((0..self.inner.q - 1).map(move |j| self.element_of_log(j)))
    }

    /// Discrete log base the generator; `None` for zero.
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        self.check(x);
        if x.is_zero() {
            None
        } else {
            Some(self.log_of_index(x.index()))
        }
    }

    fn check(&self, x: FieldElement) {
        assert_eq!(x.field, self.inner.id, "element does not belong to this field");
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let p = self.inner.p;
        if self.inner.m == 1 {
            return self.element((a.index() + b.index()) % p);
        }
        let mut ia = a.index();
        let mut ib = b.index();
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.m {
            out += (ia % p + ib % p) % p * place;
            ia /= p;
            ib /= p;
            place *= p;
        }
        self.element(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        let p = self.inner.p;
        let mut ia = a.index();
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.m {
            out += (p - ia % p) % p * place;
            ia /= p;
            place *= p;
        }
        self.element(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let j = self.log_of_index(a.index()) + self.log_of_index(b.index());
        self.element_of_log(j)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q1 = self.inner.q - 1;
        Ok(self.element_of_log((q1 - self.log_of_index(a.index())) % q1))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent. Exponents are reduced mod q - 1 for
    /// nonzero bases; a negative exponent of zero is an error.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        self.check(a);
        if a.is_zero() {
            return match e {
                0 => Ok(self.one()),
                _ if e > 0 => Ok(self.zero()),
                _ => Err(Error::NegativePowerOfZero),
            };
        }
        let q1 = (self.inner.q - 1) as i128;
        let j = ((self.log_of_index(a.index()) as i128) * (e as i128)).rem_euclid(q1);
        Ok(self.element_of_log(j as u64))
    }

    /// Trace down to GF(p): `x + x^p + ... + x^{p^{m-1}}`.
    pub fn trace(&self, x: FieldElement) -> PrimeElement {
        self.check(x);
        let p = self.inner.p;
        let mut idx = x.index();
        let mut acc = 0u64;
        for i in 0..self.inner.m as usize {
            acc = (acc + idx % p * self.inner.trace_basis[i]) % p;
            idx /= p;
        }
        PrimeElement(acc)
    }

    /// Norm down to GF(p): `x^{(q-1)/(p-1)}` for nonzero `x`, with
    /// `norm(0) = 0`.
    pub fn norm(&self, x: FieldElement) -> PrimeElement {
        self.check(x);
        if x.is_zero() {
            return PrimeElement(0);
        }
        let q1 = self.inner.q - 1;
        let e = q1 / (self.inner.p - 1);
        let idx = self.element_of_log(self.log_of_index(x.index()) * e % q1).index();
        debug_assert!(idx < self.inner.p);
        PrimeElement(idx)
    }

    /// Quadratic character: +1 on nonzero squares, -1 on nonsquares, 0 at 0.
    pub fn quadratic_character(&self, x: FieldElement) -> Result<i32> {
        self.check(x);
        if x.is_zero() {
            return Ok(0);
        }
        if self.inner.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(if self.log_of_index(x.index()) % 2 == 0 { 1 } else { -1 })
    }

    /// The image of the squaring map, zero included: (q+1)/2 elements,
    /// ordered 0 first and then by increasing even generator power.
    pub fn squares(&self) -> Result<Vec<FieldElement>> {
        if self.inner.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let mut out = Vec::with_capacity(((self.inner.q + 1) / 2) as usize);
        out.push(self.zero());
        let mut j = 0;
        while j < self.inner.q - 1 {
            out.push(self.element_of_log(j));
            j += 2;
        }
        Ok(out)
    }

    /// The prime subfield GF(p) as its own field object.
    pub fn prime_subfield(&self) -> FiniteField {
        if self.inner.m == 1 {
            return self.clone();
        }
        self.inner
            .prime
            .get_or_init(|| FiniteField::new(self.inner.p, 1).expect("p already validated"))
            .clone()
    }

    /// Renders an element as a polynomial in `x` (or a plain residue when
    /// m = 1).
    pub fn format_element(&self, x: FieldElement) -> String {
        let coeffs = self.coeffs(x);
        if self.inner.m == 1 {
            return coeffs[0].to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// Renders the modulus polynomial, highest degree first.
    pub fn format_modulus(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.inner.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}
