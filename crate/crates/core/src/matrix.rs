//! Generator matrices over a finite field: row reduction, rank, dual bases,
//! subfield expansion along a basis, and trace-representation enumeration.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField, PrimeElement};

/// A `k x n` matrix over a finite field, viewed as the generator of the
/// linear code spanned by its rows. Zero rows and duplicate columns are
/// legal; row reduction drops redundancy where it matters.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl GeneratorMatrix {
    pub fn new(field: FiniteField, rows: usize, cols: usize, data: Vec<FieldElement>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must be nonempty");
        assert_eq!(data.len(), rows * cols);
        GeneratorMatrix { field, rows, cols, data }
    }

    pub fn from_rows(field: FiniteField, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(field: FiniteField, n: usize) -> Self {
        let mut data = vec![field.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = field.one();
        }
        Self::new(field, n, n, data)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.entry(i, j)).collect()
    }

    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref(&self) -> (GeneratorMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.entry(i, j).is_zero()) else {
                continue;
            };
            for jj in 0..m.cols {
                m.data.swap(r * m.cols + jj, pr * m.cols + jj);
            }
            let inv = f.inv(m.entry(r, j)).expect("pivot is nonzero");
            for jj in 0..m.cols {
                let v = f.mul(m.entry(r, jj), inv);
                m.data[r * m.cols + jj] = v;
            }
            for i in 0..m.rows {
                if i == r || m.entry(i, j).is_zero() {
                    continue;
                }
                let c = m.entry(i, j);
                for jj in 0..m.cols {
                    let v = f.sub(m.entry(i, jj), f.mul(c, m.entry(r, jj)));
                    m.data[i * m.cols + jj] = v;
                }
            }
            pivots.push(j);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The nonzero rows of the reduced row echelon form: an independent
    /// basis of the row space in canonical form.
    pub fn row_space_basis(&self) -> GeneratorMatrix {
        let (m, pivots) = self.rref();
        let r = pivots.len();
        if r == 0 {
            // Degenerate span {0}; keep a single zero row so the matrix
            // stays well formed.
            return GeneratorMatrix::new(self.field.clone(), 1, self.cols, vec![self.field.zero(); self.cols]);
        }
        let data = m.data[..r * m.cols].to_vec();
        GeneratorMatrix::new(self.field.clone(), r, self.cols, data)
    }

    /// Row spaces compared via canonical reduced forms.
    pub fn row_space_eq(&self, other: &GeneratorMatrix) -> bool {
        assert_eq!(self.field, other.field, "matrices over different fields");
        self.cols == other.cols && self.row_space_basis() == other.row_space_basis()
    }

    /// A generator matrix of the dual code (the null space of the rows).
    pub fn dual_basis(&self) -> GeneratorMatrix {
        let f = self.field.clone();
        let (m, pivots) = self.rref();
        let r = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        if free.is_empty() {
            return GeneratorMatrix::new(f.clone(), 1, self.cols, vec![f.zero(); self.cols]);
        }
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (s, &pc) in pivots.iter().enumerate().take(r) {
                v[pc] = f.neg(m.entry(s, fc));
            }
            rows.push(v);
        }
        GeneratorMatrix::from_rows(f, rows)
    }

    /// Expands every entry into its coordinate column with respect to
    /// `basis`, producing the `k m x n` matrix over GF(p) that generates the
    /// subfield code.
    pub fn subfield_expand(&self, basis: &Basis) -> Result<GeneratorMatrix> {
        assert_eq!(basis.field, self.field, "basis belongs to a different field");
        let prime = self.field.prime_subfield();
        let m = self.field.degree() as usize;
        let mut rows = Vec::with_capacity(self.rows * m);
        for i in 0..self.rows {
            let mut expanded: Vec<Vec<FieldElement>> = vec![Vec::with_capacity(self.cols); m];
            for j in 0..self.cols {
                let coords = basis.coordinates(self.entry(i, j));
                for (t, &c) in coords.iter().enumerate() {
                    expanded[t].push(prime.element(c));
                }
            }
            rows.extend(expanded);
        }
        Ok(GeneratorMatrix::from_rows(prime, rows))
    }

    /// Streams the trace representation: for every message over the field,
    /// the word of traces of the message-row products, as residues mod p.
    /// Yields `q^k` words; their distinct set is the subfield code.
    pub fn trace_words(&self) -> TraceWords<'_> {
        TraceWords { matrix: self, message: vec![0u64; self.rows], done: false }
    }

    /// Distinct trace-representation words, for set comparisons on small
    /// codes.
    pub fn trace_word_set(&self) -> HashSet<Vec<u64>> {
        self.trace_words().collect()
    }
}

/// Iterates messages of `GF(q)^k` in odometer order, emitting trace words.
pub struct TraceWords<'a> {
    matrix: &'a GeneratorMatrix,
    message: Vec<u64>,
    done: bool,
}

impl Iterator for TraceWords<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let g = self.matrix;
        let f = &g.field;
        let word: Vec<u64> = (0..g.cols)
            .map(|j| {
                let mut acc = f.zero();
                for (i, &mi) in self.message.iter().enumerate() {
                    acc = f.add(acc, f.mul(f.element(mi), g.entry(i, j)));
                }
                f.trace(acc).value()
            })
            .collect();
        // Advance the odometer.
        let q = f.order();
        let mut i = 0;
        loop {
            if i == self.message.len() {
                self.done = true;
                break;
            }
            self.message[i] += 1;
            if self.message[i] < q {
                break;
            }
            self.message[i] = 0;
            i += 1;
        }
        Some(word)
    }
}

/// An ordered basis of GF(p^m) over GF(p), with the change-of-basis matrix
/// precomputed so coordinate extraction is a single mat-vec mod p.
#[derive(Clone, Debug)]
pub struct Basis {
    field: FiniteField,
    elements: Vec<FieldElement>,
    /// Inverse of the matrix whose columns are the basis coordinate vectors
    /// in the polynomial basis; row-major, residues mod p.
    inverse: Vec<u64>,
}

impl Basis {
    /// The polynomial basis `1, x, .., x^{m-1}`.
    pub fn polynomial(field: &FiniteField) -> Basis {
        let m = field.degree() as usize;
        let elements: Vec<FieldElement> = (0..m)
            .map(|i| field.element((field.characteristic() as u128).pow(i as u32) as u64))
            .collect();
        Basis::new(field, elements).expect("polynomial basis is independent")
    }

    pub fn new(field: &FiniteField, elements: Vec<FieldElement>) -> Result<Basis> {
        let m = field.degree() as usize;
        assert_eq!(elements.len(), m, "basis must have m elements");
        let p = field.characteristic();
        // Columns are the coordinate vectors of the basis elements.
        let mut mat = vec![0u64; m * m];
        for (j, &e) in elements.iter().enumerate() {
            for (i, c) in field.coeffs(e).into_iter().enumerate() {
                mat[i * m + j] = c;
            }
        }
        let inverse = invert_mod_p(&mat, m, p).ok_or(Error::DependentBasis)?;
        Ok(Basis { field: field.clone(), elements, inverse })
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    /// Coordinates of `x` with respect to this basis, as residues mod p.
    pub fn coordinates(&self, x: FieldElement) -> Vec<u64> {
        let m = self.elements.len();
        let p = self.field.characteristic();
        let digits = self.field.coeffs(x);
        (0..m)
            .map(|i| {
                let mut acc = 0u64;
                for (j, &d) in digits.iter().enumerate() {
                    acc = (acc + self.inverse[i * m + j] * d) % p;
                }
                acc
            })
            .collect()
    }
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

/// Gauss-Jordan inversion of an `m x m` matrix of residues mod a prime;
/// `None` when singular.
fn invert_mod_p(mat: &[u64], m: usize, p: u64) -> Option<Vec<u64>> {
    let mut a = mat.to_vec();
    let mut inv = vec![0u64; m * m];
    for i in 0..m {
        inv[i * m + i] = 1;
    }
    for col in 0..m {
        let pivot = (col..m).find(|&r| a[r * m + col] % p != 0)?;
        if pivot != col {
            for j in 0..m {
                a.swap(col * m + j, pivot * m + j);
                inv.swap(col * m + j, pivot * m + j);
            }
        }
        let scale = pow_mod(a[col * m + col], p - 2, p);
        for j in 0..m {
            a[col * m + j] = a[col * m + j] * scale % p;
            inv[col * m + j] = inv[col * m + j] * scale % p;
        }
        for r in 0..m {
            if r == col {
                continue;
            }
            let c = a[r * m + col] % p;
            if c == 0 {
                continue;
            }
            for j in 0..m {
                a[r * m + j] = (a[r * m + j] + (p - c) * a[col * m + j]) % p;
                inv[r * m + j] = (inv[r * m + j] + (p - c) * inv[col * m + j]) % p;
            }
        }
    }
    Some(inv)
}

/// Embeds a matrix of prime residues into a GF(p) generator matrix.
pub fn matrix_from_residues(field: &FiniteField, rows: Vec<Vec<PrimeElement>>) -> GeneratorMatrix {
    assert_eq!(field.degree(), 1, "residue matrices live over a prime field");
    let converted = rows
        .into_iter()
        .map(|row| row.into_iter().map(|c| field.embed(c)).collect())
        .collect();
    GeneratorMatrix::from_rows(field.clone(), converted)
}
