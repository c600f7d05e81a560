//! Additive and multiplicative characters, Gauss and Weil sums, and the
//! exact element counts behind the weight analyses of the two code families.
//!
//! Character sums are evaluated in double precision and only ever compared
//! against closed forms within a stated tolerance; every quantity consumed
//! by the code pipeline (the `*_count` functions) is an exact integer.
//! Each closed form here is paired with a direct-enumeration twin so the two
//! routes can be checked against each other.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField, PrimeElement};

/// exp(2*pi*i * k / n)
fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let theta = TAU * (k % n) as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// Additive character `x -> zeta_p^{trace(a x)}`.
pub fn additive_char(field: &FiniteField, a: FieldElement, x: FieldElement) -> Complex64 {
    let t = field.trace(field.mul(a, x));
    root_of_unity(t.value(), field.characteristic())
}

/// The canonical additive character (a = 1).
pub fn canonical_char(field: &FiniteField, x: FieldElement) -> Complex64 {
    root_of_unity(field.trace(x).value(), field.characteristic())
}

/// Multiplicative character `psi_j(g^k) = zeta_{q-1}^{jk}`; defined on
/// nonzero elements only.
pub fn mult_char(field: &FiniteField, j: u64, x: FieldElement) -> Complex64 {
    let k = field.log(x).expect("multiplicative characters are defined on nonzero elements");
    let q1 = field.order() - 1;
    root_of_unity(j % q1 * k % q1, q1)
}

/// Legendre symbol of a residue mod an odd prime: +1 / -1 / 0.
pub fn legendre(c: PrimeElement, p: u64) -> i32 {
    debug_assert!(p % 2 == 1);
    let c = c.value() % p;
    if c == 0 {
        return 0;
    }
    let mut acc = 1u64;
    let mut base = c;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

fn require_odd(field: &FiniteField) -> Result<()> {
    if field.characteristic() == 2 {
        Err(Error::EvenCharacteristic)
    } else {
        Ok(())
    }
}

/// Quadratic Gauss sum by closed form:
/// `(-1)^{m-1} sqrt(q)` for p = 1 mod 4, `(-1)^{m-1} i^m sqrt(q)` for
/// p = 3 mod 4.
pub fn gauss_sum_closed(field: &FiniteField) -> Result<Complex64> {
    require_odd(field)?;
    let p = field.characteristic();
    let m = field.degree();
    let sqrt_q = (field.order() as f64).sqrt();
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let value = if p % 4 == 1 {
        Complex64::new(sign * sqrt_q, 0.0)
    } else {
        let i_pow_m = match m % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        i_pow_m * sign * sqrt_q
    };
    Ok(value)
}

/// Quadratic Gauss sum by direct summation of `eta(x) chi(x)` over the
/// nonzero elements.
pub fn gauss_sum_numeric(field: &FiniteField) -> Result<Complex64> {
    require_odd(field)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for x in field.nonzero_elements() {
        let eta = field.quadratic_character(x)? as f64;
        acc += canonical_char(field, x) * eta;
    }
    Ok(acc)
}

/// Weil sum of a quadratic `a2 x^2 + a1 x + a0` by closed form:
/// `chi(a0 - a1^2 (4 a2)^{-1}) eta(a2) G(eta, chi)`.
pub fn weil_sum_quadratic(
    field: &FiniteField,
    a2: FieldElement,
    a1: FieldElement,
    a0: FieldElement,
) -> Result<Complex64> {
    require_odd(field)?;
    if a2.is_zero() {
        return Err(Error::NotQuadratic);
    }
    let four = {
        let two = field.add(field.one(), field.one());
        field.add(two, two)
    };
    let shift = field.sub(a0, field.div(field.mul(a1, a1), field.mul(four, a2))?);
    let eta = field.quadratic_character(a2)? as f64;
    Ok(canonical_char(field, shift) * eta * gauss_sum_closed(field)?)
}

/// Weil sum by direct summation of `chi(a2 x^2 + a1 x + a0)` over the field.
pub fn weil_sum_direct(
    field: &FiniteField,
    a2: FieldElement,
    a1: FieldElement,
    a0: FieldElement,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for x in field.elements() {
        let fx = field.add(field.add(field.mul(field.mul(a2, x), x), field.mul(a1, x)), a0);
        acc += canonical_char(field, fx);
    }
    acc
}

/// Cardinalities of the four classes of nonzero elements split by
/// quadratic character (square / nonsquare) and trace (zero / nonzero).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountQuadruple {
    pub sq_tr0: u64,
    pub sq_trx: u64,
    pub nsq_tr0: u64,
    pub nsq_trx: u64,
}

impl CountQuadruple {
    pub fn total(&self) -> u64 {
        self.sq_tr0 + self.sq_trx + self.nsq_tr0 + self.nsq_trx
    }
}

/// Sign `(-1)^e` as i128.
fn sign_pow(e: u64) -> i128 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `character_trace_counts` by closed form, with separate even/odd degree
/// branches. For even m the correction carries the sign
/// `(-1)^{(p-1)m/4}`.
pub fn character_trace_counts(field: &FiniteField) -> Result<CountQuadruple> {
    require_odd(field)?;
    let p = field.characteristic() as i128;
    let m = field.degree() as u64;
    let qp = (field.characteristic() as i128).pow(field.degree() - 1); // p^{m-1}
    let quad = if m % 2 == 1 {
        CountQuadruple {
            sq_tr0: ((qp - 1) / 2) as u64,
            sq_trx: (qp * (p - 1) / 2) as u64,
            nsq_tr0: ((qp - 1) / 2) as u64,
            nsq_trx: (qp * (p - 1) / 2) as u64,
        }
    } else {
        let s = sign_pow((p as u64 - 1) / 2 * (m / 2));
        let ph = (p).pow((field.degree() - 2) / 2); // p^{(m-2)/2}
        CountQuadruple {
            sq_tr0: ((qp - 1 - (p - 1) * ph * s) / 2) as u64,
            sq_trx: ((p - 1) * (qp + ph * s) / 2) as u64,
            nsq_tr0: ((qp - 1 + (p - 1) * ph * s) / 2) as u64,
            nsq_trx: ((p - 1) * (qp - ph * s) / 2) as u64,
        }
    };
    debug_assert_eq!(quad.total(), field.order() - 1);
    Ok(quad)
}

/// `character_trace_counts` by enumerating the nonzero elements.
pub fn character_trace_counts_direct(field: &FiniteField) -> Result<CountQuadruple> {
    require_odd(field)?;
    let mut quad = CountQuadruple { sq_tr0: 0, sq_trx: 0, nsq_tr0: 0, nsq_trx: 0 };
    for a in field.nonzero_elements() {
        let square = field.quadratic_character(a)? == 1;
        let tr0 = field.trace(a).is_zero();
        match (square, tr0) {
            (true, true) => quad.sq_tr0 += 1,
            (true, false) => quad.sq_trx += 1,
            (false, true) => quad.nsq_tr0 += 1,
            (false, false) => quad.nsq_trx += 1,
        }
    }
    Ok(quad)
}

/// Number of pairs `(x, y)` with `x` in the square set, `y` in the field and
/// `trace(a x + b y) + c = 0`, by the closed-form case split. Zero counts of
/// one codeword coordinate block in family c1.
pub fn c1_zero_count(
    field: &FiniteField,
    a: FieldElement,
    b: FieldElement,
    c: PrimeElement,
) -> Result<u64> {
    require_odd(field)?;
    let p = field.characteristic();
    let m = field.degree() as u64;
    let pi = p as i128;
    let q = field.order() as i128;
    let qq = q * q; // p^{2m}
    let qqp = qq / pi; // p^{2m-1}
    let value: i128 = if a.is_zero() && b.is_zero() && c.is_zero() {
        (qq + q) / 2
    } else if a.is_zero() && b.is_zero() {
        0
    } else if !b.is_zero() {
        (qqp + q / pi) / 2
    } else {
        // a != 0, b = 0
        let eta = field.quadratic_character(a)? as i128;
        if m % 2 == 1 {
            if c.is_zero() {
                (qqp + q) / 2
            } else {
                let u = sign_pow((p - 1) / 2 * ((m + 1) / 2));
                let sign = eta * legendre(c, p) as i128 * u;
                (qqp + sign * pi.pow(((3 * m - 1) / 2) as u32)) / 2
            }
        } else {
            let s = sign_pow((p - 1) / 2 * (m / 2));
            let p32 = pi.pow(((3 * m - 2) / 2) as u32);
            if c.is_zero() {
                (qqp + q - eta * s * (pi - 1) * p32) / 2
            } else {
                (qqp + eta * s * p32) / 2
            }
        }
    };
    debug_assert!(value >= 0);
    Ok(value as u64)
}

/// `c1_zero_count` by the direct double loop over the square set and the
/// field.
pub fn c1_zero_count_direct(
    field: &FiniteField,
    a: FieldElement,
    b: FieldElement,
    c: PrimeElement,
) -> Result<u64> {
    let squares = field.squares()?;
    let p = field.characteristic();
    let mut count = 0u64;
    for &x in &squares {
        let tx = field.trace(field.mul(a, x)).value();
        for y in field.elements() {
            let ty = field.trace(field.mul(b, y)).value();
            if (tx + ty + c.value()) % p == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Number of pairs `(x, y)` with `x` nonzero, `y` in the field and
/// `trace(a norm(x) + b y) + c = 0`, for a degree-2 extension of any prime.
/// Zero counts of one codeword coordinate block in family c2.
///
/// The final case requires `trace(a) != 0`: the published case split lists
/// `trace(a) = 0` there, which contradicts its own zero case, and the
/// direct-enumeration twin confirms the corrected condition.
pub fn c2_zero_count(
    field: &FiniteField,
    a: FieldElement,
    b: FieldElement,
    c: PrimeElement,
) -> Result<u64> {
    if field.degree() != 2 {
        return Err(Error::DegreeNotTwo(field.degree()));
    }
    let p = field.characteristic();
    let q = field.order(); // p^2
    let value = if a.is_zero() && b.is_zero() && c.is_zero() {
        q * (q - 1)
    } else if a.is_zero() && b.is_zero() {
        0
    } else if !b.is_zero() {
        q * (q - 1) / p
    } else if field.trace(a).is_zero() {
        // a != 0, b = 0, trace(a) = 0: norm maps onto GF(p)*, and
        // trace(a s) = s trace(a) = 0 for scalar s, so the condition
        // degenerates to c = 0.
        if c.is_zero() {
            q * (q - 1)
        } else {
            0
        }
    } else if c.is_zero() {
        0
    } else {
        p * p * (p + 1)
    };
    Ok(value)
}

/// `c2_zero_count` by the direct double loop over nonzero `x` and all `y`.
pub fn c2_zero_count_direct(
    field: &FiniteField,
    a: FieldElement,
    b: FieldElement,
    c: PrimeElement,
) -> Result<u64> {
    if field.degree() != 2 {
        return Err(Error::DegreeNotTwo(field.degree()));
    }
    let p = field.characteristic();
    let mut count = 0u64;
    for x in field.nonzero_elements() {
        let nx = field.embed(field.norm(x));
        let tx = field.trace(field.mul(a, nx)).value();
        for y in field.elements() {
            let ty = field.trace(field.mul(b, y)).value();
            if (tx + ty + c.value()) % p == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

pub fn approx_eq(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol(field: &FiniteField) -> f64 {
        1e-9 * (field.order() as f64).sqrt()
    }

    #[test]
    fn additive_char_examples() {
        let f3 = FiniteField::new(3, 1).unwrap();
        for x in f3.elements() {
            assert!(approx_eq(additive_char(&f3, f3.zero(), x), Complex64::new(1.0, 0.0), 1e-12));
        }
        let zeta3 = Complex64::new((TAU / 3.0).cos(), (TAU / 3.0).sin());
        assert!(approx_eq(additive_char(&f3, f3.one(), f3.one()), zeta3, 1e-12));

        // In GF(9), trace(1) = 2, so the value is zeta_3^2 = exp(4 pi i / 3).
        let f9 = FiniteField::new(3, 2).unwrap();
        let expected = Complex64::new((2.0 * TAU / 3.0).cos(), (2.0 * TAU / 3.0).sin());
        assert!(approx_eq(additive_char(&f9, f9.one(), f9.one()), expected, 1e-12));
    }

    #[test]
    fn additive_char_shifts_argument() {
        let f = FiniteField::new(5, 2).unwrap();
        let a = f.element(7);
        for x in f.elements() {
            let lhs = additive_char(&f, a, x);
            let rhs = additive_char(&f, f.one(), f.mul(a, x));
            assert!(approx_eq(lhs, rhs, 1e-12));
        }
    }

    #[test]
    fn gauss_sum_closed_examples() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert!(approx_eq(
            gauss_sum_closed(&f5).unwrap(),
            Complex64::new(5f64.sqrt(), 0.0),
            1e-12
        ));
        let f3 = FiniteField::new(3, 1).unwrap();
        assert!(approx_eq(
            gauss_sum_closed(&f3).unwrap(),
            Complex64::new(0.0, 3f64.sqrt()),
            1e-12
        ));
        let f9 = FiniteField::new(3, 2).unwrap();
        assert!(approx_eq(gauss_sum_closed(&f9).unwrap(), Complex64::new(3.0, 0.0), 1e-12));
    }

    #[test]
    fn gauss_sum_numeric_examples() {
        // GF(3): the two-term sum zeta_3 - zeta_3^2 = i sqrt(3).
        let f3 = FiniteField::new(3, 1).unwrap();
        let z = |k: f64| Complex64::new((k * TAU / 3.0).cos(), (k * TAU / 3.0).sin());
        let hand = z(1.0) - z(2.0);
        assert!(approx_eq(gauss_sum_numeric(&f3).unwrap(), hand, 1e-12));
        assert!(approx_eq(hand, Complex64::new(0.0, 3f64.sqrt()), 1e-12));

        // GF(5): zeta + zeta^4 - zeta^2 - zeta^3 = sqrt(5).
        let f5 = FiniteField::new(5, 1).unwrap();
        let z5 = |k: f64| Complex64::new((k * TAU / 5.0).cos(), (k * TAU / 5.0).sin());
        let hand5 = z5(1.0) + z5(4.0) - z5(2.0) - z5(3.0);
        assert!(approx_eq(gauss_sum_numeric(&f5).unwrap(), hand5, 1e-12));

        // GF(9): eight-term sum must agree with the closed form.
        let f9 = FiniteField::new(3, 2).unwrap();
        assert!(approx_eq(gauss_sum_numeric(&f9).unwrap(), Complex64::new(3.0, 0.0), tol(&f9)));
        assert!(approx_eq(
            gauss_sum_numeric(&f9).unwrap(),
            gauss_sum_closed(&f9).unwrap(),
            tol(&f9)
        ));
        assert_eq!(
            gauss_sum_numeric(&FiniteField::new(2, 2).unwrap()).unwrap_err(),
            Error::EvenCharacteristic
        );
    }

    #[test]
    fn weil_sum_examples() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let z = |k: f64| Complex64::new((k * TAU / 3.0).cos(), (k * TAU / 3.0).sin());

        // f(x) = x^2: direct three-term sum 1 + 2 zeta_3 = i sqrt(3).
        let w = weil_sum_quadratic(&f3, f3.one(), f3.zero(), f3.zero()).unwrap();
        let hand = Complex64::new(1.0, 0.0) + z(1.0) * 2.0;
        assert!(approx_eq(w, hand, 1e-12));
        assert!(approx_eq(w, weil_sum_direct(&f3, f3.one(), f3.zero(), f3.zero()), 1e-12));

        // f(x) = x^2 + x: shift is -1, so the value is zeta_3^2 i sqrt(3).
        let w2 = weil_sum_quadratic(&f3, f3.one(), f3.one(), f3.zero()).unwrap();
        let hand2 = z(2.0) * Complex64::new(0.0, 3f64.sqrt());
        assert!(approx_eq(w2, hand2, 1e-12));
        let direct2: Complex64 = (0..3)
            .map(|v| {
                let fv = (v * v + v) % 3;
                z(fv as f64)
            })
            .sum();
        assert!(approx_eq(w2, direct2, 1e-12));

        // a1 = a0 = 0 reduces to eta(a2) G(eta, chi).
        let f25 = FiniteField::new(5, 2).unwrap();
        let g = gauss_sum_closed(&f25).unwrap();
        for a2 in f25.nonzero_elements() {
            let expect = g * f25.quadratic_character(a2).unwrap() as f64;
            let got = weil_sum_quadratic(&f25, a2, f25.zero(), f25.zero()).unwrap();
            assert!(approx_eq(got, expect, 1e-9));
        }

        assert_eq!(
            weil_sum_quadratic(&f3, f3.zero(), f3.one(), f3.one()).unwrap_err(),
            Error::NotQuadratic
        );
    }

    #[test]
    fn character_trace_count_examples() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let q3 = character_trace_counts(&f3).unwrap();
        assert_eq!(q3, CountQuadruple { sq_tr0: 0, sq_trx: 1, nsq_tr0: 0, nsq_trx: 1 });
        assert_eq!(q3, character_trace_counts_direct(&f3).unwrap());

        let f9 = FiniteField::new(3, 2).unwrap();
        let q9 = character_trace_counts(&f9).unwrap();
        assert_eq!(q9, CountQuadruple { sq_tr0: 2, sq_trx: 2, nsq_tr0: 0, nsq_trx: 4 });
        assert_eq!(q9, character_trace_counts_direct(&f9).unwrap());
        assert_eq!(q9.total(), 8);

        let f25 = FiniteField::new(5, 2).unwrap();
        let q25 = character_trace_counts(&f25).unwrap();
        assert_eq!(q25.total(), 24);
        assert_eq!(q25, character_trace_counts_direct(&f25).unwrap());
    }

    #[test]
    fn c1_zero_count_examples() {
        let f9 = FiniteField::new(3, 2).unwrap();
        let zero = f9.zero();
        let q = f9.order();
        assert_eq!(
            c1_zero_count(&f9, zero, zero, PrimeElement(0)).unwrap(),
            (q * q + q) / 2
        );
        assert_eq!(c1_zero_count(&f9, zero, zero, PrimeElement(1)).unwrap(), 0);
        for b in f9.nonzero_elements().take(3) {
            assert_eq!(
                c1_zero_count(&f9, f9.element(4), b, PrimeElement(2)).unwrap(),
                (q * q / 3 + q / 3) / 2
            );
        }
    }

    #[test]
    fn c2_zero_count_examples() {
        for p in [2u64, 3] {
            let f = FiniteField::new(p, 2).unwrap();
            let zero = f.zero();
            assert_eq!(
                c2_zero_count(&f, zero, zero, PrimeElement(0)).unwrap(),
                p * p * (p * p - 1)
            );
            for b in f.nonzero_elements() {
                for a in f.elements() {
                    for c in 0..p {
                        assert_eq!(
                            c2_zero_count(&f, a, b, PrimeElement(c)).unwrap(),
                            p * (p * p - 1)
                        );
                    }
                }
            }
            // The corrected final case: a != 0, b = 0, trace(a) != 0, c != 0.
            for a in f.nonzero_elements() {
                if field_trace_nonzero(&f, a) {
                    for c in 1..p {
                        let closed = c2_zero_count(&f, a, zero, PrimeElement(c)).unwrap();
                        let direct = c2_zero_count_direct(&f, a, zero, PrimeElement(c)).unwrap();
                        assert_eq!(closed, p * p * (p + 1));
                        assert_eq!(closed, direct);
                    }
                }
            }
        }
        let f27 = FiniteField::new(3, 3).unwrap();
        assert_eq!(
            c2_zero_count(&f27, f27.zero(), f27.zero(), PrimeElement(0)).unwrap_err(),
            Error::DegreeNotTwo(3)
        );
    }

    fn field_trace_nonzero(f: &FiniteField, a: FieldElement) -> bool {
        !f.trace(a).is_zero()
    }

    #[test]
    fn legendre_matches_gf_p_character() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = FiniteField::new(p, 1).unwrap();
            for c in 0..p {
                let via_field = f.quadratic_character(f.element(c)).unwrap();
                assert_eq!(legendre(PrimeElement(c), p), via_field);
            }
        }
    }
}
