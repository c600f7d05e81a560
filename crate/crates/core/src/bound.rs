//! Sphere-packing bound and the optimality / MDS classification derived
//! from it. All comparisons run in arbitrary-precision integers; the
//! `q^{n-k}` side of the bound is never materialized, only its base-q
//! magnitude is tracked.

use num_bigint::BigUint;
use num_traits::One;

/// Volume of the radius-`r` Hamming ball in `GF(q)^n`:
/// `sum_{i=0}^{min(r,n)} (q-1)^i C(n, i)`.
pub fn ball_volume(n: u64, q: u64, r: u64) -> BigUint {
    let mut volume = BigUint::one();
    let mut term = BigUint::one();
    for i in 1..=r.min(n) {
        term = term * (q - 1) * (n - i + 1) / i;
        volume += &term;
    }
    volume
}

/// Smallest e >= 0 with `q^e >= v`.
fn ceil_log(q: u64, v: &BigUint) -> u64 {
    let mut e = 0u64;
    let mut power = BigUint::one();
    while &power < v {
        power *= q;
        e += 1;
    }
    e
}

/// Largest dimension k such that a q-ary `[n, k, d]` code satisfies the
/// sphere-packing bound `q^k * ball(n, (d-1)/2) <= q^n`.
pub fn max_dimension_for_distance(n: u64, q: u64, d: u64) -> u64 {
    assert!(n >= 1 && q >= 2 && d >= 1);
    let v = ball_volume(n, q, (d - 1) / 2);
    // q^k V <= q^n  <=>  n - k >= ceil_log_q(V); the ball never exceeds the
    // whole space, so the result is never negative.
    n - ceil_log(q, &v)
}

/// Largest distance d (capped at n) such that a q-ary `[n, k, d]` code
/// satisfies the sphere-packing bound.
pub fn max_distance_for_dimension(n: u64, q: u64, k: u64) -> u64 {
    assert!(n >= 1 && q >= 2 && k <= n);
    let limit = n - k; // need ceil_log_q(ball) <= limit
    let mut volume = BigUint::one();
    let mut term = BigUint::one();
    let mut power = BigUint::one(); // q^e, e minimal with q^e >= volume
    let mut e = 0u64;
    let mut best_radius: Option<u64> = None;
    for r in 0..=n {
        if r > 0 {
            term = term * (q - 1) * (n - r + 1) / r;
            volume += &term;
        }
        while power < volume {
            power *= q;
            e += 1;
        }
        if e <= limit {
            best_radius = Some(r);
        } else {
            break;
        }
    }
    match best_radius {
        // Radius r admits distances up to 2r + 2.
        Some(r) => (2 * r + 2).min(n.max(1)),
        None => unreachable!("radius 0 always satisfies the bound"),
    }
}

/// Optimality and MDS flags of an `[n, k, d]` code over `GF(q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassFlags {
    pub dimension_optimal: bool,
    pub distance_optimal: bool,
    pub mds: bool,
    pub almost_mds: bool,
}

impl ClassFlags {
    /// Flag names in a fixed alphabetical order, for deterministic output.
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.almost_mds {
            out.push("almost_mds");
        }
        if self.dimension_optimal {
            out.push("dimension_optimal");
        }
        if self.distance_optimal {
            out.push("distance_optimal");
        }
        if self.mds {
            out.push("mds");
        }
        out
    }

    /// True when every flag set in `other` is also set here.
    pub fn contains(&self, other: &ClassFlags) -> bool {
        (!other.dimension_optimal || self.dimension_optimal)
            && (!other.distance_optimal || self.distance_optimal)
            && (!other.mds || self.mds)
            && (!other.almost_mds || self.almost_mds)
    }
}

impl std::fmt::Display for ClassFlags {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = self.names();
        if names.is_empty() {
            write!(f, "-")
        } else {
            write!(f, "{}", names.join(","))
        }
    }
}

/// Classifies `[n, k, d]` over `GF(q)`: MDS / almost-MDS by the Singleton
/// defect, dimension- and distance-optimality by the sphere-packing bound.
pub fn classify(n: u64, k: u64, d: u64, q: u64) -> ClassFlags {
    assert!(k <= n && d <= n && d >= 1 && k >= 1);
    ClassFlags {
        dimension_optimal: k == max_dimension_for_distance(n, q, d),
        distance_optimal: d == max_distance_for_dimension(n, q, k),
        mds: d == n - k + 1,
        almost_mds: d + k == n,
    }
}
