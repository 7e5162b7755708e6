//! Deterministic sample-point sets.
//!
//! "At every point" invariants are checked on a low-discrepancy Halton set
//! plus the box corners. The Halton start index is derived from a name hash,
//! so different scenarios probe different points while any given scenario
//! always probes the same ones, making failures reproducible.

use crate::quadrature::BoxDomain;
use crate::real::Real;

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Standard validation budget: this many Halton points plus the corners.
pub const VALIDATION_POINTS: usize = 128;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in bytes {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn radical_inverse(mut n: u64, base: u64) -> f64 {
    let mut inv = 0.0;
    let mut denom = 1.0;
    while n > 0 {
        denom *= base as f64;
        inv += (n % base) as f64 / denom;
        n /= base;
    }
    inv
}

/// `count` Halton points inside `domain`, starting at an index seeded from
/// `seed_name`.
pub fn halton_points<T: Real>(domain: &BoxDomain<T>, count: usize, seed_name: &str) -> Vec<Vec<T>> {
    let dim = domain.dim();
    assert!(dim <= PRIMES.len(), "dimension exceeds Halton base table");
    let offset = fnv1a64(seed_name.as_bytes()) % 8192 + 1;
    (0..count)
        .map(|i| {
            let index = offset + i as u64;
            (0..dim)
                .map(|axis| {
                    let u = radical_inverse(index, PRIMES[axis]);
                    domain.lower()[axis] + T::lit(u) * (domain.upper()[axis] - domain.lower()[axis])
                })
                .collect()
        })
        .collect()
}

/// The validation set: 128 Halton points plus the 2^D corners.
pub fn validation_points<T: Real>(domain: &BoxDomain<T>, seed_name: &str) -> Vec<Vec<T>> {
    let mut points = halton_points(domain, VALIDATION_POINTS, seed_name);
    points.extend(domain.corners());
    points
}

/// Halton points pulled into a box shrunk by `margin_frac` of each axis
/// range, for probes that need room for finite-difference stencils.
pub fn interior_points<T: Real>(
    domain: &BoxDomain<T>,
    count: usize,
    seed_name: &str,
    margin_frac: f64,
) -> Vec<Vec<T>> {
    let dim = domain.dim();
    let margin = T::lit(margin_frac);
    let shrunk_lower: Vec<T> = (0..dim)
        .map(|axis| {
            let range = domain.upper()[axis] - domain.lower()[axis];
            domain.lower()[axis] + margin * range
        })
        .collect();
    let shrunk_upper: Vec<T> = (0..dim)
        .map(|axis| {
            let range = domain.upper()[axis] - domain.lower()[axis];
            domain.upper()[axis] - margin * range
        })
        .collect();
    let shrunk = BoxDomain::new(shrunk_lower, shrunk_upper).expect("margin below one half");
    halton_points(&shrunk, count, seed_name)
}
