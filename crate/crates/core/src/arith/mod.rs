//! Elementary arithmetic: sieves, multiplicative functions, Dirichlet
//! characters and exponential sums.

mod character;
mod expsum;
mod sieve;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use character::{characters_mod, primitive_characters, CharacterGroup, DirichletCharacter};
pub use expsum::{gauss_sum, kloosterman_complete, kloosterman_sum, KLOOSTERMAN_MAX_MODULUS};
pub use sieve::{build_sieve, SieveTables, SIEVE_MAX_LIMIT};

use crate::summation::pairwise_sum;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorisation by trial division, as `(p, e)` pairs in ascending `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisor_count(n: u64) -> u64 {
    factorize(n).into_iter().map(|(_, e)| e as u64 + 1).product()
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// `e(num/den) = exp(2πi·num/den)`, reducing the phase exactly first.
pub fn e_ratio(num: i128, den: u64) -> Complex64 {
    let r = num.rem_euclid(den as i128) as u64;
    if r == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * r == den {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * r == den {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * r == 3 * den {
        return Complex64::new(0.0, -1.0);
    }
    let angle = 2.0 * PI * (r as f64) / (den as f64);
    Complex64::new(angle.cos(), angle.sin())
}

/// `c_q = Σ_{p | q} log p / (p − 1)`.
pub fn c_q(q: u64) -> f64 {
    let terms: Vec<f64> = distinct_prime_factors(q)
        .into_iter()
        .map(|p| (p as f64).ln() / (p as f64 - 1.0))
        .collect();
    pairwise_sum(&terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerVariant {
    /// `∏_{p|j} (1 − p^{−s})`
    F,
    /// `∏_{p|j} (1 + p^{−s})`
    F1,
}

pub fn euler_factor_product(j: u64, s: Complex64, variant: EulerVariant) -> Complex64 {
    let sign = match variant {
        EulerVariant::F => -1.0,
        EulerVariant::F1 => 1.0,
    };
    distinct_prime_factors(j)
        .into_iter()
        .fold(Complex64::new(1.0, 0.0), |acc, p| {
            acc * (1.0 + sign * Complex64::new(p as f64, 0.0).powc(-s))
        })
}

/// `Σ_{p ≤ y} log p / p` as a finite sum (zero for `y < 2`).
pub fn mertens_sum(y: u64) -> crate::Result<f64> {
    if y < 2 {
        return Ok(0.0);
    }
    let tables = build_sieve(y)?;
    let terms: Vec<f64> = tables
        .primes
        .iter()
        .map(|&p| (p as f64).ln() / p as f64)
        .collect();
    Ok(pairwise_sum(&terms))
}
