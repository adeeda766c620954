//! Arithmetic brute force for the mollified sum `Σ(α, β)`.

use rayon::prelude::*;

use crate::arith::{build_sieve, distinct_prime_factors, gcd, SieveTables};
use crate::summation::pairwise_sum;
use crate::{Error, Result};

use super::config::FloatConfig;

/// Cost guard for [`sigma_bruteforce`].
pub const ORACLE_MAX_Y: u64 = 10_000_000;
/// Cost guard for the quadratic cross-check.
pub const DIRECT_MAX_Y: u64 = 5_000;

const CHUNK: usize = 4096;

/// `a(n)` for `n ≤ y` (index 0 unused).
///
/// `a(n) = μ(n)(P₁(x) + P₂(x) Σ_{p|n, p ≤ y^{3/4}} P(log p / log y))` with
/// `x = log(y/n) / log y`.
pub fn mollifier_coefficients(cfg: &FloatConfig, y: u64, sieve: &SieveTables) -> Vec<f64> {
    let mut a = vec![0.0; y as usize + 1];
    if y == 0 {
        return a;
    }
    a[1] = cfg.p1.eval(&1.0);
    if y == 1 {
        return a;
    }
    let log_y = (y as f64).ln();
    let y3 = (y as u128).pow(3);
    a.par_iter_mut().enumerate().skip(2).for_each(|(n, slot)| {
        let mu = sieve.mobius[n];
        if mu == 0 {
            return;
        }
        let x = ((y as f64) / n as f64).ln() / log_y;
        let prime_sum: f64 = sieve
            .prime_factors(n as u64)
            .into_iter()
            .filter(|&p| (p as u128).pow(4) <= y3)
            .map(|p| cfg.p.eval(&((p as f64).ln() / log_y)))
            .sum();
        *slot = mu as f64 * (cfg.p1.eval(&x) + cfg.p2.eval(&x) * prime_sum);
    });
    a
}

fn coprime(n: u64, q_primes: &[u64]) -> bool {
    q_primes.iter().all(|p| n % p != 0)
}

/// The rescaling `α = a/𝓛` with `𝓛 = log y / θ`.
fn shifts(cfg: &FloatConfig, y: u64, a: f64, b: f64) -> (f64, f64) {
    let big_l = (y as f64).ln() / cfg.theta;
    (a / big_l, b / big_l)
}

fn check_inputs(y: u64, q: u64, cap: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::validation("q >= 1", 0));
    }
    if y == 0 {
        return Err(Error::validation("y >= 1", 0));
    }
    if y > cap {
        return Err(Error::Capacity(format!("y = {y} exceeds the oracle limit {cap}")));
    }
    Ok(())
}

/// `Σ(α, β)` through the decomposition over common divisors `j`:
/// `Σ_j j^{−1} F(j, 1+α+β) χ₀(j) E(α, j) E(β, j)` with
/// `E(α, j) = Σ_{h ≤ y/j} a(hj) χ₀(h) h^{−1−α}`.
pub fn sigma_bruteforce(cfg: &FloatConfig, y: u64, q: u64, a: f64, b: f64) -> Result<f64> {
    check_inputs(y, q, ORACLE_MAX_Y)?;
    if y == 1 {
        let a1 = cfg.p1.eval(&1.0);
        return Ok(a1 * a1);
    }
    let sieve = build_sieve(y)?;
    let coeffs = mollifier_coefficients(cfg, y, &sieve);
    let (alpha, beta) = shifts(cfg, y, a, b);
    let q_primes = distinct_prime_factors(q);
    let n = y as usize;
    let weight = |s: f64| -> Vec<f64> {
        (0..=n)
            .map(|h| {
                if h == 0 || !coprime(h as u64, &q_primes) {
                    0.0
                } else {
                    (h as f64).powf(-1.0 - s)
                }
            })
            .collect()
    };
    let wa = weight(alpha);
    let wb = if beta == alpha { wa.clone() } else { weight(beta) };
    let s = 1.0 + alpha + beta;
    let term = |j: usize| -> f64 {
        if sieve.mobius[j] == 0 || !coprime(j as u64, &q_primes) {
            return 0.0;
        }
        let (mut ea, mut eb) = (0.0, 0.0);
        for h in 1..=n / j {
            let c = coeffs[h * j];
            ea += c * wa[h];
            eb += c * wb[h];
        }
        let f: f64 = sieve
            .prime_factors(j as u64)
            .iter()
            .map(|&p| 1.0 - (p as f64).powf(-s))
            .product();
        f * ea * eb / j as f64
    };
    let partials: Vec<f64> = (1..=n)
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|js| pairwise_sum(&js.iter().map(|&j| term(j)).collect::<Vec<_>>()))
        .collect();
    Ok(pairwise_sum(&partials))
}

/// `Σ(α, β)` by direct summation over pairs `h, k ≤ y`.
pub fn sigma_direct(cfg: &FloatConfig, y: u64, q: u64, a: f64, b: f64) -> Result<f64> {
    check_inputs(y, q, DIRECT_MAX_Y)?;
    if y == 1 {
        let a1 = cfg.p1.eval(&1.0);
        return Ok(a1 * a1);
    }
    let sieve = build_sieve(y)?;
    let coeffs = mollifier_coefficients(cfg, y, &sieve);
    let (alpha, beta) = shifts(cfg, y, a, b);
    let q_primes = distinct_prime_factors(q);
    let rows: Vec<f64> = (1..=y)
        .map(|h| {
            let ah = coeffs[h as usize];
            if ah == 0.0 || !coprime(h, &q_primes) {
                return 0.0;
            }
            let terms: Vec<f64> = (1..=y)
                .map(|k| {
                    let ak = coeffs[k as usize];
                    if ak == 0.0 || !coprime(k, &q_primes) {
                        return 0.0;
                    }
                    let g = gcd(h, k) as f64;
                    ah * ak * g.powf(1.0 + alpha + beta)
                        / ((h as f64).powf(1.0 + alpha) * (k as f64).powf(1.0 + beta))
                })
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    Ok(pairwise_sum(&rows))
}
