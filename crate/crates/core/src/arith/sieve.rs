use crate::{Error, Result};

/// Memory guard for [`build_sieve`].
pub const SIEVE_MAX_LIMIT: u64 = 100_000_000;

/// Multiplicative tables up to `limit`; index 0 is unused.
#[derive(Debug, Clone)]
pub struct SieveTables {
    pub limit: u64,
    pub mobius: Vec<i8>,
    pub phi: Vec<u32>,
    pub primes: Vec<u64>,
    pub least_prime_factor: Vec<u32>,
}

/// Linear sieve for μ, φ, the primes and least prime factors.
pub fn build_sieve(limit: u64) -> Result<SieveTables> {
    if limit == 0 || limit > SIEVE_MAX_LIMIT {
        return Err(Error::Capacity(format!(
            "sieve limit {limit} outside [1, {SIEVE_MAX_LIMIT}]"
        )));
    }
    let n = limit as usize;
    let mut lpf = vec![0u32; n + 1];
    let mut mobius = vec![0i8; n + 1];
    let mut phi = vec![0u32; n + 1];
    let mut primes: Vec<u64> = Vec::new();
    mobius[1] = 1;
    phi[1] = 1;
    for i in 2..=n {
        if lpf[i] == 0 {
            lpf[i] = i as u32;
            mobius[i] = -1;
            phi[i] = (i - 1) as u32;
            primes.push(i as u64);
        }
        for &p in &primes {
            let p = p as usize;
            if p > lpf[i] as usize || i * p > n {
                break;
            }
            let ip = i * p;
            lpf[ip] = p as u32;
            if p == lpf[i] as usize {
                mobius[ip] = 0;
                phi[ip] = phi[i] * p as u32;
            } else {
                mobius[ip] = -mobius[i];
                phi[ip] = phi[i] * (p as u32 - 1);
            }
        }
    }
    Ok(SieveTables {
        limit,
        mobius,
        phi,
        primes,
        least_prime_factor: lpf,
    })
}

impl SieveTables {
    /// Distinct prime factors of `n ≤ limit`, ascending.
    pub fn prime_factors(&self, mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.least_prime_factor[n as usize] as u64;
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        out
    }

    pub fn is_squarefree(&self, n: u64) -> bool {
        self.mobius[n as usize] != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let t = build_sieve(30).unwrap();
        assert_eq!(t.mobius[30], -1);
        assert_eq!(t.mobius[1], 1);
        let t = build_sieve(12).unwrap();
        assert_eq!(t.mobius[12], 0);
        assert_eq!(t.phi[12], 4);
    }

    #[test]
    fn prime_count_100() {
        let t = build_sieve(100).unwrap();
        assert_eq!(t.primes.len(), 25);
        assert_eq!(t.prime_factors(60), vec![2, 3, 5]);
    }

    #[test]
    fn mobius_sums_over_divisors() {
        let t = build_sieve(10_000).unwrap();
        let mut acc = vec![0i64; 10_001];
        for d in 1..=10_000usize {
            let m = t.mobius[d] as i64;
            if m == 0 {
                continue;
            }
            for n in (d..=10_000).step_by(d) {
                acc[n] += m;
            }
        }
        assert_eq!(acc[1], 1);
        assert!(acc[2..].iter().all(|&s| s == 0));
    }

    #[test]
    fn phi_matches_product_formula() {
        let t = build_sieve(2000).unwrap();
        for n in 1..=2000u64 {
            let expected = t
                .prime_factors(n)
                .iter()
                .fold(n, |acc, &p| acc / p * (p - 1));
            assert_eq!(t.phi[n as usize] as u64, expected, "phi({n})");
        }
    }

    #[test]
    fn limit_guard() {
        assert!(matches!(build_sieve(0), Err(Error::Capacity(_))));
        assert!(matches!(build_sieve(SIEVE_MAX_LIMIT + 1), Err(Error::Capacity(_))));
    }
}
