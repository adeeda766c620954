use num_complex::Complex64;

use super::{e_ratio, gcd, mod_inverse, DirichletCharacter};
use crate::summation::pairwise_sum;
use crate::{Error, Result};

/// Overflow guard on the modulus of Kloosterman-type sums.
pub const KLOOSTERMAN_MAX_MODULUS: u64 = 10_000_000;

/// `τ(χ) = Σ_{n=1}^{q} χ(n) e(n/q)`.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus();
    let terms: Vec<Complex64> = (1..=q)
        .map(|n| chi.value(n as i64) * e_ratio(n as i128, q))
        .collect();
    pairwise_sum(&terms)
}

fn check_modulus(v: u64) -> Result<()> {
    if v < 2 {
        return Err(Error::validation("exponential-sum modulus v >= 2", v));
    }
    if v > KLOOSTERMAN_MAX_MODULUS {
        return Err(Error::Capacity(format!(
            "modulus {v} exceeds {KLOOSTERMAN_MAX_MODULUS}"
        )));
    }
    Ok(())
}

/// One-sided incomplete Kloosterman sum
/// `Σ_{b ∈ range, (b, v·g) = 1} e(l·b̄ / v)`.
///
/// `range = Some(B)` sums over the dyadic interval `(B, 2B]`; `None` sums over
/// `1..=v`.
pub fn kloosterman_sum(l: i64, v: u64, range: Option<u64>, coprime_to: u64) -> Result<Complex64> {
    check_modulus(v)?;
    let g = coprime_to.max(1);
    let (lo, hi) = match range {
        Some(b) => (b + 1, 2 * b),
        None => (1, v),
    };
    let terms: Vec<Complex64> = (lo..=hi)
        .filter(|&b| gcd(b, v) == 1 && gcd(b, g) == 1)
        .map(|b| {
            let inv = mod_inverse(b % v, v).expect("b is a unit mod v");
            e_ratio(l as i128 * inv as i128, v)
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

/// Complete Kloosterman sum `S(m, n; v) = Σ_{b mod v, (b,v)=1} e((m b + n b̄)/v)`.
pub fn kloosterman_complete(m: i64, n: i64, v: u64) -> Result<Complex64> {
    check_modulus(v)?;
    let terms: Vec<Complex64> = (1..=v)
        .filter(|&b| gcd(b, v) == 1)
        .map(|b| {
            let inv = mod_inverse(b, v).expect("unit");
            e_ratio(m as i128 * b as i128 + n as i128 * inv as i128, v)
        })
        .collect();
    Ok(pairwise_sum(&terms))
}
