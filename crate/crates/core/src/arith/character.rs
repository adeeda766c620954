//! Dirichlet characters built from the structure of `(Z/qZ)*`.
//!
//! `q` is split into prime powers. Odd prime powers are cyclic with a
//! primitive root; `2^e` for `e ≥ 3` is generated by `−1` and `5`. A
//! character is an exponent tuple over these cyclic factors, and its values
//! are stored as exact phases `k/L` where `L` is the exponent of the group.

use std::sync::Arc;

use num_complex::Complex64;

use super::{divisors, e_ratio, factorize, gcd, lcm};
use crate::{Error, Result};

/// Largest modulus accepted by [`characters_mod`].
pub const MAX_CHARACTER_MODULUS: u64 = 10_000;

#[derive(Debug, Clone)]
struct CyclicFactor {
    order: u64,
}

/// Shared discrete-log tables for `(Z/qZ)*`.
#[derive(Debug)]
pub struct CharacterGroup {
    modulus: u64,
    factors: Vec<CyclicFactor>,
    /// Exponent of the group: lcm of the factor orders.
    exponent: u64,
    /// For each residue `n mod q` coprime to `q`, its index in every factor.
    logs: Vec<Option<Vec<u64>>>,
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 || q > MAX_CHARACTER_MODULUS {
            return Err(Error::Capacity(format!(
                "modulus {q} outside [1, {MAX_CHARACTER_MODULUS}]"
            )));
        }
        // Per prime power: list of factor orders and a residue -> indices table.
        let mut factors = Vec::new();
        let mut local_tables: Vec<(u64, Vec<Option<Vec<u64>>>)> = Vec::new();
        for (p, e) in factorize(q) {
            let pe = p.pow(e);
            let (orders, table) = if p == 2 {
                two_power_logs(e)
            } else {
                odd_prime_power_logs(p, pe)
            };
            factors.extend(orders.into_iter().map(|order| CyclicFactor { order }));
            local_tables.push((pe, table));
        }
        let logs = (0..q)
            .map(|n| {
                if gcd(n, q) != 1 {
                    return None;
                }
                let mut idx = Vec::with_capacity(factors.len());
                for (pe, table) in &local_tables {
                    idx.extend(table[(n % pe) as usize].as_ref()?.iter().copied());
                }
                Some(idx)
            })
            .collect();
        let exponent = factors.iter().fold(1, |acc, f| lcm(acc, f.order));
        Ok(Self {
            modulus: q,
            factors,
            exponent,
            logs,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }
}

fn odd_prime_power_logs(p: u64, pe: u64) -> (Vec<u64>, Vec<Option<Vec<u64>>>) {
    let order = pe / p * (p - 1);
    let g = (2..pe)
        .find(|&g| gcd(g, p) == 1 && multiplicative_order(g, pe) == order)
        .expect("odd prime powers are cyclic");
    let mut table = vec![None; pe as usize];
    let mut x = 1u64;
    for k in 0..order {
        table[x as usize] = Some(vec![k]);
        x = x * g % pe;
    }
    (vec![order], table)
}

fn two_power_logs(e: u32) -> (Vec<u64>, Vec<Option<Vec<u64>>>) {
    let pe = 1u64 << e;
    match e {
        1 => (vec![], vec![None, Some(vec![])]),
        2 => (vec![2], vec![None, Some(vec![0]), None, Some(vec![1])]),
        _ => {
            let order5 = pe / 4;
            let mut pow5 = vec![None; pe as usize];
            let mut x = 1u64;
            for k in 0..order5 {
                pow5[x as usize] = Some(k);
                x = x * 5 % pe;
            }
            let mut table = vec![None; pe as usize];
            for n in (1..pe).step_by(2) {
                let sign = if n % 4 == 1 { 0 } else { 1 };
                let m = if sign == 0 { n } else { pe - n };
                let k = pow5[m as usize].expect("units ≡ 1 mod 4 are powers of 5");
                table[n as usize] = Some(vec![sign, k]);
            }
            (vec![2, order5], table)
        }
    }
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    k
}

/// A Dirichlet character modulo `q`.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<CharacterGroup>,
    exponents: Vec<u64>,
    conductor: u64,
    parity: i8,
}

impl DirichletCharacter {
    fn from_exponents(group: Arc<CharacterGroup>, exponents: Vec<u64>) -> Self {
        let mut chi = Self {
            group,
            exponents,
            conductor: 0,
            parity: 1,
        };
        let q = chi.modulus();
        let minus_one = chi.phase(q as i64 - 1).expect("−1 is a unit");
        chi.parity = if minus_one == 0 { 1 } else { -1 };
        chi.conductor = chi.brute_force_conductor();
        chi
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `χ(−1)`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// The phase of `χ(n)` as a numerator over [`CharacterGroup::exponent`],
    /// or `None` when `gcd(n, q) > 1`.
    pub fn phase(&self, n: i64) -> Option<u64> {
        let q = self.modulus();
        let r = n.rem_euclid(q as i64) as usize;
        let logs = self.group.logs[r].as_ref()?;
        let big_l = self.group.exponent;
        let mut acc = 0u64;
        for ((&k, &ind), f) in self.exponents.iter().zip(logs).zip(&self.group.factors) {
            acc = (acc + k * ind % f.order * (big_l / f.order)) % big_l;
        }
        Some(acc)
    }

    pub fn value(&self, n: i64) -> Complex64 {
        match self.phase(n) {
            Some(ph) => e_ratio(ph as i128, self.group.exponent),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Values at residues `0..q`.
    pub fn value_table(&self) -> Vec<Complex64> {
        (0..self.modulus() as i64).map(|n| self.value(n)).collect()
    }

    pub fn conjugate(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(&self.group.factors)
            .map(|(&k, f)| (f.order - k) % f.order)
            .collect();
        Self {
            group: Arc::clone(&self.group),
            exponents,
            conductor: self.conductor,
            parity: self.parity,
        }
    }

    /// Principal character sharing this character's modulus.
    pub fn principal(&self) -> Self {
        Self::from_exponents(Arc::clone(&self.group), vec![0; self.exponents.len()])
    }

    /// Smallest `d | q` such that `χ(n) = 1` for every unit `n ≡ 1 (mod d)`.
    fn brute_force_conductor(&self) -> u64 {
        let q = self.modulus();
        for d in divisors(q) {
            let induced = (1..=q)
                .step_by(d as usize)
                .filter(|&n| gcd(n, q) == 1)
                .all(|n| self.phase(n as i64) == Some(0));
            if induced {
                return d;
            }
        }
        q
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

/// All `φ(q)` characters modulo `q`; the principal character comes first.
pub fn characters_mod(q: u64) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(CharacterGroup::new(q)?);
    let orders = group.factor_orders();
    let mut out = Vec::new();
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter::from_exponents(
            Arc::clone(&group),
            exps.clone(),
        ));
        // Odometer increment, first factor fastest.
        let mut i = 0;
        loop {
            if i == orders.len() {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

pub fn primitive_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(characters_mod(q)?
        .into_iter()
        .filter(|c| c.is_primitive())
        .collect())
}
