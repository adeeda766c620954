//! Numerical check of the twisted, mollified second moment
//! `I(χ) = ∫_T^{2T} |L(1/2+it, χ)|² |B(1/2+it, χ)|² dt` against its main term.

mod hurwitz;

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{build_sieve, c_q, euler_phi, gcd, primitive_characters, DirichletCharacter, SieveTables};
use crate::mainterm::{mollifier_coefficients, MollifierConfig};
use crate::summation::pairwise_sum;
use crate::{Error, Result};

pub use hurwitz::{
    hurwitz_zeta, hurwitz_zeta_with, l_value, l_value_with, CriticalLine, EulerMaclaurin,
    MAX_BERNOULLI_TERMS, MAX_IMAG_PART,
};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;
/// Largest mollifier length for the direct main-term double sum.
pub const DIRECT_MAIN_MAX_Y: u64 = 2_000;
/// Cost guard for [`i_numeric`], in head-sum terms.
pub const MAX_COST: f64 = 1e10;
const SUBINTERVALS: usize = 10;
const PROBE_LENGTH: f64 = 50.0;
const PROBE_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct MomentConfig {
    pub q: u64,
    /// Index into the primitive characters mod `q`, in enumeration order.
    pub character_index: usize,
    pub t: f64,
    /// Mollifier length exponent: `y = ⌊T^θ⌋`.
    pub theta: f64,
    /// `None` means `B ≡ 1`.
    pub mollifier: Option<MollifierConfig>,
    pub step: f64,
    pub euler_maclaurin: EulerMaclaurin,
}

impl MomentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q == 0 {
            return Err(Error::validation("q >= 1", self.q));
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(Error::validation("0 < theta < 1", self.theta));
        }
        if !(self.t >= 50.0 && self.t.is_finite()) {
            return Err(Error::validation("T >= 50", self.t));
        }
        if !(self.step > 0.0 && self.step <= 0.5) {
            return Err(Error::validation("step in (0, 0.5]", self.step));
        }
        self.euler_maclaurin.validate()?;
        if let Some(m) = &self.mollifier {
            m.validate()?;
        }
        self.character()?;
        Ok(())
    }

    pub fn character(&self) -> Result<DirichletCharacter> {
        let prims = primitive_characters(self.q)?;
        let count = prims.len();
        prims.into_iter().nth(self.character_index).ok_or_else(|| {
            Error::validation(
                format!("character_index < {count} (primitive characters mod {})", self.q),
                self.character_index,
            )
        })
    }

    /// `y = ⌊T^θ⌋`, at least 1.
    pub fn y(&self) -> u64 {
        (self.t.powf(self.theta).floor() as u64).max(1)
    }

    /// Mollifier coefficients `a(1..=y)` (index 0 unused).
    pub fn coefficients(&self) -> Result<Vec<f64>> {
        match &self.mollifier {
            None => Ok(vec![0.0, 1.0]),
            Some(m) => {
                let y = self.y();
                let sieve = build_sieve(y.max(2))?;
                let mut a = mollifier_coefficients(&m.float_view(), y, &sieve);
                a.truncate(y as usize + 1);
                Ok(a)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Partial {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Probe {
    pub lo: f64,
    pub hi: f64,
    pub coarse: f64,
    pub fine: f64,
    pub relative_change: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericResult {
    pub value: f64,
    pub partials: Vec<Partial>,
    pub probe: Probe,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub i_numeric: f64,
    pub i_main: f64,
    pub ratio: f64,
    pub partials: Vec<Partial>,
    pub probe: Probe,
    pub y: u64,
    pub config: MomentConfig,
    pub runtime_secs: f64,
    pub warnings: Vec<String>,
}

/// `B(1/2 + it, χ) = Σ a(n) χ(n) n^{−1/2−it}`.
struct Mollifier {
    terms: Vec<(Complex64, f64)>,
}

impl Mollifier {
    fn new(a: &[f64], chi: &DirichletCharacter) -> Self {
        let terms = a
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| **c != 0.0)
            .map(|(n, c)| (chi.value(n as i64) * (c / (n as f64).sqrt()), (n as f64).ln()))
            .filter(|(c, _)| c.norm_sqr() > 0.0)
            .collect();
        Self { terms }
    }

    fn eval(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, ln)| {
                let (sin, cos) = (t * ln).sin_cos();
                c * Complex64::new(cos, -sin)
            })
            .sum()
    }
}

/// Composite Simpson rule over `[lo, hi]` with about `step` spacing.
fn simpson(lo: f64, hi: f64, step: f64, f: &(impl Fn(f64) -> f64 + Sync)) -> f64 {
    let mut n = ((hi - lo) / step).ceil() as usize;
    n += n % 2;
    n = n.max(2);
    let h = (hi - lo) / n as f64;
    let values: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let w = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * f(lo + k as f64 * h)
        })
        .collect();
    pairwise_sum(&values) * h / 3.0
}

fn cost_estimate(mc: &MomentConfig, y: u64) -> f64 {
    let samples = mc.t / mc.step + 1.0;
    let head = mc.q as f64 * mc.euler_maclaurin.multiplier * 2.0 * mc.t;
    samples * (head + y as f64)
}

/// `∫_T^{2T} |L(1/2+it, χ) B(1/2+it, χ)|² dt` by composite Simpson.
pub fn i_numeric(mc: &MomentConfig) -> Result<NumericResult> {
    mc.validate()?;
    let cost = cost_estimate(mc, mc.y());
    if cost > MAX_COST {
        return Err(Error::Capacity(format!(
            "estimated {cost:.3e} term evaluations exceed {MAX_COST:e}"
        )));
    }
    let chi = mc.character()?;
    let line = CriticalLine::new(&chi, 2.0 * mc.t, &mc.euler_maclaurin)?;
    let moll = Mollifier::new(&mc.coefficients()?, &chi);
    let f = |t: f64| (line.eval(t) * moll.eval(t)).norm_sqr();
    let width = mc.t / SUBINTERVALS as f64;
    let partials: Vec<Partial> = (0..SUBINTERVALS)
        .map(|j| {
            let lo = mc.t + j as f64 * width;
            let hi = if j + 1 == SUBINTERVALS { 2.0 * mc.t } else { lo + width };
            Partial {
                lo,
                hi,
                value: simpson(lo, hi, mc.step, &f),
            }
        })
        .collect();
    let value = pairwise_sum(&partials.iter().map(|p| p.value).collect::<Vec<_>>());
    let (lo, hi) = (mc.t, mc.t + PROBE_LENGTH.min(mc.t));
    let coarse = simpson(lo, hi, mc.step, &f);
    let fine = simpson(lo, hi, mc.step / 2.0, &f);
    let relative_change = (fine - coarse).abs() / fine.abs().max(f64::MIN_POSITIVE);
    let mut warnings = Vec::new();
    if relative_change > PROBE_TOLERANCE {
        warnings.push(format!(
            "halving the step on [{lo}, {hi}] changed the partial by {:.2}%",
            100.0 * relative_change
        ));
    }
    Ok(NumericResult {
        value,
        partials,
        probe: Probe {
            lo,
            hi,
            coarse,
            fine,
            relative_change,
        },
        warnings,
    })
}

fn main_constant(mc: &MomentConfig) -> f64 {
    let q = mc.q as f64;
    (mc.t * q / (2.0 * std::f64::consts::PI)).ln() + 2.0 * EULER_GAMMA - 1.0 + c_q(mc.q) + 2.0 * 2f64.ln()
}

fn prefactor(mc: &MomentConfig) -> f64 {
    mc.t * euler_phi(mc.q) as f64 / mc.q as f64
}

/// `f(h) = a(h) χ₀(h) / h`, zero-indexed at 0.
fn reduced_weights(a: &[f64], q: u64) -> Vec<f64> {
    a.iter()
        .enumerate()
        .map(|(h, c)| {
            if h == 0 || gcd(h as u64, q) != 1 {
                0.0
            } else {
                c / h as f64
            }
        })
        .collect()
}

/// `T (φ(q)/q) Σ_{h,k ≤ y} a(h)a(k)χ₀(hk)/[h,k] · (log(Tq(h,k)²/(2π hk)) + 2γ − 1 + c_q + 2 log 2)`
/// by direct summation over unordered pairs.
pub fn i_main_direct(mc: &MomentConfig) -> Result<f64> {
    mc.validate()?;
    let a = mc.coefficients()?;
    let y = a.len() as u64 - 1;
    if y > DIRECT_MAIN_MAX_Y {
        return Err(Error::Capacity(format!(
            "direct main term limited to y <= {DIRECT_MAIN_MAX_Y}, got {y}"
        )));
    }
    let f = reduced_weights(&a, mc.q);
    let c = main_constant(mc);
    let logs: Vec<f64> = (0..=y as usize).map(|n| (n.max(1) as f64).ln()).collect();
    let rows: Vec<f64> = (1..=y as usize)
        .map(|h| {
            if f[h] == 0.0 {
                return 0.0;
            }
            let terms: Vec<f64> = (h..=y as usize)
                .map(|k| {
                    let w = if h == k { 1.0 } else { 2.0 };
                    w * pair_term(h, k, &f, &logs, c)
                })
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    Ok(prefactor(mc) * pairwise_sum(&rows))
}

/// `a(h)a(k)χ₀(hk)/[h,k] · (C + 2 log(h,k) − log h − log k)`; symmetric in `h, k`.
pub fn pair_term(h: usize, k: usize, f: &[f64], logs: &[f64], c: f64) -> f64 {
    if f[h] == 0.0 || f[k] == 0.0 {
        return 0.0;
    }
    let g = gcd(h as u64, k as u64) as usize;
    (f[h] * f[k]) * g as f64 * (c + 2.0 * logs[g] - (logs[h] + logs[k]))
}

/// The main term through the divisor decomposition `(h,k) = Σ_{d|(h,k)} φ(d)`
/// and `(h,k) log (h,k) = Σ_{d|(h,k)} g(d)` with `g = μ * (n log n)`.
pub fn i_main_grouped(mc: &MomentConfig) -> Result<f64> {
    mc.validate()?;
    let a = mc.coefficients()?;
    let y = a.len() - 1;
    let f = reduced_weights(&a, mc.q);
    let sieve: SieveTables = build_sieve((y as u64).max(2))?;
    let mut g = vec![0.0; y + 1];
    for e in 1..=y {
        let v = e as f64 * (e as f64).ln();
        for (m, d) in (e..=y).step_by(e).enumerate() {
            let mu = sieve.mobius[m + 1];
            if mu != 0 {
                g[d] += mu as f64 * v;
            }
        }
    }
    let c = main_constant(mc);
    let terms: Vec<f64> = (1..=y)
        .map(|d| {
            let (mut e0, mut e1) = (0.0, 0.0);
            for h in (d..=y).step_by(d) {
                e0 += f[h];
                e1 += f[h] * (h as f64).ln();
            }
            let phi = sieve.phi[d] as f64;
            (c * phi + 2.0 * g[d]) * e0 * e0 - 2.0 * phi * e0 * e1
        })
        .collect();
    Ok(prefactor(mc) * pairwise_sum(&terms))
}

/// The main term, directly for small `y` and grouped beyond.
pub fn i_main(mc: &MomentConfig) -> Result<f64> {
    if mc.coefficients()?.len() as u64 - 1 <= DIRECT_MAIN_MAX_Y {
        i_main_direct(mc)
    } else {
        i_main_grouped(mc)
    }
}

pub fn verify_report(mc: &MomentConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let numeric = i_numeric(mc)?;
    let main = i_main(mc)?;
    if main == 0.0 {
        return Err(Error::Domain("main term vanishes".into()));
    }
    Ok(VerificationReport {
        i_numeric: numeric.value,
        i_main: main,
        ratio: numeric.value / main,
        partials: numeric.partials,
        probe: numeric.probe,
        y: mc.y(),
        config: mc.clone(),
        runtime_secs: start.elapsed().as_secs_f64(),
        warnings: numeric.warnings,
    })
}

/// Reports for several values of `T`, other settings unchanged.
pub fn verify_trend(mc: &MomentConfig, ts: &[f64]) -> Result<Vec<VerificationReport>> {
    ts.iter()
        .map(|&t| verify_report(&MomentConfig { t, ..mc.clone() }))
        .collect()
}
