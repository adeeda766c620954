use num_complex::Complex64;

use crate::arith::DirichletCharacter;
use crate::{Error, Result};

/// `B_{2k}` for `k = 1..=12`.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

pub const MAX_BERNOULLI_TERMS: usize = BERNOULLI.len();
pub const MAX_IMAG_PART: f64 = 1e5;

/// Euler–Maclaurin parameters: `N = max(min_terms, ⌈multiplier·|Im s|⌉)`
/// head terms and `bernoulli_terms` correction terms.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EulerMaclaurin {
    pub multiplier: f64,
    pub min_terms: usize,
    pub bernoulli_terms: usize,
}

impl Default for EulerMaclaurin {
    fn default() -> Self {
        Self {
            multiplier: 1.3,
            min_terms: 16,
            bernoulli_terms: 12,
        }
    }
}

impl EulerMaclaurin {
    pub fn validate(&self) -> Result<()> {
        if !(self.multiplier > 0.0 && self.multiplier.is_finite()) {
            return Err(Error::validation("Euler-Maclaurin multiplier > 0", self.multiplier));
        }
        if self.bernoulli_terms > MAX_BERNOULLI_TERMS {
            return Err(Error::validation(
                "Bernoulli terms <= 12",
                self.bernoulli_terms,
            ));
        }
        if self.min_terms == 0 {
            return Err(Error::validation("min_terms >= 1", 0));
        }
        Ok(())
    }

    pub fn head_terms(&self, s: Complex64) -> usize {
        self.min_terms.max((self.multiplier * s.im.abs()).ceil() as usize)
    }
}

fn check_s(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite(format!("s = {s}")));
    }
    if s.im.abs() > MAX_IMAG_PART {
        return Err(Error::Capacity(format!("|Im s| = {} exceeds {MAX_IMAG_PART}", s.im.abs())));
    }
    Ok(())
}

/// The Euler–Maclaurin tail `Σ_{n ≥ N} (n + x)^{−s}`. At `s = 1` the pole
/// part `1/(s − 1)` is dropped, leaving `−log(N + x)`.
pub(crate) fn tail(s: Complex64, x: f64, n: usize, em: &EulerMaclaurin) -> Complex64 {
    let a = n as f64 + x;
    let ln_a = a.ln();
    let a_pow = (-s * ln_a).exp();
    let integral = if s == Complex64::new(1.0, 0.0) {
        Complex64::new(-ln_a, 0.0)
    } else {
        a_pow * a / (s - 1.0)
    };
    let mut acc = integral + a_pow * 0.5;
    // B_{2k}/(2k)! · s(s+1)…(s+2k−2) · a^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut power = a_pow / a;
    for (k, b) in BERNOULLI.iter().take(em.bernoulli_terms).enumerate() {
        if k > 0 {
            let j = 2 * k as u32;
            rising = rising * (s + (j - 1) as f64) * (s + j as f64);
            fact *= ((j + 1) * (j + 2)) as f64;
            power /= a * a;
        }
        acc += rising * power * (b / fact);
    }
    acc
}

/// `ζ(s, x) = Σ_{n ≥ 0} (n + x)^{−s}` for `x ∈ (0, 1]`.
pub fn hurwitz_zeta(s: Complex64, x: f64) -> Result<Complex64> {
    hurwitz_zeta_with(s, x, &EulerMaclaurin::default())
}

pub fn hurwitz_zeta_with(s: Complex64, x: f64, em: &EulerMaclaurin) -> Result<Complex64> {
    check_s(s)?;
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::validation("x in (0, 1]", x));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("Hurwitz zeta at s = 1".into()));
    }
    Ok(regularized(s, x, em))
}

fn regularized(s: Complex64, x: f64, em: &EulerMaclaurin) -> Complex64 {
    let n = em.head_terms(s);
    let head: Complex64 = (0..n).map(|k| (-s * (k as f64 + x).ln()).exp()).sum();
    head + tail(s, x, n, em)
}

/// `L(s, χ) = q^{−s} Σ_{r=1}^{q} χ(r) ζ(s, r/q)`.
pub fn l_value(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    l_value_with(s, chi, &EulerMaclaurin::default())
}

pub fn l_value_with(s: Complex64, chi: &DirichletCharacter, em: &EulerMaclaurin) -> Result<Complex64> {
    check_s(s)?;
    let at_one = s == Complex64::new(1.0, 0.0);
    if at_one && chi.is_principal() {
        return Err(Error::Pole("L(s, χ₀) at s = 1".into()));
    }
    let q = chi.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 1..=q {
        let c = chi.value(r as i64);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        // Σ χ(r) = 0 for χ ≠ χ₀, so the dropped pole parts cancel at s = 1.
        acc += c * regularized(s, r as f64 / q as f64, em);
    }
    Ok(acc * (-s * (q as f64).ln()).exp())
}

/// `L(1/2 + it, χ)` along the critical line with the logarithms of the head
/// sum precomputed.
pub struct CriticalLine {
    q: u64,
    em: EulerMaclaurin,
    /// `(χ(m) m^{−1/2}, log m)` for `m = 1..=q·N_max`.
    head: Vec<(Complex64, f64)>,
    chi_r: Vec<Complex64>,
    log_q: f64,
}

impl CriticalLine {
    pub fn new(chi: &DirichletCharacter, t_max: f64, em: &EulerMaclaurin) -> Result<Self> {
        em.validate()?;
        check_s(Complex64::new(0.5, t_max))?;
        let q = chi.modulus();
        let n_max = em.head_terms(Complex64::new(0.5, t_max));
        let head = (1..=q * n_max as u64)
            .map(|m| {
                let lm = (m as f64).ln();
                (chi.value(m as i64) / (m as f64).sqrt(), lm)
            })
            .collect();
        Ok(Self {
            q,
            em: *em,
            head,
            chi_r: (1..=q).map(|r| chi.value(r as i64)).collect(),
            log_q: (q as f64).ln(),
        })
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let s = Complex64::new(0.5, t);
        let n = self.em.head_terms(s).min(self.head.len() / self.q as usize);
        let mut head = Complex64::new(0.0, 0.0);
        for (c, lm) in &self.head[..n * self.q as usize] {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let (sin, cos) = (t * lm).sin_cos();
            head += c * Complex64::new(cos, -sin);
        }
        let mut tails = Complex64::new(0.0, 0.0);
        for (r, c) in self.chi_r.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            tails += c * tail(s, (r + 1) as f64 / self.q as f64, n, &self.em);
        }
        head + tails * (-s * self.log_q).exp()
    }
}
