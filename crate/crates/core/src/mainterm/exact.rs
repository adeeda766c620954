//! Exact main-term backend.
//!
//! With the Taylor expansion taken about `(a₀, b₀)`, every jet coefficient of
//! `𝒱ᵢ` is a polynomial in the integration variable, while `𝒲₂` picks up the
//! factor `e^{−a₀θu}`. All intermediate functions therefore live in the ring
//! of exponential polynomials `Σ_k e^{λ_k x} p_k(x)`, where each `λ_k` is an
//! integer combination of `c_a = −a₀θ` and `c_b = −b₀θ`. Integrals are taken
//! in closed form; the limits are all multiples of `1/4`, so the constants
//! that appear are Laurent polynomials in `E_a = e^{c_a/4}` and
//! `E_b = e^{c_b/4}` with rational coefficients ([`ExpConst`]). Only the final
//! evaluation to `f64` is inexact.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::jet::{rational_to_f64, Jet2, Poly, Rational, Scalar};

use super::config::MollifierConfig;

/// Exponent pair `(i, j)`, read as `E_a^i E_b^j` for constants and as
/// `e^{(i c_a + j c_b) x}` for functions.
pub type ExpKey = (i32, i32);

/// `Σ r_{ij} E_a^i E_b^j` with rational `r_{ij}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpConst {
    terms: BTreeMap<ExpKey, Rational>,
}

impl ExpConst {
    pub fn rational(r: Rational) -> Self {
        Self::monomial((0, 0), r)
    }

    pub fn monomial(key: ExpKey, r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(key, r);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpKey, &Rational)> {
        self.terms.iter()
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * r)).collect(),
        }
    }

    /// Multiplies by `E_a^i E_b^j`.
    pub fn shift(&self, by: ExpKey) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| ((k.0 + by.0, k.1 + by.1), v.clone()))
                .collect(),
        }
    }

    /// Exchanges the roles of `E_a` and `E_b`.
    pub fn swap_symbols(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| ((k.1, k.0), v.clone()))
                .collect(),
        }
    }

    /// The rational value, if no exponential symbol is present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn accumulate(&mut self, key: ExpKey, r: Rational) {
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += r;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl Zero for ExpConst {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExpConst {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Add for ExpConst {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.terms {
            self.accumulate(k, v);
        }
        self
    }
}

impl Sub for ExpConst {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ExpConst {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for ExpConst {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                out.accumulate((ka.0 + kb.0, ka.1 + kb.1), va * vb);
            }
        }
        out
    }
}

impl Scalar for ExpConst {
    fn from_i64(v: i64) -> Self {
        Self::rational(Rational::from_i64(v))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }

    fn div_i64(&self, d: i64) -> Self {
        self.scale_rational(&Rational::from_ratio(1, d))
    }
}

/// The exponential rates `c_a = −a₀θ`, `c_b = −b₀θ` of a computation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpContext {
    pub c: [Rational; 2],
}

impl ExpContext {
    pub fn new(center: &(Rational, Rational), theta: &Rational) -> Self {
        Self {
            c: [-(&center.0 * theta), -(&center.1 * theta)],
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            c: [self.c[1].clone(), self.c[0].clone()],
        }
    }

    /// `λ = i·c_a + j·c_b`
    pub fn rate(&self, key: ExpKey) -> Rational {
        &self.c[0] * Rational::from_i64(key.0 as i64) + &self.c[1] * Rational::from_i64(key.1 as i64)
    }

    /// Value of `x` rounded once to `f64`.
    ///
    /// The rational coefficients can be large and of alternating sign, so
    /// the sum is formed in fixed point with [`FIXED_BITS`] fractional bits
    /// before the final rounding.
    pub fn eval(&self, x: &ExpConst) -> f64 {
        let mut acc = BigInt::zero();
        for (k, r) in &x.terms {
            let e = exp_fixed(&(self.rate(*k) / Rational::from_i64(4)));
            acc += (r.numer() * e) / r.denom();
        }
        rational_to_f64(&Rational::new(acc, BigInt::one() << FIXED_BITS))
    }
}

/// Fractional bits used by [`ExpContext::eval`].
pub const FIXED_BITS: usize = 384;

/// `round(e^x · 2^FIXED_BITS)`, up to a few units in the last place.
fn exp_fixed(x: &Rational) -> BigInt {
    let guard = 32;
    let bits = FIXED_BITS + guard;
    let one = BigInt::one() << bits;
    // x / 2^s with |x / 2^s| < 2^{-8}
    let mut s = 8u32;
    let mut mag = x.abs();
    while mag >= Rational::from_i64(1) {
        mag = mag / Rational::from_i64(2);
        s += 1;
    }
    let scaled = x * Rational::new(one.clone(), BigInt::one() << s);
    let y = scaled.round().to_integer();
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut n = 1i64;
    loop {
        term = (&term * &y >> bits) / n;
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
    }
    for _ in 0..s {
        sum = (&sum * &sum) >> bits;
    }
    sum >> guard
}

/// `Σ_k e^{λ_k x} p_k(x)` with [`ExpConst`] coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<ExpKey, Poly<ExpConst>>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(p: Poly<ExpConst>) -> Self {
        Self::with_rate((0, 0), p)
    }

    /// `e^{λ x}·p(x)` for the rate of `key`.
    pub fn with_rate(key: ExpKey, p: Poly<ExpConst>) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(key, p);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The polynomial part, if there is no exponential part.
    pub fn as_poly(&self) -> Option<Poly<ExpConst>> {
        match self.terms.len() {
            0 => Some(Poly::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn accumulate(&mut self, key: ExpKey, p: Poly<ExpConst>) {
        let merged = match self.terms.remove(&key) {
            Some(old) => &old + &p,
            None => p,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.accumulate(*k, p.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, p)| (*k, -p)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, pa) in &self.terms {
            for (kb, pb) in &rhs.terms {
                out.accumulate((ka.0 + kb.0, ka.1 + kb.1), pa * pb);
            }
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly<ExpConst>) -> Self {
        let mut out = Self::zero();
        for (k, q) in &self.terms {
            out.accumulate(*k, q * p);
        }
        out
    }

    /// `∫_0^x f(s) ds`.
    ///
    /// For a rate `λ ≠ 0`, `∫ e^{λs} p(s) ds = e^{λs} q(s)` with
    /// `q = Σ_i (−1)^i p^{(i)} / λ^{i+1}`.
    pub fn antiderivative(&self, ctx: &ExpContext) -> Self {
        let mut out = Self::zero();
        for (k, p) in &self.terms {
            let lambda = ctx.rate(*k);
            if lambda.is_zero() {
                out.accumulate((0, 0), p.antiderivative(ExpConst::zero()));
                continue;
            }
            let inv = lambda.recip();
            let mut q = Poly::zero();
            let mut deriv = p.clone();
            let mut factor = inv.clone();
            while !deriv.is_zero() {
                q = &q + &deriv.map(|c| c.scale_rational(&factor));
                deriv = deriv.derivative();
                factor = -(&factor * &inv);
            }
            let q0 = q.coeff(0);
            out.accumulate(*k, q);
            out.accumulate((0, 0), Poly::constant(-q0));
        }
        out
    }

    /// Value at `x = quarters/4`.
    pub fn eval_quarter(&self, quarters: i32) -> ExpConst {
        let x = ExpConst::rational(Rational::from_ratio(quarters as i64, 4));
        self.terms.iter().fold(ExpConst::zero(), |acc, (k, p)| {
            acc + p.eval(&x).shift((k.0 * quarters, k.1 * quarters))
        })
    }

    /// Floating-point value at an arbitrary `x`.
    pub fn eval_f64(&self, ctx: &ExpContext, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(k, p)| {
                let lambda = rational_to_f64(&ctx.rate(*k));
                let pf = p.map(|c| ctx.eval(c));
                (lambda * x).exp() * pf.eval(&x)
            })
            .sum()
    }

    /// `x ↦ f(1 − x)`.
    pub fn reflect(&self) -> Self {
        let minus_one = -ExpConst::one();
        let one = ExpConst::one();
        let mut out = Self::zero();
        for (k, p) in &self.terms {
            let q = p
                .compose_affine(&minus_one, &one)
                .map(|c| c.shift((4 * k.0, 4 * k.1)));
            out.accumulate((-k.0, -k.1), q);
        }
        out
    }

    pub fn swap_symbols(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, p)| ((k.1, k.0), p.map(|c| c.swap_symbols())))
                .collect(),
        }
    }
}

/// A function on `[0, 1]` given by exponential polynomials on consecutive
/// intervals whose endpoints are multiples of `1/4`.
#[derive(Debug, Clone, PartialEq)]
pub struct Piecewise {
    /// Interval endpoints in quarters, from 0 to 4.
    pub breaks: Vec<i32>,
    pub pieces: Vec<ExpPoly>,
}

impl Piecewise {
    pub fn single(f: ExpPoly) -> Self {
        Self {
            breaks: vec![0, 4],
            pieces: vec![f],
        }
    }

    pub fn zero() -> Self {
        Self::single(ExpPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(ExpPoly::is_zero)
    }

    fn piece_at(&self, lo: i32) -> &ExpPoly {
        let i = self
            .breaks
            .windows(2)
            .position(|w| w[0] <= lo && lo < w[1])
            .expect("subinterval inside [0, 1]");
        &self.pieces[i]
    }

    fn merged_breaks(&self, other: &Self) -> Vec<i32> {
        let mut b: Vec<i32> = self.breaks.iter().chain(&other.breaks).copied().collect();
        b.sort_unstable();
        b.dedup();
        b
    }

    pub fn mul(&self, other: &Self) -> Self {
        let breaks = self.merged_breaks(other);
        let pieces = breaks
            .windows(2)
            .map(|w| self.piece_at(w[0]).mul(other.piece_at(w[0])))
            .collect();
        Self { breaks, pieces }
    }

    pub fn add(&self, other: &Self) -> Self {
        let breaks = self.merged_breaks(other);
        let pieces = breaks
            .windows(2)
            .map(|w| self.piece_at(w[0]).add(other.piece_at(w[0])))
            .collect();
        Self { breaks, pieces }
    }

    pub fn mul_poly(&self, p: &Poly<ExpConst>) -> Self {
        Self {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|f| f.mul_poly(p)).collect(),
        }
    }

    /// `H(s) = ∫_0^s f(x) dx`, continuous across the breakpoints.
    pub fn cumulative(&self, ctx: &ExpContext) -> Self {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut acc = ExpConst::zero();
        for (f, w) in self.pieces.iter().zip(self.breaks.windows(2)) {
            let big_f = f.antiderivative(ctx);
            let at_lo = big_f.eval_quarter(w[0]);
            let offset = acc.clone() - at_lo.clone();
            pieces.push(big_f.add(&ExpPoly::from_poly(Poly::constant(offset))));
            acc = acc + big_f.eval_quarter(w[1]) - at_lo;
        }
        Self {
            breaks: self.breaks.clone(),
            pieces,
        }
    }

    /// `∫_{lo/4}^{hi/4} f(x) dx`
    pub fn integral(&self, ctx: &ExpContext, lo: i32, hi: i32) -> ExpConst {
        let mut acc = ExpConst::zero();
        for (f, w) in self.pieces.iter().zip(self.breaks.windows(2)) {
            let (a, b) = (w[0].max(lo), w[1].min(hi));
            if a >= b || f.is_zero() {
                continue;
            }
            let big_f = f.antiderivative(ctx);
            acc = acc + big_f.eval_quarter(b) - big_f.eval_quarter(a);
        }
        acc
    }

    /// `t ↦ f(1 − t)`.
    pub fn reflect(&self) -> Self {
        Self {
            breaks: self.breaks.iter().rev().map(|b| 4 - b).collect(),
            pieces: self.pieces.iter().rev().map(ExpPoly::reflect).collect(),
        }
    }

    pub fn eval_f64(&self, ctx: &ExpContext, x: f64) -> f64 {
        let i = self
            .breaks
            .windows(2)
            .position(|w| x <= w[1] as f64 / 4.0)
            .unwrap_or(self.pieces.len() - 1);
        self.pieces[i].eval_f64(ctx, x)
    }
}

/// Truncated convolution with the prime-cutoff window:
/// `s ↦ ∫_0^{min(s, 3/4)} w(u) f(s − u) du`.
pub fn windowed_convolution(ctx: &ExpContext, weight: &ExpPoly, f: &Poly<ExpConst>) -> Piecewise {
    const CUTOFF: i32 = 3;
    let deg = match f.degree() {
        Some(d) => d,
        None => return Piecewise::zero(),
    };
    let mut below = ExpPoly::zero();
    let mut above = Poly::<ExpConst>::zero();
    for i in 0..=deg {
        // f(s − u) = Σ_i s^i g_i(u)
        let g: Vec<ExpConst> = (i..=deg)
            .map(|k| {
                let c = f.coeff(k).scale_rational(&Rational::from_i64(binomial(k, i)));
                if (k - i) % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        let gi = Poly::new(g);
        let big_g = weight.mul_poly(&gi).antiderivative(ctx);
        let s_pow = Poly::monomial(ExpConst::one(), i);
        below = below.add(&big_g.mul_poly(&s_pow));
        above = &above + &s_pow.scale(&big_g.eval_quarter(CUTOFF));
    }
    Piecewise {
        breaks: vec![0, CUTOFF, 4],
        pieces: vec![below, ExpPoly::from_poly(above)],
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn lift(p: &Poly<Rational>) -> Poly<ExpConst> {
    p.map(|c| ExpConst::rational(c.clone()))
}

/// Which shift variable a one-sided factor depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    fn key(self) -> ExpKey {
        match self {
            Side::A => (1, 0),
            Side::B => (0, 1),
        }
    }
}

/// One-sided Taylor coefficients (in the side's own variable) of a factor,
/// as functions of the position variable `x ∈ [0, 1]`.
pub(crate) struct SideFactors {
    pub v1: Vec<Piecewise>,
    pub v2: Vec<Piecewise>,
    pub w2: Vec<Piecewise>,
}

/// Taylor coefficients of `𝒱ᵢ(a, x) = aθPᵢ(x) + Pᵢ'(x)` about `a₀`.
pub fn v_coefficients(pi: &Poly<Rational>, a0: &Rational, theta: &Rational, order: usize) -> Vec<Poly<Rational>> {
    let mut out = vec![Poly::zero(); order + 1];
    out[0] = &pi.scale(&(a0 * theta)) + &pi.derivative();
    if order >= 1 {
        out[1] = pi.scale(theta);
    }
    out
}

/// Taylor coefficients of `𝒲₂(a, x)` about `a₀` as piecewise exponential
/// polynomials in `x`.
pub fn w2_coefficients(
    cfg: &MollifierConfig,
    side: Side,
    a0: &Rational,
    order: usize,
    ctx: &ExpContext,
) -> Vec<Piecewise> {
    let theta = &cfg.theta;
    let pu = lift(&cfg.p_over_u());
    let v2 = v_coefficients(&cfg.p2, a0, theta, 1);
    let f0 = lift(&v2[0]);
    let f1 = lift(&v2[1]);
    let minus_theta = ExpConst::rational(-theta.clone());
    // (−θu)^m / m!
    let mut powers = vec![Poly::constant(ExpConst::one())];
    for m in 1..=order {
        let next = (&powers[m - 1] * &Poly::monomial(minus_theta.clone(), 1))
            .map(|c| c.div_i64(m as i64));
        powers.push(next);
    }
    (0..=order)
        .map(|m| {
            let w0 = ExpPoly::with_rate(side.key(), &powers[m] * &pu);
            let mut acc = windowed_convolution(ctx, &w0, &f0);
            if m >= 1 {
                let w1 = ExpPoly::with_rate(side.key(), &powers[m - 1] * &pu);
                acc = acc.add(&windowed_convolution(ctx, &w1, &f1));
            }
            acc
        })
        .collect()
}

impl SideFactors {
    pub fn build(cfg: &MollifierConfig, side: Side, center: &Rational, order: usize, ctx: &ExpContext) -> Self {
        let as_pw = |ps: Vec<Poly<Rational>>| -> Vec<Piecewise> {
            ps.iter()
                .map(|p| Piecewise::single(ExpPoly::from_poly(lift(p))))
                .collect()
        };
        Self {
            v1: as_pw(v_coefficients(&cfg.p1, center, &cfg.theta, order)),
            v2: as_pw(v_coefficients(&cfg.p2, center, &cfg.theta, order)),
            w2: w2_coefficients(cfg, side, center, order, ctx),
        }
    }

    pub fn get(&self, kind: Factor) -> &[Piecewise] {
        match kind {
            Factor::V1 => &self.v1,
            Factor::V2 => &self.v2,
            Factor::W2 => &self.w2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    V1,
    V2,
    W2,
}

/// The three integral shapes that make up the main-term components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Shape {
    /// `∫_0^1 F(x) G(x) dx`
    Plain,
    /// `∫_0^{3/4} (P(t)/t) ∫_0^{1−t} F G dx dt`
    Prime,
    /// `∫_0^{3/4} (P(t)²/t) ∫_0^{1−t} F G dx dt`
    PrimeSquared,
    /// `∫_0^{3/4} (P(t)/t) ∫_0^{min(3/4,1−t)} (P(t₁)/t₁) ∫_0^{1−t−t₁} F G`
    TwoPrimes,
}

pub(crate) fn shape_integral(
    shape: Shape,
    cfg: &MollifierConfig,
    ctx: &ExpContext,
    f: &Piecewise,
    g: &Piecewise,
) -> ExpConst {
    if f.is_zero() || g.is_zero() {
        return ExpConst::zero();
    }
    let product = f.mul(g);
    let pu = lift(&cfg.p_over_u());
    match shape {
        Shape::Plain => product.integral(ctx, 0, 4),
        Shape::Prime | Shape::PrimeSquared => {
            let weight = if shape == Shape::Prime {
                pu
            } else {
                &lift(&cfg.p) * &pu
            };
            product
                .cumulative(ctx)
                .reflect()
                .mul_poly(&weight)
                .integral(ctx, 0, 3)
        }
        Shape::TwoPrimes => {
            let k = product
                .cumulative(ctx)
                .pieces
                .iter()
                .map(|p| p.as_poly())
                .collect::<Option<Vec<_>>>()
                .filter(|ps| ps.len() == 1)
                .map(|mut ps| ps.remove(0))
                .expect("two-prime terms only involve polynomial factors");
            windowed_convolution(ctx, &ExpPoly::from_poly(pu.clone()), &k)
                .reflect()
                .mul_poly(&pu)
                .integral(ctx, 0, 3)
        }
    }
}

/// Terms `(sign, shape, a-factor, b-factor)` of `σ_{ij}`.
pub(crate) fn component_terms(i: usize, j: usize, sigma22_sign: i64) -> Vec<(i64, Shape, Factor, Factor)> {
    use Factor::*;
    use Shape::*;
    match (i, j) {
        (1, 1) => vec![(1, Plain, V1, V1)],
        (1, 2) => vec![(-1, Plain, V1, W2)],
        (2, 1) => vec![(-1, Plain, W2, V1)],
        (2, 2) => vec![(sigma22_sign, Plain, W2, W2)],
        (1, 3) => vec![(1, Prime, V1, V2)],
        (3, 1) => vec![(1, Prime, V2, V1)],
        (2, 3) => vec![(-1, Prime, W2, V2)],
        (3, 2) => vec![(-1, Prime, V2, W2)],
        (3, 3) => vec![(1, PrimeSquared, V2, V2), (1, TwoPrimes, V2, V2)],
        _ => panic!("component indices must lie in 1..=3, got ({i}, {j})"),
    }
}

/// Exact jet of `σ_{ij}` computed directly from its integral formula.
pub(crate) fn component_direct(
    i: usize,
    j: usize,
    cfg: &MollifierConfig,
    center: &(Rational, Rational),
    orders: (usize, usize),
    a_side: &SideFactors,
    b_side: &SideFactors,
    ctx: &ExpContext,
) -> Jet2<ExpConst> {
    let terms = component_terms(i, j, cfg.sigma22_sign());
    let ec = (
        ExpConst::rational(center.0.clone()),
        ExpConst::rational(center.1.clone()),
    );
    Jet2::from_fn(ec, orders, |m, n| {
        terms
            .iter()
            .fold(ExpConst::zero(), |acc, &(sign, shape, fa, fb)| {
                let v = shape_integral(shape, cfg, ctx, &a_side.get(fa)[m], &b_side.get(fb)[n]);
                acc + v.scale_rational(&Rational::from_i64(sign))
            })
    })
}

/// Evaluates an exact jet to floating point.
pub fn evaluate_jet(jet: &Jet2<ExpConst>, ctx: &ExpContext) -> Jet2<f64> {
    jet.map(|c| ctx.eval(c))
}

/// `f(b, a)` for an exact jet, including the exchange of `E_a` and `E_b`.
pub fn transpose_exact(jet: &Jet2<ExpConst>) -> Jet2<ExpConst> {
    jet.transpose().map_coeffs(ExpConst::swap_symbols)
}
