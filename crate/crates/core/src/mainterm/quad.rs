//! Gauss–Legendre main-term backend.

use std::sync::OnceLock;

use crate::jet::{Jet2, Poly};

use super::config::FloatConfig;
use super::exact::{component_terms, Factor, Shape};

pub const GAUSS_NODES: usize = 24;

/// Nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GAUSS_NODES))
}

/// Calls `f(x, w)` for the rule mapped to `[lo, hi]`.
fn for_nodes(lo: f64, hi: f64, mut f: impl FnMut(f64, f64)) {
    if hi <= lo {
        return;
    }
    let (xs, ws) = rule();
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    for (x, w) in xs.iter().zip(ws) {
        f(mid + half * x, half * w);
    }
}

/// Like [`for_nodes`], split at each interior breakpoint.
fn for_pieces(lo: f64, hi: f64, breaks: &[f64], mut f: impl FnMut(f64, f64)) {
    let mut a = lo;
    for &b in breaks.iter().filter(|&&b| b > lo && b < hi) {
        for_nodes(a, b, &mut f);
        a = b;
    }
    for_nodes(a, hi, &mut f);
}

/// One-sided factor values in floating point.
pub(crate) struct QuadSide<'a> {
    cfg: &'a FloatConfig,
    pu: Poly<f64>,
    center: f64,
    order: usize,
}

impl<'a> QuadSide<'a> {
    pub fn new(cfg: &'a FloatConfig, center: f64, order: usize) -> Self {
        let pu = cfg.p.divide_by_x().unwrap_or_else(Poly::zero);
        Self {
            cfg,
            pu,
            center,
            order,
        }
    }

    fn v(&self, pi: &Poly<f64>, x: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.order + 1];
        let p = pi.eval(&x);
        out[0] = self.center * self.cfg.theta * p + pi.derivative().eval(&x);
        if self.order >= 1 {
            out[1] = self.cfg.theta * p;
        }
        out
    }

    /// Taylor coefficients of `𝒲₂(·, s)` about the center.
    pub fn w2(&self, s: f64) -> Vec<f64> {
        let theta = self.cfg.theta;
        let dp2 = self.cfg.p2.derivative();
        let mut out = vec![0.0; self.order + 1];
        let mut powers = vec![0.0; self.order + 1];
        for_nodes(0.0, s.min(0.75), |u, w| {
            let base = w * (-self.center * theta * u).exp() * self.pu.eval(&u);
            let p2 = self.cfg.p2.eval(&(s - u));
            let f0 = self.center * theta * p2 + dp2.eval(&(s - u));
            let f1 = theta * p2;
            powers[0] = 1.0;
            for m in 1..=self.order {
                powers[m] = powers[m - 1] * (-theta * u) / m as f64;
            }
            for m in 0..=self.order {
                let mut v = powers[m] * f0;
                if m >= 1 {
                    v += powers[m - 1] * f1;
                }
                out[m] += base * v;
            }
        });
        out
    }

    pub fn values(&self, kind: Factor, x: f64) -> Vec<f64> {
        match kind {
            Factor::V1 => self.v(&self.cfg.p1, x),
            Factor::V2 => self.v(&self.cfg.p2, x),
            Factor::W2 => self.w2(x),
        }
    }
}

fn accumulate(acc: &mut [f64], cols: usize, w: f64, fa: &[f64], fb: &[f64]) {
    for (m, a) in fa.iter().enumerate() {
        if *a == 0.0 {
            continue;
        }
        for (n, b) in fb.iter().enumerate() {
            acc[m * cols + n] += w * a * b;
        }
    }
}

/// Adds `w · ∫_0^s F G dx` to `acc`.
fn inner_product(acc: &mut [f64], cols: usize, w: f64, s: f64, sa: &QuadSide, fa: Factor, sb: &QuadSide, fb: Factor) {
    for_pieces(0.0, s, &[0.75], |x, wx| {
        accumulate(acc, cols, w * wx, &sa.values(fa, x), &sb.values(fb, x));
    });
}

fn shape_matrix(shape: Shape, cfg: &FloatConfig, sa: &QuadSide, fa: Factor, sb: &QuadSide, fb: Factor, cols: usize, acc: &mut [f64]) {
    let pu = &sa.pu;
    match shape {
        Shape::Plain => inner_product(acc, cols, 1.0, 1.0, sa, fa, sb, fb),
        Shape::Prime | Shape::PrimeSquared => {
            for_pieces(0.0, 0.75, &[0.25], |t, wt| {
                let mut weight = pu.eval(&t);
                if shape == Shape::PrimeSquared {
                    weight *= cfg.p.eval(&t);
                }
                inner_product(acc, cols, wt * weight, 1.0 - t, sa, fa, sb, fb);
            });
        }
        Shape::TwoPrimes => {
            for_pieces(0.0, 0.75, &[0.25], |t, wt| {
                let outer = wt * pu.eval(&t);
                for_nodes(0.0, f64::min(0.75, 1.0 - t), |t1, w1| {
                    inner_product(acc, cols, outer * w1 * pu.eval(&t1), 1.0 - t - t1, sa, fa, sb, fb);
                });
            });
        }
    }
}

/// Quadrature jet of `σ_{ij}` computed directly from its integral formula.
pub(crate) fn component_direct(i: usize, j: usize, cfg: &FloatConfig, center: (f64, f64), orders: (usize, usize)) -> Jet2<f64> {
    let sa = QuadSide::new(cfg, center.0, orders.0);
    let sb = QuadSide::new(cfg, center.1, orders.1);
    let cols = orders.1 + 1;
    let mut total = vec![0.0; (orders.0 + 1) * cols];
    for (sign, shape, fa, fb) in component_terms(i, j, cfg.sigma22_sign as i64) {
        if sa.pu.is_zero() && (fa == Factor::W2 || fb == Factor::W2 || shape != Shape::Plain) {
            continue;
        }
        let mut acc = vec![0.0; total.len()];
        shape_matrix(shape, cfg, &sa, fa, &sb, fb, cols, &mut acc);
        for (t, a) in total.iter_mut().zip(acc) {
            *t += sign as f64 * a;
        }
    }
    Jet2::from_fn(center, orders, |m, n| total[m * cols + n])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let (x, w) = gauss_legendre(GAUSS_NODES);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for k in 0..48 {
            let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((approx - exact).abs() < 1e-14, "k={k}: {approx}");
        }
    }

    #[test]
    fn piece_splitting_handles_kinks() {
        let mut acc = 0.0;
        for_pieces(0.0, 1.0, &[0.75], |x, w| acc += w * f64::min(x, 0.75));
        let exact = 0.75 * 0.75 / 2.0 + 0.75 * 0.25;
        assert!((acc - exact).abs() < 1e-15);
    }
}
