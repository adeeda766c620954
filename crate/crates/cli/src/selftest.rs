//! Fast invariant suite run by the `selftest` command.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use levkit_core::arith::{
    characters_mod, divisor_count, gauss_sum, gcd, kloosterman_sum, mertens_sum, primitive_characters,
    DirichletCharacter,
};
use levkit_core::jet::{Poly, Rational, Scalar};
use levkit_core::levinson::{
    default_orders, exact_functional_parts, functional_for, kappa_lower_bound,
    kappa_lower_bound_with_orders, ConstrainedParams, Orientation,
};
use levkit_core::mainterm::exact::transpose_exact;
use levkit_core::mainterm::{
    s_total_exact, sigma_bruteforce, sigma_component, sigma_component_exact,
    sigma_component_exact_direct, sigma_direct, w2_piecewise, Backend, MollifierConfig, Variable,
};
use levkit_core::moment::{
    hurwitz_zeta, i_main_direct, i_main_grouped, l_value, EulerMaclaurin, MomentConfig,
};
use levkit_core::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

const PROPERTIES: &[(&str, Check)] = &[
    ("gauss_sum_modulus", gauss_sums),
    ("hurwitz_half_identity", hurwitz_half),
    ("classical_l_values", classical_l_values),
    ("l_conjugate_symmetry", conjugate_symmetry),
    ("mertens_residual", mertens),
    ("weil_shape_bound", weil),
    ("w2_continuity", w2_continuity),
    ("transpose_symmetry", transpose_symmetry),
    ("degenerate_prime_polynomial", degenerate_prime_polynomial),
    ("backend_agreement", backend_agreement),
    ("truncation_stability", truncation_stability),
    ("swap_symmetry", swap_symmetry),
    ("published_bounds", published_bounds),
    ("oracle_consistency", oracle_consistency),
    ("main_term_forms", main_term_forms),
];

pub fn run_all() -> Vec<PropertyResult> {
    PROPERTIES
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
            PropertyResult { name, passed, detail }
        })
        .collect()
}

pub fn table(results: &[PropertyResult]) -> String {
    let mut s = String::new();
    for r in results {
        let mark = if r.passed { "pass" } else { "FAIL" };
        s += &format!("{mark:<5} {:<30} {}\n", r.name, r.detail);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    s += &format!("{} of {} properties passed\n", results.len() - failed, results.len());
    s
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn nonprincipal(q: u64) -> Result<DirichletCharacter> {
    Ok(characters_mod(q)?
        .into_iter()
        .find(|x| !x.is_principal())
        .expect("q > 2 has a nonprincipal character"))
}

fn worst(ok: bool, label: &str, v: f64) -> (bool, String) {
    (ok, format!("{label} {v:.3e}"))
}

fn gauss_sums() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for q in 1..=100 {
        for chi in primitive_characters(q)? {
            dev = dev.max((gauss_sum(&chi).norm_sqr() - q as f64).abs());
        }
    }
    Ok(worst(dev < 1e-8, "max ||τ|² − q|", dev))
}

fn hurwitz_half() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut dev = 0.0f64;
    for _ in 0..20 {
        let s = c(rng.random_range(-2.0..4.0), rng.random_range(-60.0..60.0));
        if (s - 1.0).norm() < 1e-3 {
            continue;
        }
        let lhs = hurwitz_zeta(s, 0.5)?;
        let rhs = ((s * 2f64.ln()).exp() - 1.0) * hurwitz_zeta(s, 1.0)?;
        dev = dev.max((lhs - rhs).norm() / rhs.norm().max(1.0));
    }
    Ok(worst(dev <= 1e-8, "max relative deviation", dev))
}

fn classical_l_values() -> Result<(bool, String)> {
    let catalan = 0.915_965_594_177_219_0;
    let a = (l_value(c(2.0, 0.0), &nonprincipal(4)?)? - catalan).norm();
    let b = (l_value(c(1.0, 0.0), &nonprincipal(3)?)? - PI / (3.0 * 3f64.sqrt())).norm();
    Ok(worst(a < 1e-6 && b < 1e-6, "max deviation", a.max(b)))
}

fn conjugate_symmetry() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let chars = [nonprincipal(5)?, primitive_characters(7)?.remove(1)];
    let mut dev = 0.0f64;
    for k in 0..20 {
        let chi = &chars[k % 2];
        let t = rng.random_range(-200.0..200.0);
        let a = l_value(c(0.5, t), chi)?.norm();
        let b = l_value(c(0.5, -t), &chi.conjugate())?.norm();
        dev = dev.max((a - b).abs() / a.max(1.0));
    }
    Ok(worst(dev < 1e-8, "max relative deviation", dev))
}

fn mertens() -> Result<(bool, String)> {
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 1..=6 {
        let y = 10u64.pow(k);
        let r = mertens_sum(y)? - (y as f64).ln();
        range = (range.0.min(r), range.1.max(r));
    }
    let ok = range.0 >= -2.0 && range.1 <= 0.0;
    Ok((ok, format!("residual range [{:.4}, {:.4}] for y = 10..10⁶", range.0, range.1)))
}

fn weil() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ratio = 0.0f64;
    for _ in 0..200 {
        let v: u64 = rng.random_range(2..=500);
        let l: i64 = rng.random_range(-1000..=1000);
        let g: u64 = rng.random_range(1..=30);
        let d = divisor_count(v) as f64;
        let lv = gcd(l.unsigned_abs(), v).max(1) as f64;
        let mut b = 1u64;
        while b <= v {
            let s = kloosterman_sum(l, v, Some(b), g)?;
            let shape = d * (v as f64).sqrt() * lv * (1.0 + b as f64 / v as f64);
            ratio = ratio.max(s.norm() / shape);
            b *= 2;
        }
    }
    Ok((ratio <= 10.0, format!("max |S| / shape {ratio:.4} (slack 10)")))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn kappa() -> Result<MollifierConfig> {
    ConstrainedParams::kappa_published().decode()
}

fn kappa_star() -> Result<MollifierConfig> {
    ConstrainedParams::kappa_star_published().decode()
}

fn w2_continuity() -> Result<(bool, String)> {
    let cfg = kappa()?;
    let mut ok = true;
    for c in [q(-13, 10), q(0, 1), q(13, 10)] {
        let (pieces, _) = w2_piecewise(&cfg, &(c.clone(), c), 5, Variable::A);
        ok &= pieces
            .iter()
            .all(|pw| pw.pieces[0].eval_quarter(3) == pw.pieces[1].eval_quarter(3));
    }
    Ok((ok, "exact equality at 3/4".into()))
}

fn transpose_symmetry() -> Result<(bool, String)> {
    let cfg = kappa_star()?;
    let mut ok = true;
    for c in [q(-1116, 1000), q(0, 1), q(1, 3)] {
        let cc = (c.clone(), c);
        for i in 1..=3 {
            for j in 1..=3 {
                let direct = sigma_component_exact_direct(i, j, &cfg, &cc, (3, 3))?;
                let mirrored = sigma_component_exact_direct(j, i, &cfg, &cc, (3, 3))?;
                ok &= direct.jet == transpose_exact(&mirrored.jet);
            }
        }
    }
    Ok((ok, "exact equality, 9 components at 3 centers".into()))
}

fn degenerate_prime_polynomial() -> Result<(bool, String)> {
    let mut cfg = kappa()?;
    cfg.p = Poly::zero();
    let c = (q(-13, 10), q(-13, 10));
    let total = s_total_exact(&cfg, &c, (5, 5))?;
    let s11 = sigma_component_exact(1, 1, &cfg, &c, (5, 5))?;
    let mut cfg2 = cfg.clone();
    cfg2.p2 = Poly::zero();
    let s11b = sigma_component_exact(1, 1, &cfg2, &c, (5, 5))?;
    Ok((total.jet == s11.jet && s11b.jet == s11.jet, "P ≡ 0 leaves σ11 only".into()))
}

fn backend_agreement() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for cfg in [kappa()?, kappa_star()?] {
        let d = cfg.q_degree();
        for sign in [-1, 1] {
            let c = &cfg.r * Rational::from_i64(sign);
            let cc = (c.clone(), c);
            for i in 1..=3 {
                for j in 1..=3 {
                    let e = sigma_component(i, j, &cfg, &cc, (d, d), Backend::Exact)?;
                    let g = sigma_component(i, j, &cfg, &cc, (d, d), Backend::Quadrature)?;
                    dev = dev.max(e.max_rel_diff(&g, 1e-12));
                }
            }
        }
        let e = functional_for(&cfg, Backend::Exact, (d, d))?;
        let g = functional_for(&cfg, Backend::Quadrature, (d, d))?;
        dev = dev.max((e - g).abs() / e.abs());
    }
    Ok(worst(dev < 1e-9, "max relative difference", dev))
}

fn truncation_stability() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for cfg in [kappa()?, kappa_star()?] {
        let d = cfg.q_degree();
        let lo = kappa_lower_bound_with_orders(&cfg, Backend::Exact, (d, d))?;
        let hi = kappa_lower_bound_with_orders(&cfg, Backend::Exact, (d + 2, d + 2))?;
        dev = dev.max((lo.kappa_lower_bound - hi.kappa_lower_bound).abs());
    }
    Ok(worst(dev < 1e-10, "max |Δκ|", dev))
}

fn swap_symmetry() -> Result<(bool, String)> {
    let mut ok = true;
    for cfg in [kappa()?, kappa_star()?] {
        let orders = default_orders(&cfg);
        let (a1, b1, _) = exact_functional_parts(&cfg, orders, Orientation::Swapped)?;
        let (a2, b2, _) = exact_functional_parts(&cfg, orders, Orientation::Direct)?;
        ok &= a1 == a2 && b1 == b2;
    }
    Ok((ok, "exact equality of Λ parts".into()))
}

fn published_bounds() -> Result<(bool, String)> {
    let k = kappa_lower_bound(&kappa()?, Backend::Exact)?.kappa_lower_bound;
    let ks = kappa_lower_bound(&kappa_star()?, Backend::Exact)?.kappa_lower_bound;
    let ok = (0.4172..=0.4190).contains(&k) && (0.4074..=0.4090).contains(&ks);
    Ok((ok, format!("κ {k:.6}, κ* {ks:.6}")))
}

fn oracle_consistency() -> Result<(bool, String)> {
    let cfg = kappa()?.float_view();
    let mut dev = 0.0f64;
    for q in [1u64, 3, 4] {
        for y in [17u64, 60, 200] {
            let j = sigma_bruteforce(&cfg, y, q, 0.7, -0.3)?;
            let d = sigma_direct(&cfg, y, q, 0.7, -0.3)?;
            dev = dev.max((j - d).abs() / d.abs().max(1.0));
        }
    }
    Ok(worst(dev <= 1e-10, "max relative difference", dev))
}

fn main_term_forms() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for q in [1u64, 3, 4] {
        let mc = MomentConfig {
            q,
            character_index: 0,
            t: 3000.0,
            theta: 0.8,
            mollifier: Some(kappa()?),
            step: 0.05,
            euler_maclaurin: EulerMaclaurin::default(),
        };
        let d = i_main_direct(&mc)?;
        let g = i_main_grouped(&mc)?;
        dev = dev.max((d - g).abs() / d.abs());
    }
    Ok(worst(dev < 1e-11, "direct vs grouped", dev))
}
