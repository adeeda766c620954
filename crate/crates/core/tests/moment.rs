use std::f64::consts::PI;

use levkit_core::arith::{characters_mod, primitive_characters, DirichletCharacter};
use levkit_core::levinson::ConstrainedParams;
use levkit_core::moment::*;
use levkit_core::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn nonprincipal(q: u64) -> DirichletCharacter {
    characters_mod(q).unwrap().into_iter().find(|x| !x.is_principal()).unwrap()
}

/// `Σ_{n ≤ 10⁶} χ(n) n^{−s} e^{−(n/M)²}` with `M = 2·10⁵`. For nonprincipal
/// `χ` this differs from `L(s, χ)` by about `|L(s − 2, χ)| M^{−2}`.
fn smoothed_series(s: Complex64, chi: &DirichletCharacter) -> Complex64 {
    let m = 2e5;
    let table = chi.value_table();
    let q = chi.modulus() as usize;
    (1..=1_000_000usize)
        .map(|n| {
            let w = (-(n as f64 / m).powi(2)).exp();
            table[n % q] * (-s * (n as f64).ln()).exp() * w
        })
        .sum()
}

#[test]
fn zeta_values() {
    let z2 = hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap();
    assert!((z2.re - PI * PI / 6.0).abs() < 1e-12 && z2.im.abs() < 1e-14);
    let half = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap();
    assert!((half.re - 4.9348022005446793).abs() < 1e-12);
    let principal_one = characters_mod(1).unwrap().remove(0);
    let z = l_value(c(2.0, 0.0), &principal_one).unwrap();
    assert!((z.re - PI * PI / 6.0).abs() < 1e-12);
    assert!(matches!(hurwitz_zeta(c(1.0, 0.0), 0.3), Err(Error::Pole(_))));
    assert!(matches!(l_value(c(1.0, 0.0), &principal_one), Err(Error::Pole(_))));
    assert!(matches!(hurwitz_zeta(c(0.5, 2e5), 0.3), Err(Error::Capacity(_))));
}

#[test]
fn hurwitz_half_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let s = c(rng.random_range(-2.0..4.0), rng.random_range(-60.0..60.0));
        if (s - 1.0).norm() < 1e-3 {
            continue;
        }
        let lhs = hurwitz_zeta(s, 0.5).unwrap();
        let rhs = ((s * 2f64.ln()).exp() - 1.0) * hurwitz_zeta(s, 1.0).unwrap();
        assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm().max(1.0), "s = {s}");
    }
}

#[test]
fn classical_l_values() {
    let catalan = l_value(c(2.0, 0.0), &nonprincipal(4)).unwrap();
    // Σ (−1)^k/(2k+1)² with the alternating-series remainder bound.
    let series: f64 = (0..200_000).map(|k| (-1f64).powi(k) / ((2 * k + 1) as f64).powi(2)).sum();
    assert!((catalan.re - series).abs() < 1e-6 && catalan.im.abs() < 1e-12);
    assert!((catalan.re - 0.9159656).abs() < 1e-6);
    let third = l_value(c(1.0, 0.0), &nonprincipal(3)).unwrap();
    assert!((third.re - PI / (3.0 * 3f64.sqrt())).abs() < 1e-9);
    assert!((third.re - 0.6046003).abs() < 1e-6);
}

#[test]
fn l_values_match_smoothed_series_on_the_critical_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in [3u64, 4, 5] {
        for chi in primitive_characters(q).unwrap() {
            for _ in 0..3 {
                let s = c(0.5, rng.random_range(10.0..100.0));
                let v = l_value(s, &chi).unwrap();
                let w = smoothed_series(s, &chi);
                assert!((v - w).norm() < 1e-6, "q={q} s={s}: {v} vs {w}");
            }
        }
    }
}

#[test]
fn conjugate_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let chars = [nonprincipal(5), primitive_characters(7).unwrap().remove(1)];
    for k in 0..20 {
        let chi = &chars[k % 2];
        let t = rng.random_range(-200.0..200.0);
        let a = l_value(c(0.5, t), chi).unwrap().norm();
        let b = l_value(c(0.5, -t), &chi.conjugate()).unwrap().norm();
        assert!((a - b).abs() < 1e-8 * a.max(1.0));
    }
}

#[test]
fn critical_line_evaluator_agrees_with_l_value() {
    let chi = nonprincipal(3);
    let line = CriticalLine::new(&chi, 3000.0, &EulerMaclaurin::default()).unwrap();
    for t in [10.0, 123.4, 2999.0] {
        let a = line.eval(t);
        let b = l_value(c(0.5, t), &chi).unwrap();
        assert!((a - b).norm() < 1e-9 * b.norm().max(1.0), "t={t}");
    }
}

fn config(q: u64, t: f64, with_mollifier: bool) -> MomentConfig {
    MomentConfig {
        q,
        character_index: 0,
        t,
        theta: 0.45,
        mollifier: with_mollifier.then(|| ConstrainedParams::kappa_published().decode().unwrap()),
        step: 0.05,
        euler_maclaurin: EulerMaclaurin::default(),
    }
}

#[test]
fn main_term_without_mollifier() {
    let mc = config(3, 1000.0, false);
    let v = i_main(&mc).unwrap();
    let expected = 2.0 / 3.0
        * 1000.0
        * ((3000.0 / (2.0 * PI)).ln() + 2.0 * EULER_GAMMA - 1.0 + 3f64.ln() / 2.0 + 2.0 * 2f64.ln());
    assert!((v - expected).abs() < 1e-9 * expected);
    assert!((v - 5505.70).abs() / 5505.70 < 1e-5);
    // q = 1 reduces to T(log(T/2π) + 2γ − 1 + 2 log 2).
    let mc = config(1, 2000.0, false);
    let expected = 2000.0 * ((2000.0 / (2.0 * PI)).ln() + 2.0 * EULER_GAMMA - 1.0 + 2.0 * 2f64.ln());
    assert!((i_main(&mc).unwrap() - expected).abs() < 1e-9 * expected);
}

#[test]
fn main_term_forms_agree_and_are_symmetric() {
    for q in [1u64, 3, 4] {
        let mc = MomentConfig {
            theta: 0.8,
            ..config(q, 3000.0, true)
        };
        let d = i_main_direct(&mc).unwrap();
        let g = i_main_grouped(&mc).unwrap();
        assert!((d - g).abs() < 1e-11 * d.abs(), "q={q}: {d} vs {g}");
    }
    let mc = config(3, 5000.0, true);
    let a = mc.coefficients().unwrap();
    let y = a.len() - 1;
    let f: Vec<f64> = a
        .iter()
        .enumerate()
        .map(|(h, c)| if h == 0 || h % 3 == 0 { 0.0 } else { c / h as f64 })
        .collect();
    let logs: Vec<f64> = (0..=y).map(|n| (n.max(1) as f64).ln()).collect();
    for h in 1..=y {
        for k in 1..=y {
            assert_eq!(pair_term(h, k, &f, &logs, 1.7).to_bits(), pair_term(k, h, &f, &logs, 1.7).to_bits());
        }
        if h % 3 == 0 {
            assert_eq!(pair_term(h, 1, &f, &logs, 1.7), 0.0);
        }
    }
}

#[test]
fn numeric_moment_is_consistent() {
    let mc = config(3, 300.0, true);
    let r = i_numeric(&mc).unwrap();
    assert!(r.value > 0.0);
    assert_eq!(r.partials.len(), 10);
    let total: f64 = r.partials.iter().map(|p| p.value).sum();
    assert!((total - r.value).abs() < 1e-9 * r.value);
    assert!(r.probe.relative_change < 0.01);
    assert!(r.warnings.is_empty());
}

#[test]
fn zeta_moment_growth() {
    let mc = config(1, 2000.0, false);
    let r = i_numeric(&mc).unwrap();
    let growth = r.value / (2000.0 * 2000f64.ln());
    assert!((0.7..=1.3).contains(&growth), "{growth}");
}

#[test]
fn moment_config_validation() {
    let good = config(3, 1000.0, true);
    assert!(good.validate().is_ok());
    let bad = [
        MomentConfig { q: 0, ..good.clone() },
        MomentConfig { theta: 1.0, ..good.clone() },
        MomentConfig { t: 10.0, ..good.clone() },
        MomentConfig { step: 0.6, ..good.clone() },
        MomentConfig { character_index: 1, ..good.clone() },
    ];
    for mc in bad {
        assert!(matches!(mc.validate(), Err(Error::Validation { .. })), "{mc:?}");
    }
    let huge = MomentConfig {
        t: 90_000.0,
        step: 0.01,
        ..good
    };
    assert!(matches!(i_numeric(&huge), Err(Error::Capacity(_))));
}
