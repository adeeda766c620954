use crate::jet::{apply_operator, rational_from_f64, rational_to_f64, Jet2, Poly, Rational, Scalar};
use crate::{Error, Result};

/// How the first term of the numerator is oriented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `S(b, a)`, as in the bound.
    Swapped,
    /// `S(a, b)`; equal to the above when both centers lie on the diagonal.
    Direct,
}

/// Jet of `1 / (θ(a + b))` about `(a₀, b₀)`.
fn inverse_denominator<T: Scalar>(
    center: (T, T),
    sum0: &Rational,
    theta: &Rational,
    orders: (usize, usize),
) -> Result<Jet2<T>> {
    let d00 = theta * sum0;
    if rational_to_f64(&d00).abs() < 1e-9 {
        return Err(Error::Singularity(format!(
            "θ(a₀ + b₀) = {} is too close to zero",
            rational_to_f64(&d00)
        )));
    }
    // 1/(d₀₀ + θu) = Σ_k (−θ/d₀₀)^k u^k / d₀₀ with u = δa + δb.
    let ratio = -(theta / &d00);
    let inv = d00.recip();
    Ok(Jet2::from_fn(center, orders, |m, n| {
        let k = m + n;
        let mut binom = Rational::from_i64(1);
        for i in 0..m {
            binom = binom * Rational::from_i64((k - i) as i64) / Rational::from_i64((i + 1) as i64);
        }
        let mut pow = Rational::from_i64(1);
        for _ in 0..k {
            pow = &pow * &ratio;
        }
        T::from_rational(&(&inv * pow * binom))
    }))
}

/// The two pieces of the Levinson functional, with
/// `Λ = A − e^{−a₀−b₀}·B` at the center `(a₀, b₀) = (−R, −R)`.
///
/// `A` is `Q(−∂_a)Q(−∂_b)` applied to `S(b, a)/(θ(a+b))` and `B` to
/// `e^{−(a−a₀)−(b−b₀)} S(−a, −b)/(θ(a+b))`. Every step is linear in the
/// jets and uses only rational constants, so exact inputs give exact parts.
pub fn functional_parts<T: Scalar>(
    s_neg: &Jet2<T>,
    s_pos: &Jet2<T>,
    q: &Poly<Rational>,
    r: &Rational,
    theta: &Rational,
    orientation: Orientation,
) -> Result<(T, T)> {
    let minus_r = T::from_rational(&-r.clone());
    let plus_r = T::from_rational(r);
    let center = (minus_r.clone(), minus_r);
    if s_neg.center() != &center || s_pos.center() != &(plus_r.clone(), plus_r) {
        return Err(Error::Shape("jets must be centered at (−R, −R) and (R, R)".into()));
    }
    let orders = s_neg.orders();
    if s_pos.orders() != orders {
        return Err(Error::Shape(format!(
            "jet orders differ: {:?} vs {:?}",
            orders,
            s_pos.orders()
        )));
    }
    let first = match orientation {
        Orientation::Swapped => s_neg.transpose(),
        Orientation::Direct => s_neg.clone(),
    };
    let minus_one = T::from_i64(-1);
    let exp = Jet2::exp_offset_series(&minus_one, &minus_one, &T::one(), center.clone(), orders)?;
    let second = exp.mul(&s_pos.negate_arguments())?;
    let inv = inverse_denominator(center, &(-(r + r)), theta, orders)?;
    let qt = q.map(T::from_rational);
    let a = apply_operator(&qt, &qt, &first.mul(&inv)?)?;
    let b = apply_operator(&qt, &qt, &second.mul(&inv)?)?;
    Ok((a, b))
}

/// `Λ = Q(−∂_a)Q(−∂_b) [S(b,a) − e^{−a−b} S(−a,−b)] / (θ(a+b))` at `a = b = −R`.
pub fn functional_value(
    s_neg: &Jet2<f64>,
    s_pos: &Jet2<f64>,
    q: &Poly<f64>,
    r: f64,
    theta: f64,
) -> Result<f64> {
    let check = |j: &Jet2<f64>| {
        if j.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite("main-term jet".into()))
        }
    };
    check(s_neg)?;
    check(s_pos)?;
    let exact = |x: f64| rational_from_f64(x);
    let q_exact = Poly::new(q.coeffs().iter().map(|c| exact(*c)).collect::<Result<_>>()?);
    let (a, b) = functional_parts(s_neg, s_pos, &q_exact, &exact(r)?, &exact(theta)?, Orientation::Swapped)?;
    combine(a, b, r)
}

/// `A − e^{2R} B`
pub fn combine(a: f64, b: f64, r: f64) -> Result<f64> {
    let v = a - (2.0 * r).exp() * b;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("functional value {v}")))
    }
}
