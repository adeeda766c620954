use super::{Field, Poly, Scalar};
use crate::{Error, Result};

/// Order guard for exponential jets (factorials stay exact well past this).
pub const MAX_EXP_ORDER: usize = 32;

/// Truncated bivariate Taylor expansion in `(a, b)` about `center`.
///
/// Entry `(m, n)` is `∂_a^m ∂_b^n f(a₀, b₀) / (m! n!)` for `m ≤ orders.0`,
/// `n ≤ orders.1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2<T> {
    center: (T, T),
    orders: (usize, usize),
    coeffs: Vec<T>,
}

impl<T: Scalar> Jet2<T> {
    pub fn zero(center: (T, T), orders: (usize, usize)) -> Self {
        Self {
            center,
            orders,
            coeffs: vec![T::zero(); (orders.0 + 1) * (orders.1 + 1)],
        }
    }

    pub fn constant(c: T, center: (T, T), orders: (usize, usize)) -> Self {
        let mut j = Self::zero(center, orders);
        j.coeffs[0] = c;
        j
    }

    /// Builds a jet from a coefficient function `(m, n) -> T`.
    pub fn from_fn(center: (T, T), orders: (usize, usize), f: impl Fn(usize, usize) -> T) -> Self {
        let mut coeffs = Vec::with_capacity((orders.0 + 1) * (orders.1 + 1));
        for m in 0..=orders.0 {
            for n in 0..=orders.1 {
                coeffs.push(f(m, n));
            }
        }
        Self {
            center,
            orders,
            coeffs,
        }
    }

    /// The jet of the coordinate function `a`.
    pub fn var_a(center: (T, T), orders: (usize, usize)) -> Self {
        let mut j = Self::constant(center.0.clone(), center, orders);
        if orders.0 >= 1 {
            j.set(1, 0, T::one());
        }
        j
    }

    /// The jet of the coordinate function `b`.
    pub fn var_b(center: (T, T), orders: (usize, usize)) -> Self {
        let mut j = Self::constant(center.1.clone(), center, orders);
        if orders.1 >= 1 {
            j.set(0, 1, T::one());
        }
        j
    }

    pub fn center(&self) -> &(T, T) {
        &self.center
    }

    pub fn orders(&self) -> (usize, usize) {
        self.orders
    }

    fn idx(&self, m: usize, n: usize) -> usize {
        m * (self.orders.1 + 1) + n
    }

    /// Coefficient `(m, n)`; zero beyond the stored orders.
    pub fn get(&self, m: usize, n: usize) -> T {
        if m > self.orders.0 || n > self.orders.1 {
            return T::zero();
        }
        self.coeffs[self.idx(m, n)].clone()
    }

    pub fn get_ref(&self, m: usize, n: usize) -> &T {
        &self.coeffs[self.idx(m, n)]
    }

    pub fn set(&mut self, m: usize, n: usize, v: T) {
        let i = self.idx(m, n);
        self.coeffs[i] = v;
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    fn check_shape(&self, rhs: &Self) -> Result<()> {
        if self.orders != rhs.orders {
            return Err(Error::Shape(format!(
                "jet orders {:?} vs {:?}",
                self.orders, rhs.orders
            )));
        }
        if self.center != rhs.center {
            return Err(Error::Shape(format!(
                "jet centers {:?} vs {:?}",
                self.center, rhs.center
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_shape(rhs)?;
        Ok(self.zip_with(rhs, |x, y| x.clone() + y.clone()))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_shape(rhs)?;
        Ok(self.zip_with(rhs, |x, y| x.clone() - y.clone()))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self {
            center: self.center.clone(),
            orders: self.orders,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| f(x, y)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&T) -> T) -> Self {
        Self {
            center: self.center.clone(),
            orders: self.orders,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Changes the scalar type of both center and coefficients.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Jet2<U> {
        Jet2 {
            center: (f(&self.center.0), f(&self.center.1)),
            orders: self.orders,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_shape(rhs)?;
        let (da, db) = self.orders;
        let mut out = Self::zero(self.center.clone(), self.orders);
        for i in 0..=da {
            for j in 0..=db {
                let x = self.get_ref(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..=da - i {
                    for l in 0..=db - j {
                        let y = rhs.get_ref(k, l);
                        if y.is_zero() {
                            continue;
                        }
                        let at = out.idx(i + k, j + l);
                        out.coeffs[at] = out.coeffs[at].clone() + x.clone() * y.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// `f(b, a)`: swaps the roles of the two variables.
    pub fn transpose(&self) -> Self {
        let (da, db) = self.orders;
        let src = self;
        Self::from_fn(
            (self.center.1.clone(), self.center.0.clone()),
            (db, da),
            |m, n| src.get(n, m),
        )
    }

    /// `f(−a, −b)` as a jet about `(−a₀, −b₀)`.
    pub fn negate_arguments(&self) -> Self {
        let src = self;
        Self::from_fn(
            (-self.center.0.clone(), -self.center.1.clone()),
            self.orders,
            |m, n| {
                let c = src.get(m, n);
                if (m + n) % 2 == 1 {
                    -c
                } else {
                    c
                }
            },
        )
    }

    /// Drops (or zero-pads) coefficients to the requested orders.
    pub fn truncate(&self, orders: (usize, usize)) -> Self {
        let src = self;
        Self::from_fn(self.center.clone(), orders, |m, n| src.get(m, n))
    }

    /// The jet of `exp(s·(λa·(a − a₀) + λb·(b − b₀)))`: the exponential
    /// series in the offsets, without the constant factor at the center.
    pub fn exp_offset_series(
        lambda_a: &T,
        lambda_b: &T,
        s: &T,
        center: (T, T),
        orders: (usize, usize),
    ) -> Result<Self> {
        if orders.0 > MAX_EXP_ORDER || orders.1 > MAX_EXP_ORDER {
            return Err(Error::Capacity(format!(
                "exponential jet orders {orders:?} exceed {MAX_EXP_ORDER}"
            )));
        }
        let ua = s.clone() * lambda_a.clone();
        let ub = s.clone() * lambda_b.clone();
        let pa = taylor_powers(&ua, orders.0);
        let pb = taylor_powers(&ub, orders.1);
        Ok(Self::from_fn(center, orders, |m, n| {
            pa[m].clone() * pb[n].clone()
        }))
    }
}

/// `[u^k / k!]_{k ≤ order}`
fn taylor_powers<T: Scalar>(u: &T, order: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(order + 1);
    out.push(T::one());
    for k in 1..=order {
        let next = (out[k - 1].clone() * u.clone()).div_i64(k as i64);
        out.push(next);
    }
    out
}

impl Jet2<f64> {
    /// The jet of `exp(s·(λa·a + λb·b))` about `center`.
    pub fn exp_linear(
        lambda_a: f64,
        lambda_b: f64,
        s: f64,
        center: (f64, f64),
        orders: (usize, usize),
    ) -> Result<Self> {
        let c0 = (s * (lambda_a * center.0 + lambda_b * center.1)).exp();
        Ok(Self::exp_offset_series(&lambda_a, &lambda_b, &s, center, orders)?.scale(&c0))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Largest relative coefficient difference, normalised by the larger
    /// of the two magnitudes (absolute below `floor`).
    pub fn max_rel_diff(&self, other: &Self, floor: f64) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(floor))
            .fold(0.0, f64::max)
    }
}

impl<T: Field> Jet2<T> {
    /// Truncated series division.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.check_shape(rhs)?;
        let d00 = rhs.get(0, 0);
        if d00.is_zero() {
            return Err(Error::Singularity(
                "jet division by a series with zero constant term".into(),
            ));
        }
        let (da, db) = self.orders;
        let mut out = Self::zero(self.center.clone(), self.orders);
        for m in 0..=da {
            for n in 0..=db {
                let mut acc = self.get(m, n);
                for i in 0..=m {
                    for j in 0..=n {
                        if i == 0 && j == 0 {
                            continue;
                        }
                        let d = rhs.get_ref(i, j);
                        if d.is_zero() {
                            continue;
                        }
                        acc = acc - d.clone() * out.get(m - i, n - j);
                    }
                }
                out.set(m, n, acc / d00.clone());
            }
        }
        Ok(out)
    }
}

/// `Q_a(−∂/∂a) Q_b(−∂/∂b) f` evaluated at the jet center.
pub fn apply_operator<T: Scalar>(qa: &Poly<T>, qb: &Poly<T>, f: &Jet2<T>) -> Result<T> {
    let need = (qa.degree().unwrap_or(0), qb.degree().unwrap_or(0));
    let (da, db) = f.orders();
    if da < need.0 || db < need.1 {
        return Err(Error::Shape(format!(
            "operator of degrees {need:?} needs jet orders at least that large, got {:?}",
            f.orders()
        )));
    }
    // (−1)^m m! folded into the operator coefficients.
    let weights = |p: &Poly<T>| -> Vec<T> {
        let mut fact = T::one();
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(m, c)| {
                if m > 0 {
                    fact = fact.clone() * T::from_i64(m as i64);
                }
                let w = c.clone() * fact.clone();
                if m % 2 == 1 {
                    -w
                } else {
                    w
                }
            })
            .collect()
    };
    let wa = weights(qa);
    let wb = weights(qb);
    let mut acc = T::zero();
    for (m, x) in wa.iter().enumerate() {
        for (n, y) in wb.iter().enumerate() {
            acc = acc + x.clone() * y.clone() * f.get(m, n);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Rational;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn origin() -> (Rational, Rational) {
        (q(0), q(0))
    }

    #[test]
    fn product_of_linear_jets() {
        let o = (1, 1);
        let one = Jet2::constant(q(1), origin(), o);
        let a = Jet2::var_a(origin(), o);
        let b = Jet2::var_b(origin(), o);
        let p = one.add(&a).unwrap().mul(&one.add(&b).unwrap()).unwrap();
        assert_eq!(p.coeffs(), &[q(1), q(1), q(1), q(1)]);
    }

    #[test]
    fn geometric_series() {
        let o = (3, 0);
        let one = Jet2::constant(q(1), origin(), o);
        let a = Jet2::var_a(origin(), o);
        let r = one.div(&one.sub(&a).unwrap()).unwrap();
        assert_eq!(r.coeffs(), &[q(1), q(1), q(1), q(1)]);
    }

    #[test]
    fn difference_of_squares() {
        let o = (2, 2);
        let a = Jet2::var_a(origin(), o);
        let b = Jet2::var_b(origin(), o);
        let p = a.add(&b).unwrap().mul(&a.sub(&b).unwrap()).unwrap();
        for m in 0..=2 {
            for n in 0..=2 {
                let expected = match (m, n) {
                    (2, 0) => q(1),
                    (0, 2) => q(-1),
                    _ => q(0),
                };
                assert_eq!(p.get(m, n), expected);
            }
        }
    }

    #[test]
    fn shape_and_singularity_errors() {
        let a = Jet2::var_a(origin(), (1, 1));
        let b = Jet2::var_a(origin(), (2, 1));
        assert!(matches!(a.add(&b), Err(Error::Shape(_))));
        let shifted = Jet2::var_a((q(1), q(0)), (1, 1));
        assert!(matches!(a.mul(&shifted), Err(Error::Shape(_))));
        assert!(matches!(a.div(&a), Err(Error::Singularity(_))));
    }

    #[test]
    fn exp_linear_examples() {
        let j = Jet2::exp_linear(1.0, 1.0, 1.0, (0.0, 0.0), (2, 2)).unwrap();
        let fact = [1.0, 1.0, 2.0];
        for m in 0..=2 {
            for n in 0..=2 {
                assert_relative_eq!(j.get(m, n), 1.0 / (fact[m] * fact[n]));
            }
        }
        let id = Jet2::exp_linear(1.0, 0.0, 0.0, (0.0, 0.0), (2, 2)).unwrap();
        assert_eq!(id.get(0, 0), 1.0);
        assert!(id.coeffs()[1..].iter().all(|&c| c == 0.0));
        let j = Jet2::exp_linear(-1.0, -1.0, 1.0, (-1.3, -1.3), (2, 2)).unwrap();
        assert_relative_eq!(j.get(0, 0), 2.6f64.exp(), max_relative = 1e-15);
        assert_relative_eq!(j.get(0, 0), 13.46374, max_relative = 1e-6);
        assert!(Jet2::exp_linear(1.0, 1.0, 1.0, (0.0, 0.0), (33, 0)).is_err());
    }

    #[test]
    fn operator_examples() {
        let one = Poly::constant(q(1));
        let q1 = Poly::new(vec![q(1), q(-1)]);
        let f = Jet2::from_fn(origin(), (2, 2), |m, n| q((m * 3 + n) as i64 + 1));
        assert_eq!(apply_operator(&one, &one, &f).unwrap(), q(1));
        // e^a at 0: coefficients 1/m!.
        let ea = Jet2::exp_offset_series(&q(1), &q(0), &q(1), origin(), (1, 0)).unwrap();
        assert_eq!(apply_operator(&q1, &one, &ea).unwrap(), q(2));
        let eab = Jet2::exp_offset_series(&q(1), &q(1), &q(1), origin(), (1, 1)).unwrap();
        assert_eq!(apply_operator(&q1, &q1, &eab).unwrap(), q(4));
        let low = Jet2::constant(q(1), origin(), (0, 1));
        assert!(matches!(apply_operator(&q1, &one, &low), Err(Error::Shape(_))));
    }

    fn arb_jet(order: usize) -> impl Strategy<Value = Jet2<Rational>> {
        prop::collection::vec(-9i64..9, (order + 1) * (order + 1)).prop_map(move |v| {
            Jet2::from_fn((q(0), q(0)), (order, order), |m, n| q(v[m * (order + 1) + n]))
        })
    }

    proptest! {
        #[test]
        fn rational_product_is_commutative_and_associative(
            x in arb_jet(3), y in arb_jet(3), z in arb_jet(3)
        ) {
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        }

        #[test]
        fn float_product_associative_within_tolerance(
            xs in prop::collection::vec(-2.0f64..2.0, 16),
            ys in prop::collection::vec(-2.0f64..2.0, 16),
            zs in prop::collection::vec(-2.0f64..2.0, 16),
        ) {
            let mk = |v: &Vec<f64>| Jet2::from_fn((0.0, 0.0), (3, 3), |m, n| v[m * 4 + n]);
            let (x, y, z) = (mk(&xs), mk(&ys), mk(&zs));
            let l = x.mul(&y).unwrap().mul(&z).unwrap();
            let r = x.mul(&y.mul(&z).unwrap()).unwrap();
            let scale = l.coeffs().iter().fold(1.0f64, |a, c| a.max(c.abs()));
            for (a, b) in l.coeffs().iter().zip(r.coeffs()) {
                prop_assert!((a - b).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn operator_is_linear(x in arb_jet(3), y in arb_jet(3), qs in prop::collection::vec(-5i64..5, 4)) {
            let qa = Poly::new(qs.iter().map(|&c| q(c)).collect());
            let qb = Poly::new(qs.iter().rev().map(|&c| q(c)).collect());
            let lhs = apply_operator(&qa, &qb, &x.add(&y).unwrap()).unwrap();
            let rhs = apply_operator(&qa, &qb, &x).unwrap() + apply_operator(&qa, &qb, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eigenrelation_for_exponentials(
            qs in prop::collection::vec(-3.0f64..3.0, 1..6), c in -2.0f64..2.0, a0 in -1.5f64..1.5,
        ) {
            let qa = Poly::new(qs.clone());
            let order = qs.len() - 1;
            let f = Jet2::exp_linear(c, 0.0, 1.0, (a0, 0.0), (order, 0)).unwrap();
            let lhs = apply_operator(&qa, &Poly::constant(1.0), &f).unwrap();
            let rhs = qa.eval(&-c) * (c * a0).exp();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        }

        #[test]
        fn eigenrelation_exact(qs in prop::collection::vec(-5i64..5, 1..6), cn in -4i64..4, cd in 1i64..4) {
            let qa = Poly::new(qs.iter().map(|&v| q(v)).collect());
            let order = qs.len() - 1;
            let c = Rational::from_ratio(cn, cd);
            let f = Jet2::exp_offset_series(&c, &q(0), &q(1), origin(), (order, 0)).unwrap();
            let lhs = apply_operator(&qa, &Poly::constant(q(1)), &f).unwrap();
            prop_assert_eq!(lhs, qa.eval(&-c));
        }

        #[test]
        fn truncation_consistency(x in arb_jet(4), y in arb_jet(4)) {
            let low = x.truncate((2, 2)).mul(&y.truncate((2, 2))).unwrap();
            prop_assert_eq!(x.mul(&y).unwrap().truncate((2, 2)), low);
            let mut y0 = y.clone();
            y0.set(0, 0, q(3));
            let qd = x.div(&y0).unwrap().truncate((2, 2));
            prop_assert_eq!(x.truncate((2, 2)).div(&y0.truncate((2, 2))).unwrap(), qd);
        }
    }
}
