use crate::jet::{rational_to_f64, Poly, Rational, Scalar};
use crate::{Error, Result};

/// Mollifier and Levinson parameters.
///
/// Polynomials are held exactly so that both backends start from identical
/// inputs; [`MollifierConfig::float_view`] gives the `f64` copy used by the
/// quadrature backend.
#[derive(Debug, Clone, PartialEq)]
pub struct MollifierConfig {
    pub p1: Poly<Rational>,
    pub p2: Poly<Rational>,
    pub p: Poly<Rational>,
    pub q: Poly<Rational>,
    pub r: Rational,
    pub theta: Rational,
    /// Exponent of the prime cutoff `y^{3/4}`; only `3/4` is supported.
    pub prime_cutoff_exponent: Rational,
    pub simple_zeros_mode: bool,
    /// Use the sign printed for the `W₂·W₂` component instead of `+`.
    pub paper_literal_signs: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloatConfig {
    pub p1: Poly<f64>,
    pub p2: Poly<f64>,
    pub p: Poly<f64>,
    pub q: Poly<f64>,
    pub r: f64,
    pub theta: f64,
    pub sigma22_sign: f64,
}

pub fn three_quarters() -> Rational {
    Rational::from_ratio(3, 4)
}

impl MollifierConfig {
    pub fn validate(&self) -> Result<()> {
        let zero = Rational::from_i64(0);
        let one = Rational::from_i64(1);
        let check = |ok: bool, what: &str, v: &Rational| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::validation(what, rational_to_f64(v)))
            }
        };
        let v = self.p1.eval(&zero);
        check(v == zero, "P1(0) = 0", &v)?;
        let v = self.p1.eval(&one);
        check(v == one, "P1(1) = 1", &v)?;
        let v = self.p2.eval(&zero);
        check(v == zero, "P2(0) = 0", &v)?;
        let v = self.p.eval(&zero);
        check(v == zero, "P(0) = 0", &v)?;
        let v = self.q.eval(&zero);
        check(v == one, "Q(0) = 1", &v)?;
        let dq = self.q.derivative();
        let reflected = dq.compose_affine(&-one.clone(), &one);
        if reflected != dq {
            let diff = &reflected - &dq;
            let worst = diff
                .coeffs()
                .iter()
                .map(rational_to_f64)
                .fold(0.0f64, |a, c| a.max(c.abs()));
            return Err(Error::validation("Q'(x) = Q'(1 - x)", worst));
        }
        if self.simple_zeros_mode && self.q.degree() != Some(1) {
            return Err(Error::validation(
                "simple_zeros_mode requires deg Q = 1",
                self.q.degree().unwrap_or(0),
            ));
        }
        check(self.r > zero, "R > 0", &self.r)?;
        check(
            self.theta > zero && self.theta < one,
            "0 < theta < 1",
            &self.theta,
        )?;
        check(
            self.prime_cutoff_exponent == three_quarters(),
            "prime cutoff exponent = 3/4",
            &self.prime_cutoff_exponent,
        )?;
        Ok(())
    }

    pub fn q_degree(&self) -> usize {
        self.q.degree().unwrap_or(0)
    }

    pub fn float_view(&self) -> FloatConfig {
        let f = |p: &Poly<Rational>| p.map(rational_to_f64);
        FloatConfig {
            p1: f(&self.p1),
            p2: f(&self.p2),
            p: f(&self.p),
            q: f(&self.q),
            r: rational_to_f64(&self.r),
            theta: rational_to_f64(&self.theta),
            sigma22_sign: self.sigma22_sign() as f64,
        }
    }

    pub fn sigma22_sign(&self) -> i64 {
        if self.paper_literal_signs {
            -1
        } else {
            1
        }
    }

    /// `P(u)/u`, by coefficient shift.
    pub fn p_over_u(&self) -> Poly<Rational> {
        self.p.divide_by_x().expect("validated: P(0) = 0")
    }
}
