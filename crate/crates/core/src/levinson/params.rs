use crate::jet::{parse_decimal, rational_from_f64, rational_to_f64, Poly, Rational, Scalar};
use crate::mainterm::config::{three_quarters, MollifierConfig};
use crate::Result;

/// Which coefficient groups the optimizer may move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeMask {
    pub q: bool,
    pub p1: bool,
    pub p2: bool,
    pub p: bool,
    pub r: bool,
}

impl Default for FreeMask {
    fn default() -> Self {
        Self {
            q: true,
            p1: true,
            p2: true,
            p: true,
            r: false,
        }
    }
}

/// Mollifier parameters in a basis that builds the side conditions in.
///
/// * `Q(x) = 1 + Σ_k g_k ∫_0^x (u(1−u))^k du`, `k = 0, 1, …`
/// * `P₁(x) = x + Σ_k d_k x^k (1 − x)`, `k = 1, 2, …`
/// * `P₂(x) = Σ_i c_i x^{i+1}` and likewise `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedParams {
    pub q_basis: Vec<Rational>,
    pub p1_basis: Vec<Rational>,
    pub p2_monomials: Vec<Rational>,
    pub p_monomials: Vec<Rational>,
    pub r: Rational,
    pub theta: Rational,
    pub simple_zeros_mode: bool,
    pub paper_literal_signs: bool,
    pub free: FreeMask,
}

fn decimals(list: &[&str]) -> Vec<Rational> {
    list.iter()
        .map(|s| parse_decimal(s).expect("literal decimal"))
        .collect()
}

/// `∫_0^x (u − u²)^k du`
pub fn q_basis_poly(k: usize) -> Poly<Rational> {
    let base = Poly::new(vec![Rational::from_i64(0), Rational::from_i64(1), Rational::from_i64(-1)]);
    let mut pow = Poly::constant(Rational::from_i64(1));
    for _ in 0..k {
        pow = &pow * &base;
    }
    pow.antiderivative(Rational::from_i64(0))
}

fn shifted_monomials(coeffs: &[Rational]) -> Poly<Rational> {
    let mut c = vec![Rational::from_i64(0)];
    c.extend(coeffs.iter().cloned());
    Poly::new(c)
}

impl ConstrainedParams {
    /// The parameters quoted for the bound on the proportion of critical zeros.
    pub fn kappa_published() -> Self {
        Self {
            q_basis: decimals(&["-.642", "-1.227", "-5.178"]),
            p1_basis: decimals(&["-.617", "-.125", "-.148"]),
            p2_monomials: decimals(&["1"]),
            p_monomials: decimals(&["1.155", "-1.564", ".177"]),
            r: parse_decimal("1.3").unwrap(),
            theta: Rational::from_ratio(4, 7),
            simple_zeros_mode: false,
            paper_literal_signs: false,
            free: FreeMask::default(),
        }
    }

    /// The parameters quoted for the bound on the proportion of simple zeros.
    pub fn kappa_star_published() -> Self {
        Self {
            q_basis: decimals(&["-1.032"]),
            p1_basis: decimals(&["-.525", "-.183", "-.085"]),
            p2_monomials: decimals(&["1"]),
            p_monomials: decimals(&[".838", "-.938", "-.084"]),
            r: parse_decimal("1.116").unwrap(),
            theta: Rational::from_ratio(4, 7),
            simple_zeros_mode: true,
            paper_literal_signs: false,
            free: FreeMask::default(),
        }
    }

    pub fn q_poly(&self) -> Poly<Rational> {
        self.q_basis
            .iter()
            .enumerate()
            .fold(Poly::constant(Rational::from_i64(1)), |acc, (k, g)| {
                &acc + &q_basis_poly(k).scale(g)
            })
    }

    pub fn p1_poly(&self) -> Poly<Rational> {
        let one = Rational::from_i64(1);
        self.p1_basis
            .iter()
            .enumerate()
            .fold(Poly::x(), |acc, (i, d)| {
                let k = i + 1;
                let term = &Poly::monomial(one.clone(), k) - &Poly::monomial(one.clone(), k + 1);
                &acc + &term.scale(d)
            })
    }

    pub fn decode(&self) -> Result<MollifierConfig> {
        let cfg = MollifierConfig {
            p1: self.p1_poly(),
            p2: shifted_monomials(&self.p2_monomials),
            p: shifted_monomials(&self.p_monomials),
            q: self.q_poly(),
            r: self.r.clone(),
            theta: self.theta.clone(),
            prime_cutoff_exponent: three_quarters(),
            simple_zeros_mode: self.simple_zeros_mode,
            paper_literal_signs: self.paper_literal_signs,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn groups(&self) -> [(bool, &Vec<Rational>); 4] {
        [
            (self.free.q, &self.q_basis),
            (self.free.p1, &self.p1_basis),
            (self.free.p2, &self.p2_monomials),
            (self.free.p, &self.p_monomials),
        ]
    }

    pub fn free_count(&self) -> usize {
        self.groups()
            .iter()
            .filter(|(free, _)| *free)
            .map(|(_, v)| v.len())
            .sum::<usize>()
            + usize::from(self.free.r)
    }

    /// The free coefficients, in the order Q, P₁, P₂, P, R.
    pub fn encode(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .groups()
            .iter()
            .filter(|(free, _)| *free)
            .flat_map(|(_, v)| v.iter().map(rational_to_f64))
            .collect();
        if self.free.r {
            out.push(rational_to_f64(&self.r));
        }
        out
    }

    /// Replaces the free coefficients; inverse of [`Self::encode`].
    pub fn with_free(&self, values: &[f64]) -> Result<Self> {
        if values.len() != self.free_count() {
            return Err(crate::Error::Shape(format!(
                "{} free coefficients expected, got {}",
                self.free_count(),
                values.len()
            )));
        }
        let mut out = self.clone();
        let mut it = values.iter();
        let mut fill = |free: bool, v: &mut Vec<Rational>| -> Result<()> {
            if free {
                for c in v.iter_mut() {
                    *c = replace(c, *it.next().expect("length checked"))?;
                }
            }
            Ok(())
        };
        fill(self.free.q, &mut out.q_basis)?;
        fill(self.free.p1, &mut out.p1_basis)?;
        fill(self.free.p2, &mut out.p2_monomials)?;
        fill(self.free.p, &mut out.p_monomials)?;
        if self.free.r {
            out.r = replace(&out.r, *it.next().expect("length checked"))?;
        }
        Ok(out)
    }
}

/// Keeps the exact value when the float is its nearest double, so decimal
/// inputs survive an encode/decode round trip.
fn replace(old: &Rational, new: f64) -> Result<Rational> {
    if rational_to_f64(old) == new {
        Ok(old.clone())
    } else {
        rational_from_f64(new)
    }
}
