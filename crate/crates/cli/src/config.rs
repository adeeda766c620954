//! Run documents: TOML (or the JSON echo found in reports).

use serde::{Deserialize, Serialize};

use levkit_core::jet::{parse_decimal, rational_to_f64, Poly, Rational, Scalar};
use levkit_core::levinson::{ConstrainedParams, FreeMask};
use levkit_core::mainterm::config::three_quarters;
use levkit_core::mainterm::{Backend, MollifierConfig};
use levkit_core::moment::{EulerMaclaurin, MomentConfig};
use levkit_core::{Error, Result};

/// A numeric literal. Floats are read through their shortest decimal form,
/// so `-0.642` becomes exactly `-642/1000`; strings may hold fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Number::Int(i) => Ok(Rational::from_integer((*i).into())),
            Number::Float(f) if f.is_finite() => parse_decimal(&format!("{f}")),
            Number::Float(f) => Err(Error::validation("finite number", f)),
            Number::Text(s) => parse_decimal(s),
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Number::Float(x)
    }
}

fn rationals(list: &[Number]) -> Result<Vec<Rational>> {
    list.iter().map(Number::to_rational).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeGroup {
    Q,
    P1,
    P2,
    P,
    R,
}

fn default_theta() -> Number {
    Number::Text("4/7".into())
}

fn default_free() -> Vec<FreeGroup> {
    vec![FreeGroup::Q, FreeGroup::P1, FreeGroup::P2, FreeGroup::P]
}

/// Each polynomial is given either through its constrained basis
/// (`q_basis`, `p1_basis`, `p2_monomials`, `p_monomials`) or as a plain
/// coefficient list, constant term first (`Q`, `P1`, `P2`, `P`). Plain lists
/// are checked against the constraints instead of satisfying them by
/// construction, and cannot be optimized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MollifierSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_basis: Option<Vec<Number>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1_basis: Option<Vec<Number>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2_monomials: Option<Vec<Number>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_monomials: Option<Vec<Number>>,
    #[serde(default, rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Number>>,
    #[serde(default, rename = "P1", skip_serializing_if = "Option::is_none")]
    pub p1: Option<Vec<Number>>,
    #[serde(default, rename = "P2", skip_serializing_if = "Option::is_none")]
    pub p2: Option<Vec<Number>>,
    #[serde(default, rename = "P", skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Number>>,
    #[serde(rename = "R")]
    pub r: Number,
    #[serde(default = "default_theta")]
    pub theta: Number,
    #[serde(default)]
    pub simple_zeros_mode: bool,
    #[serde(default)]
    pub paper_literal_signs: bool,
    /// Coefficient groups the optimizer may change.
    #[serde(default = "default_free")]
    pub free: Vec<FreeGroup>,
}

enum Form {
    Basis(Vec<Rational>),
    Plain(Vec<Rational>),
}

impl Form {
    fn basis(self) -> Option<Vec<Rational>> {
        match self {
            Form::Basis(b) => Some(b),
            Form::Plain(_) => None,
        }
    }

    /// The plain polynomial, or `from_basis` applied to the basis coefficients.
    fn poly(self, from_basis: impl FnOnce(Vec<Rational>) -> Poly<Rational>) -> Poly<Rational> {
        match self {
            Form::Basis(b) => from_basis(b),
            Form::Plain(c) => Poly::new(c),
        }
    }
}

fn one_of(basis: &Option<Vec<Number>>, plain: &Option<Vec<Number>>, names: (&str, &str)) -> Result<Form> {
    match (basis, plain) {
        (Some(b), None) => Ok(Form::Basis(rationals(b)?)),
        (None, Some(p)) => Ok(Form::Plain(rationals(p)?)),
        (Some(_), Some(_)) => Err(Error::validation(
            format!("only one of {} and {} given", names.0, names.1),
            "both",
        )),
        (None, None) => Err(Error::validation(
            format!("one of {} and {} given", names.0, names.1),
            "neither",
        )),
    }
}

impl MollifierSection {
    fn forms(&self) -> Result<[Form; 4]> {
        Ok([
            one_of(&self.q_basis, &self.q, ("q_basis", "Q"))?,
            one_of(&self.p1_basis, &self.p1, ("p1_basis", "P1"))?,
            one_of(&self.p2_monomials, &self.p2, ("p2_monomials", "P2"))?,
            one_of(&self.p_monomials, &self.p, ("p_monomials", "P"))?,
        ])
    }

    /// The constrained parameters; every polynomial must be in basis form.
    pub fn params(&self) -> Result<ConstrainedParams> {
        let [q, p1, p2, p] = self.forms()?.map(Form::basis);
        let (Some(q_basis), Some(p1_basis), Some(p2_monomials), Some(p_monomials)) = (q, p1, p2, p) else {
            return Err(Error::validation(
                "basis form for every polynomial (needed to optimize)",
                "plain coefficient list",
            ));
        };
        let has = |g| self.free.contains(&g);
        Ok(ConstrainedParams {
            q_basis,
            p1_basis,
            p2_monomials,
            p_monomials,
            r: self.r.to_rational()?,
            theta: self.theta.to_rational()?,
            simple_zeros_mode: self.simple_zeros_mode,
            paper_literal_signs: self.paper_literal_signs,
            free: FreeMask {
                q: has(FreeGroup::Q),
                p1: has(FreeGroup::P1),
                p2: has(FreeGroup::P2),
                p: has(FreeGroup::P),
                r: has(FreeGroup::R),
            },
        })
    }

    pub fn decode(&self) -> Result<MollifierConfig> {
        let [q, p1, p2, p] = self.forms()?;
        let monomials = |m: Vec<Rational>| {
            let mut c = vec![Rational::from_i64(0)];
            c.extend(m);
            Poly::new(c)
        };
        let basis = |q_basis, p1_basis| ConstrainedParams {
            q_basis,
            p1_basis,
            ..ConstrainedParams::kappa_published()
        };
        let cfg = MollifierConfig {
            q: q.poly(|b| basis(b, Vec::new()).q_poly()),
            p1: p1.poly(|b| basis(Vec::new(), b).p1_poly()),
            p2: p2.poly(monomials),
            p: p.poly(monomials),
            r: self.r.to_rational()?,
            theta: self.theta.to_rational()?,
            prime_cutoff_exponent: three_quarters(),
            simple_zeros_mode: self.simple_zeros_mode,
            paper_literal_signs: self.paper_literal_signs,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// The section describing `params`, keeping this section's flags.
    pub fn with_params(&self, params: &ConstrainedParams) -> Self {
        let nums = |v: &[Rational]| Some(v.iter().map(|r| Number::from_f64(rational_to_f64(r))).collect());
        Self {
            q_basis: nums(&params.q_basis),
            p1_basis: nums(&params.p1_basis),
            p2_monomials: nums(&params.p2_monomials),
            p_monomials: nums(&params.p_monomials),
            r: Number::from_f64(rational_to_f64(&params.r)),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MollifierSource {
    /// The `[mollifier]` section.
    Config,
    /// `B ≡ 1`.
    One,
}

fn default_step() -> f64 {
    0.05
}

fn default_source() -> MollifierSource {
    MollifierSource::Config
}

fn default_em_multiplier() -> f64 {
    EulerMaclaurin::default().multiplier
}

fn default_em_min_terms() -> usize {
    EulerMaclaurin::default().min_terms
}

fn default_bernoulli_terms() -> usize {
    EulerMaclaurin::default().bernoulli_terms
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentSection {
    pub q: u64,
    #[serde(default)]
    pub character_index: usize,
    #[serde(rename = "T")]
    pub t: f64,
    pub theta: f64,
    #[serde(default = "default_step")]
    pub step: f64,
    #[serde(default = "default_source")]
    pub mollifier: MollifierSource,
    #[serde(default = "default_em_multiplier")]
    pub em_multiplier: f64,
    #[serde(default = "default_em_min_terms")]
    pub em_min_terms: usize,
    #[serde(default = "default_bernoulli_terms")]
    pub bernoulli_terms: usize,
    /// Extra values of `T` for the trend comparison.
    #[serde(default, rename = "trend_T")]
    pub trend_t: Vec<f64>,
}

fn default_seed() -> u64 {
    1
}

fn default_budget() -> usize {
    2000
}

fn default_backend() -> Backend {
    Backend::Exact
}

fn default_oracle_q() -> u64 {
    3
}

fn zero() -> Number {
    Number::Int(0)
}

fn default_oracle_y() -> Vec<u64> {
    vec![1_000, 10_000, 100_000, 1_000_000]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default = "default_backend")]
    pub backend: Backend,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Jet order override (both variables).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default = "default_oracle_q")]
    pub oracle_q: u64,
    #[serde(default = "default_oracle_y")]
    pub oracle_y: Vec<u64>,
    /// Shift center of the oracle comparison.
    #[serde(default = "zero")]
    pub oracle_a: Number,
    #[serde(default = "zero")]
    pub oracle_b: Number,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            backend: default_backend(),
            seed: default_seed(),
            budget: default_budget(),
            order: None,
            oracle_q: default_oracle_q(),
            oracle_y: default_oracle_y(),
            oracle_a: zero(),
            oracle_b: zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mollifier: Option<MollifierSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moment: Option<MomentSection>,
    #[serde(default)]
    pub run: RunSection,
}

/// Parses a TOML document, or the JSON `config` echo of a report.
pub fn parse_config(text: &str) -> Result<Document> {
    let parse_err = |e: String| Error::validation("well-formed config document", e);
    let doc: Document = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?
    } else {
        toml::from_str(text).map_err(|e| parse_err(e.to_string()))?
    };
    doc.validate()?;
    Ok(doc)
}

impl Document {
    pub fn validate(&self) -> Result<()> {
        if let Some(m) = &self.mollifier {
            m.decode()?;
        }
        if self.moment.is_some() {
            self.moment_config()?.validate()?;
        }
        Ok(())
    }

    pub fn mollifier(&self) -> Result<&MollifierSection> {
        self.mollifier
            .as_ref()
            .ok_or_else(|| Error::validation("[mollifier] section present", "missing"))
    }

    pub fn moment_config(&self) -> Result<MomentConfig> {
        let m = self
            .moment
            .as_ref()
            .ok_or_else(|| Error::validation("[moment] section present", "missing"))?;
        let mollifier = match m.mollifier {
            MollifierSource::One => None,
            MollifierSource::Config => Some(self.mollifier()?.decode()?),
        };
        Ok(MomentConfig {
            q: m.q,
            character_index: m.character_index,
            t: m.t,
            theta: m.theta,
            mollifier,
            step: m.step,
            euler_maclaurin: EulerMaclaurin {
                multiplier: m.em_multiplier,
                min_terms: m.em_min_terms,
                bernoulli_terms: m.bernoulli_terms,
            },
        })
    }
}
