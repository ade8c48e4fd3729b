//! Parametrized families of rational covers `t = p(α, X)/q(α, X)`.
//!
//! A family is kept in the factored shape in which its defining
//! polynomials are published: a product of polynomial factors with
//! integer exponents, each factor a sum of monomials `c · α^a · X^e`
//! with exact rational `c`. Specializing the parameter expands the
//! product into a reduced cover `(p, q)` ready for branch-locus and
//! profile analysis, so transcription stays close to the source and the
//! expansion work is done — and checked — in exact arithmetic.

use super::field::Rationals;
use super::poly::QPoly;
use crate::error::{Error, Result};

use num_rational::BigRational;
use num_traits::Zero;

/// Which side of the cover map a factor multiplies into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorRole {
    /// The factor divides `p`, the fiber polynomial at `t = 0`.
    Numerator,
    /// The factor divides `q`, the polar part governing `t = ∞`.
    Denominator,
}

/// One published factor: a polynomial in `α` and `X`, raised to a power.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyFactor {
    /// Side of the cover map.
    pub role: FactorRole,
    /// Exponent the factor is raised to.
    pub exponent: usize,
    /// Monomials `(coefficient, α-exponent, X-exponent)`.
    pub monomials: Vec<(BigRational, u32, u32)>,
}

impl FamilyFactor {
    /// The factor specialized at `α = alpha`, before raising to the power.
    pub fn base_poly(&self, alpha: &BigRational) -> QPoly {
        let ring = Rationals;
        let xdeg = self.monomials.iter().map(|&(_, _, e)| e).max().unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); xdeg as usize + 1];
        for (c, aexp, xexp) in &self.monomials {
            let mut term = c.clone();
            for _ in 0..*aexp {
                term *= alpha;
            }
            coeffs[*xexp as usize] += term;
        }
        QPoly::from_coeffs(&ring, coeffs)
    }
}

/// A family of covers with one rational parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverFamily {
    /// Identifier used in reports.
    pub name: String,
    /// Declared degree of the cover (X-degree of `p` after specialization).
    pub degree: usize,
    /// Parameter value recorded in the family file, used when the caller
    /// does not supply one.
    pub default_alpha: Option<BigRational>,
    /// Published factors of `p` and `q`.
    pub factors: Vec<FamilyFactor>,
}

impl CoverFamily {
    /// Expand the factored form at `α = alpha` into the reduced cover
    /// `(p, q)` and validate it: the declared degree must be met,
    /// `deg p > deg q`, and `gcd(p, q) = 1`.
    pub fn specialize(&self, alpha: &BigRational) -> Result<(QPoly, QPoly)> {
        let ring = Rationals;
        let mut p = QPoly::one(&ring);
        let mut q = QPoly::one(&ring);
        for factor in &self.factors {
            let base = factor.base_poly(alpha);
            if base.is_zero() {
                return Err(Error::InvalidPolynomial(format!(
                    "family {}: a factor vanishes identically at alpha = {alpha}",
                    self.name
                )));
            }
            let powered = base.pow(&ring, factor.exponent);
            match factor.role {
                FactorRole::Numerator => p = p.mul(&ring, &powered),
                FactorRole::Denominator => q = q.mul(&ring, &powered),
            }
        }
        if p.degree() != Some(self.degree) {
            return Err(Error::InvalidPolynomial(format!(
                "family {}: specialization at alpha = {alpha} has degree {:?}, declared {}",
                self.name,
                p.degree(),
                self.degree
            )));
        }
        if p.deg_i() <= q.deg_i() {
            return Err(Error::InvalidPolynomial(format!(
                "family {}: deg p = {} does not exceed deg q = {} at alpha = {alpha}",
                self.name,
                p.deg_i(),
                q.deg_i()
            )));
        }
        let g = p.gcd_fast(&q)?;
        if g.degree() != Some(0) {
            return Err(Error::InvalidPolynomial(format!(
                "family {}: p and q share a factor at alpha = {alpha}; \
                 the parameter value is degenerate",
                self.name
            )));
        }
        Ok((p, q))
    }

    /// True when no monomial involves the parameter, so every
    /// specialization yields the same cover.
    pub fn is_parameter_free(&self) -> bool {
        self.factors
            .iter()
            .all(|f| f.monomials.iter().all(|&(_, aexp, _)| aexp == 0))
    }

    /// Specialize at the recorded default parameter. A parameter-free
    /// family needs no recorded value; otherwise one must be present.
    pub fn specialize_default(&self) -> Result<(QPoly, QPoly)> {
        if let Some(alpha) = self.default_alpha.as_ref() {
            return self.specialize(alpha);
        }
        if self.is_parameter_free() {
            return self.specialize(&BigRational::zero());
        }
        Err(Error::Config(format!(
            "family {} records no default parameter; supply one explicitly",
            self.name
        )))
    }
}
