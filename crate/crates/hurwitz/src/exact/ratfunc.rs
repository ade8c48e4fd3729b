//! Rational functions over ℚ in reduced form, with exact composition and
//! the composition-verification predicate used to certify factorizations
//! of covers (e.g. that a map of even degree is a square, or that a cover
//! factors through a subcover).

use super::field::Rationals;
use super::poly::QPoly;
use crate::error::{Error, Result};
use num_rational::BigRational;

/// A rational function `numerator/denominator` over ℚ, kept in reduced
/// form: `gcd(numerator, denominator) = 1` and the denominator is monic.
/// Equality of values as functions is therefore equality of the stored
/// pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    numerator: QPoly,
    denominator: QPoly,
}

impl RationalFunction {
    /// Build `numerator/denominator`, reducing to lowest terms and scaling
    /// the denominator monic. Errors when the denominator is zero.
    pub fn new(numerator: QPoly, denominator: QPoly) -> Result<RationalFunction> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero("rational function with zero denominator".into()));
        }
        let ring = Rationals;
        if numerator.is_zero() {
            return Ok(RationalFunction { numerator: QPoly::zero(), denominator: QPoly::one(&ring) });
        }
        let g = numerator.gcd_fast(&denominator)?;
        let mut num = numerator.exact_quotient(&ring, &g)?;
        let mut den = denominator.exact_quotient(&ring, &g)?;
        let lead = den.leading(&ring);
        let inv = BigRational::from_integer(1.into()) / lead;
        num = num.scale(&ring, &inv);
        den = den.scale(&ring, &inv);
        Ok(RationalFunction { numerator: num, denominator: den })
    }

    /// The polynomial `p` as the rational function `p/1`.
    pub fn from_poly(p: QPoly) -> RationalFunction {
        RationalFunction { numerator: p, denominator: QPoly::one(&Rationals) }
    }

    /// Reduced numerator.
    pub fn numerator(&self) -> &QPoly {
        &self.numerator
    }

    /// Reduced (monic) denominator.
    pub fn denominator(&self) -> &QPoly {
        &self.denominator
    }

    /// Degree as a map ℙ¹ → ℙ¹: max of numerator and denominator degrees
    /// (zero for the zero function).
    pub fn degree(&self) -> usize {
        let dn = self.numerator.degree().unwrap_or(0);
        let dd = self.denominator.degree().unwrap_or(0);
        dn.max(dd)
    }

    /// True for constant functions (including zero).
    pub fn is_constant(&self) -> bool {
        self.numerator.degree().unwrap_or(0) == 0 && self.denominator.degree().unwrap_or(0) == 0
    }

    /// Value at a rational point; `None` at a pole.
    pub fn evaluate(&self, x: &BigRational) -> Option<BigRational> {
        let ring = Rationals;
        let den = self.denominator.evaluate(&ring, x);
        if den == BigRational::from_integer(0.into()) {
            return None;
        }
        Some(self.numerator.evaluate(&ring, x) / den)
    }

    /// Exact composition `self ∘ inner` (substitute `inner` for the
    /// variable of `self`). Errors when the composition is degenerate —
    /// `inner` is a constant at which the denominator of `self` vanishes.
    pub fn compose(&self, inner: &RationalFunction) -> Result<RationalFunction> {
        let ring = Rationals;
        let d = self.degree();
        let hn = &inner.numerator;
        let hd = &inner.denominator;
        // Homogenize: Σ aᵢ hnⁱ hd^(d−i) over both numerator and denominator;
        // the common power of hd cancels in the quotient.
        let mut num = QPoly::zero();
        let mut den = QPoly::zero();
        let mut hn_pow = QPoly::one(&ring); // hnⁱ
        let mut lower: Vec<QPoly> = Vec::with_capacity(d + 1); // hd^(d−i)
        let mut acc = QPoly::one(&ring);
        for _ in 0..=d {
            lower.push(acc.clone());
            acc = acc.mul(&ring, hd);
        }
        for i in 0..=d {
            let weight = &lower[d - i];
            let a = self.numerator.coeff(&ring, i);
            if a != BigRational::from_integer(0.into()) {
                let term = hn_pow.mul(&ring, weight).scale(&ring, &a);
                num = num.add(&ring, &term);
            }
            let b = self.denominator.coeff(&ring, i);
            if b != BigRational::from_integer(0.into()) {
                let term = hn_pow.mul(&ring, weight).scale(&ring, &b);
                den = den.add(&ring, &term);
            }
            if i < d {
                hn_pow = hn_pow.mul(&ring, hn);
            }
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero(
                "composition lands on a pole everywhere (inner function is a constant pole)".into(),
            ));
        }
        RationalFunction::new(num, den)
    }
}

/// Exact check that `f = g ∘ h` as rational functions. Degenerate
/// compositions (constant `h` sitting on a pole of `g`) are never equal to
/// a rational function, so they report `false`.
pub fn verify_composition(f: &RationalFunction, g: &RationalFunction, h: &RationalFunction) -> bool {
    match g.compose(h) {
        Ok(c) => c == *f,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(coeffs: &[i64]) -> QPoly {
        QPoly::from_i64_coeffs(coeffs)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn reduction_and_monic_denominator() {
        // (2X² − 2) / (4X − 4) = (X + 1) / 2.
        let f = RationalFunction::new(poly(&[-2, 0, 2]), poly(&[-4, 4])).unwrap();
        assert_eq!(f.denominator(), &poly(&[1]));
        assert_eq!(f.numerator().degree(), Some(1));
        assert_eq!(f.evaluate(&q(3)), Some(q(2)));
        assert!(RationalFunction::new(poly(&[1]), QPoly::zero()).is_err());
    }

    #[test]
    fn composition_of_squares() {
        let x2 = RationalFunction::from_poly(poly(&[0, 0, 1]));
        let x4 = RationalFunction::from_poly(poly(&[0, 0, 0, 0, 1]));
        let x4p1 = RationalFunction::from_poly(poly(&[1, 0, 0, 0, 1]));
        assert!(verify_composition(&x4, &x2, &x2));
        assert!(!verify_composition(&x4p1, &x2, &x2));
    }

    #[test]
    fn square_of_arbitrary_polynomial() {
        // F = f₀², g = x², h = f₀.
        let ring = Rationals;
        let f0 = poly(&[5, -2, 0, 1]); // X³ − 2X + 5
        let sq = RationalFunction::from_poly(f0.mul(&ring, &f0));
        let g = RationalFunction::from_poly(poly(&[0, 0, 1]));
        let h = RationalFunction::from_poly(f0);
        assert!(verify_composition(&sq, &g, &h));
    }

    #[test]
    fn composition_with_rational_inner() {
        // g = (X² + 1)/X, h = 1/X: g∘h = (1 + X²)/X = g (symmetric).
        let g = RationalFunction::new(poly(&[1, 0, 1]), poly(&[0, 1])).unwrap();
        let h = RationalFunction::new(poly(&[1]), poly(&[0, 1])).unwrap();
        let c = g.compose(&h).unwrap();
        assert_eq!(c, g);
        // Degrees multiply for non-degenerate compositions.
        let w = g.compose(&g).unwrap();
        assert_eq!(w.degree(), 4);
    }

    #[test]
    fn evaluate_pole() {
        let f = RationalFunction::new(poly(&[1]), poly(&[-1, 1])).unwrap();
        assert_eq!(f.evaluate(&q(1)), None);
        assert_eq!(f.evaluate(&q(2)), Some(q(1)));
    }

    #[test]
    fn degenerate_composition_rejected() {
        // g = 1/X, h = 0: composition is the constant pole.
        let g = RationalFunction::new(poly(&[1]), poly(&[0, 1])).unwrap();
        let h = RationalFunction::from_poly(QPoly::zero());
        assert!(g.compose(&h).is_err());
        assert!(!verify_composition(&g, &g, &h));
    }
}
