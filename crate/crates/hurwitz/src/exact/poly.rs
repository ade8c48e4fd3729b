//! Dense univariate polynomials over an exact coefficient ring, stored
//! constant-term first with no trailing zeros.

use super::field::{Coefficients, Integers, PrimeField, Rationals};
use crate::error::{Error, Result};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A dense polynomial; `coeffs[i]` is the coefficient of `X^i`.
/// The zero polynomial has an empty coefficient vector.
pub struct Poly<F: Coefficients> {
    /// Coefficients, constant term first, highest entry nonzero.
    pub coeffs: Vec<F::Elem>,
}

impl<F: Coefficients> Clone for Poly<F> {
    fn clone(&self) -> Self {
        Poly { coeffs: self.coeffs.clone() }
    }
}

impl<F: Coefficients> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Coefficients> std::fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poly").field("coeffs", &self.coeffs).finish()
    }
}

/// Polynomials over the rationals, the workhorse instantiation.
pub type QPoly = Poly<Rationals>;
/// Polynomials over a prime field.
pub type FpPoly = Poly<PrimeField>;
/// Polynomials with integer coefficients.
pub type ZPoly = Poly<Integers>;

impl<F: Coefficients> Poly<F> {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// A constant polynomial.
    pub fn constant(ring: &F, c: F::Elem) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.normalize(ring);
        p
    }

    /// The constant polynomial 1.
    pub fn one(ring: &F) -> Self {
        Poly { coeffs: vec![ring.one()] }
    }

    /// The monomial `X`.
    pub fn x(ring: &F) -> Self {
        Poly { coeffs: vec![ring.zero(), ring.one()] }
    }

    /// Build from coefficients (constant term first), dropping
    /// trailing zeros.
    pub fn from_coeffs(ring: &F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize(ring);
        p
    }

    fn normalize(&mut self, ring: &F) {
        while let Some(last) = self.coeffs.last() {
            if ring.is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree as an integer with the zero polynomial at `-1`, convenient
    /// for arithmetic on degrees.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn leading(&self, ring: &F) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| ring.zero())
    }

    /// Coefficient of `X^i`, 0 beyond the degree.
    pub fn coeff(&self, ring: &F, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    /// Sum.
    pub fn add(&self, ring: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ring.add(&self.coeff(ring, i), &other.coeff(ring, i)));
        }
        Poly::from_coeffs(ring, out)
    }

    /// Difference.
    pub fn sub(&self, ring: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ring.sub(&self.coeff(ring, i), &other.coeff(ring, i)));
        }
        Poly::from_coeffs(ring, out)
    }

    /// Negation.
    pub fn neg(&self, ring: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect() }
    }

    /// Product (schoolbook; degrees here never warrant more).
    pub fn mul(&self, ring: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
            }
        }
        Poly::from_coeffs(ring, out)
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, ring: &F, c: &F::Elem) -> Self {
        if ring.is_zero(c) {
            return Poly::zero();
        }
        Poly::from_coeffs(ring, self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    /// Power by repeated squaring.
    pub fn pow(&self, ring: &F, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            base = base.mul(ring, &base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; requires the divisor's leading coefficient
    /// to be invertible (always true over a field).
    pub fn divmod(&self, ring: &F, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero("polynomial division".into()));
        }
        let dlead = divisor.leading(ring);
        let dinv = ring
            .inv(&dlead)
            .ok_or_else(|| Error::InvalidPolynomial("division by non-invertible leading coefficient".into()))?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut quo = vec![ring.zero(); qlen];
        for k in (0..qlen).rev() {
            let c = ring.mul(&rem[k + dd], &dinv);
            if ring.is_zero(&c) {
                continue;
            }
            quo[k] = c.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = ring.sub(&rem[k + j], &ring.mul(&c, d));
            }
        }
        Ok((Poly::from_coeffs(ring, quo), Poly::from_coeffs(ring, rem)))
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn exact_quotient(&self, ring: &F, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divmod(ring, divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidPolynomial("polynomial division left a remainder".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (Euclid over a field).
    pub fn gcd(&self, ring: &F, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(ring, &b)?;
            a = b;
            b = r;
        }
        Ok(a.monic(ring))
    }

    /// The polynomial scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self, ring: &F) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = ring.inv(&self.leading(ring)).expect("field leading coefficient");
        self.scale(ring, &inv)
    }

    /// Formal derivative.
    pub fn derivative(&self, ring: &F) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(ring.mul(c, &ring.from_i64(i as i64)));
        }
        Poly::from_coeffs(ring, out)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, ring: &F, x: &F::Elem) -> F::Elem {
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, x), c);
        }
        acc
    }

    /// Substitute `X ↦ X + c`.
    pub fn shift(&self, ring: &F, c: &F::Elem) -> Self {
        // Horner on the polynomial ring: f(X+c) built from the top down
        let x_plus_c = Poly::from_coeffs(ring, vec![c.clone(), ring.one()]);
        let mut acc = Poly::zero();
        for co in self.coeffs.iter().rev() {
            acc = acc.mul(ring, &x_plus_c);
            acc = acc.add(ring, &Poly::constant(ring, co.clone()));
        }
        acc
    }

    /// Squarefree part `f / gcd(f, f')` (monic), valid in characteristic 0
    /// or when no irreducible factor has multiplicity ≥ char.
    pub fn squarefree_part(&self, ring: &F) -> Result<Self> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let g = self.gcd(ring, &self.derivative(ring))?;
        self.monic(ring).exact_quotient(ring, &g)
    }

    /// Multiplicity multiset of the roots (over the splitting field):
    /// Yun-style decomposition returning `(multiplicity, squarefree factor)`
    /// pairs with nonzero-degree factors, by iterated gcd.
    pub fn multiplicity_decomposition(&self, ring: &F) -> Result<Vec<(usize, Self)>> {
        if self.is_zero() {
            return Err(Error::InvalidPolynomial("multiplicity structure of the zero polynomial".into()));
        }
        let mut out = Vec::new();
        let f = self.monic(ring);
        if f.degree() == Some(0) {
            return Ok(out);
        }
        // a_i = gcd chain; classic Yun over characteristic 0 / large char
        let fp = f.derivative(ring);
        let a = f.gcd(ring, &fp)?;
        let mut b = f.exact_quotient(ring, &a)?;
        let mut c = fp.exact_quotient(ring, &a)?;
        let mut i = 1usize;
        loop {
            let d = c.sub(ring, &b.derivative(ring));
            let fac = b.gcd(ring, &d)?;
            if fac.degree().map(|d| d > 0).unwrap_or(false) {
                out.push((i, fac.clone()));
            }
            b = b.exact_quotient(ring, &fac)?;
            if b.degree() == Some(0) {
                break;
            }
            c = d.exact_quotient(ring, &fac)?;
            i += 1;
        }
        Ok(out)
    }
}

impl QPoly {
    /// Build from machine-integer coefficients, constant term first.
    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        let ring = Rationals;
        Poly::from_coeffs(&ring, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    /// Clear denominators and divide by integer content: the primitive
    /// integer form with positive leading coefficient, plus the positive
    /// rational `c` with `self = c · primitive`.
    pub fn primitive_integer(&self) -> (QPoly, BigRational) {
        if self.is_zero() {
            return (QPoly::zero(), BigRational::one());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = lcm_big(&den, c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = gcd_big(&content, c);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        if ints.last().map(|c| c.sign() == Sign::Minus).unwrap_or(false) {
            content = -content;
        }
        let prim = Poly {
            coeffs: ints
                .iter()
                .map(|c| BigRational::from_integer(c / &content))
                .collect(),
        };
        (prim, BigRational::new(content, den))
    }

    /// The primitive integer form as a [`ZPoly`] (content discarded).
    pub fn to_primitive_z(&self) -> ZPoly {
        let (prim, _) = self.primitive_integer();
        Poly { coeffs: prim.coeffs.iter().map(|c| c.numer().clone()).collect() }
    }

    /// Monic gcd over ℚ, computed through the subresultant remainder
    /// sequence on primitive integer forms. Same answer as [`Poly::gcd`]
    /// but dramatically faster on large inputs, because the chain runs in
    /// integer arithmetic with controlled coefficient growth instead of
    /// normalizing rationals at every step.
    pub fn gcd_fast(&self, other: &QPoly) -> Result<QPoly> {
        let ring = Rationals;
        if self.is_zero() {
            return Ok(other.monic(&ring));
        }
        if other.is_zero() {
            return Ok(self.monic(&ring));
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Ok(QPoly::one(&ring));
        }
        let g = z_gcd_primitive(&self.to_primitive_z(), &other.to_primitive_z())?;
        let q = Poly {
            coeffs: g.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        };
        Ok(q.monic(&ring))
    }

    /// Squarefree part `f / gcd(f, f')` (monic) through [`QPoly::gcd_fast`].
    pub fn squarefree_part_fast(&self) -> Result<QPoly> {
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        let ring = Rationals;
        let g = self.gcd_fast(&self.derivative(&ring))?;
        self.monic(&ring).exact_quotient(&ring, &g)
    }

    /// [`Poly::multiplicity_decomposition`] with the integer-chain gcd;
    /// identical output, much faster on polynomials with large
    /// coefficients.
    pub fn multiplicity_decomposition_fast(&self) -> Result<Vec<(usize, QPoly)>> {
        if self.is_zero() {
            return Err(Error::InvalidPolynomial("multiplicity structure of the zero polynomial".into()));
        }
        let ring = Rationals;
        let mut out = Vec::new();
        let f = self.monic(&ring);
        if f.degree() == Some(0) {
            return Ok(out);
        }
        let fp = f.derivative(&ring);
        let a = f.gcd_fast(&fp)?;
        let mut b = f.exact_quotient(&ring, &a)?;
        let mut c = fp.exact_quotient(&ring, &a)?;
        let mut i = 1usize;
        loop {
            let d = c.sub(&ring, &b.derivative(&ring));
            let fac = b.gcd_fast(&d)?;
            if fac.degree().map(|d| d > 0).unwrap_or(false) {
                out.push((i, fac.clone()));
            }
            b = b.exact_quotient(&ring, &fac)?;
            if b.degree() == Some(0) {
                break;
            }
            c = d.exact_quotient(&ring, &fac)?;
            i += 1;
        }
        Ok(out)
    }

    /// Reduce the coefficients modulo `p`; errors when a denominator or the
    /// leading coefficient vanishes mod `p` (the image would drop degree).
    pub fn reduce_mod(&self, fp: &PrimeField) -> Result<FpPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| fp.reduce_rational(c))
            .collect::<Result<Vec<u64>>>()?;
        if let Some(last) = coeffs.last() {
            if *last == 0 {
                return Err(Error::InvalidPolynomial(format!(
                    "leading coefficient vanishes modulo {}",
                    fp.modulus()
                )));
            }
        }
        Ok(Poly::from_coeffs(fp, coeffs))
    }
}

/// Gcd of primitive integer polynomials, up to sign, via the subresultant
/// remainder sequence (all arithmetic in ℤ, coefficient growth controlled
/// by the g/h division scheme). Both inputs must be nonzero.
fn z_gcd_primitive(a: &ZPoly, b: &ZPoly) -> Result<ZPoly> {
    let ring = Integers;
    let (mut a, mut b) = if a.deg_i() < b.deg_i() { (b.clone(), a.clone()) } else { (a.clone(), b.clone()) };
    if b.degree() == Some(0) {
        return Ok(ZPoly::one(&ring));
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg_i() - b.deg_i();
        let r = pseudo_rem_z(&a, &b);
        if r.is_zero() {
            return Ok(b.primitive_part());
        }
        if r.degree() == Some(0) {
            return Ok(ZPoly::one(&ring));
        }
        a = b;
        let mut div = g.clone();
        for _ in 0..delta {
            div = &div * &h;
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| ring.exact_div(c, &div))
            .collect::<Result<Vec<_>>>()?;
        b = Poly::from_coeffs(&ring, coeffs);
        g = a.leading(&ring);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => {
                let mut num = BigInt::one();
                for _ in 0..delta {
                    num = &num * &g;
                }
                let mut den = BigInt::one();
                for _ in 0..delta - 1 {
                    den = &den * &h;
                }
                ring.exact_div(&num, &den)?
            }
        };
    }
}

/// `lc(b)^(δ+1)·a mod b` over ℤ, δ = deg a − deg b ≥ 0.
pub(crate) fn pseudo_rem_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let ring = Integers;
    let db = b.degree().expect("pseudo_rem divisor nonzero");
    let lead = b.leading(&ring);
    let mut r = a.clone();
    let mut scale_left = a.deg_i() - b.deg_i() + 1;
    while !r.is_zero() && r.deg_i() >= db as i64 {
        let dr = r.degree().unwrap();
        let rl = r.leading(&ring);
        let mut next = vec![BigInt::zero(); dr];
        for (i, c) in r.coeffs.iter().enumerate().take(dr) {
            next[i] = c * &lead;
        }
        for (j, c) in b.coeffs.iter().enumerate().take(db) {
            let idx = j + dr - db;
            next[idx] -= c * &rl;
        }
        r = Poly::from_coeffs(&ring, next);
        scale_left -= 1;
    }
    for _ in 0..scale_left {
        r = r.scale(&ring, &lead);
    }
    r
}

impl ZPoly {
    /// Divide out the integer content and make the leading coefficient
    /// positive.
    pub fn primitive_part(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut content = BigInt::zero();
        for c in &self.coeffs {
            content = gcd_big(&content, c);
        }
        if self.coeffs.last().map(|c| c.sign() == Sign::Minus).unwrap_or(false) {
            content = -content;
        }
        Poly { coeffs: self.coeffs.iter().map(|c| c / &content).collect() }
    }
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a / gcd_big(a, b)) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_roundtrip() {
        let ring = Rationals;
        let f = QPoly::from_i64_coeffs(&[1, 2, 3]); // 3X^2+2X+1
        let g = QPoly::from_i64_coeffs(&[-1, 1]); // X-1
        let prod = f.mul(&ring, &g);
        let (quo, rem) = prod.divmod(&ring, &g).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quo, f);
        let (quo, rem) = f.divmod(&ring, &g).unwrap();
        // f = (X-1)(3X+5) + 6
        assert_eq!(quo, QPoly::from_i64_coeffs(&[5, 3]));
        assert_eq!(rem, QPoly::from_i64_coeffs(&[6]));
    }

    #[test]
    fn gcd_contract_example() {
        let ring = Rationals;
        let f = QPoly::from_i64_coeffs(&[-1, 0, 1]); // X^2-1
        let g = QPoly::from_i64_coeffs(&[-1, 1]); // X-1
        assert_eq!(f.gcd(&ring, &g).unwrap(), g);
    }

    #[test]
    fn derivative_and_eval() {
        let ring = Rationals;
        let f = QPoly::from_i64_coeffs(&[7, 0, -2, 1]); // X^3-2X^2+7
        assert_eq!(f.derivative(&ring), QPoly::from_i64_coeffs(&[0, -4, 3]));
        assert_eq!(f.evaluate(&ring, &q(2, 1)), q(7, 1));
        let shifted = f.shift(&ring, &q(1, 1));
        // f(X+1) at 1 equals f(2)
        assert_eq!(shifted.evaluate(&ring, &q(1, 1)), q(7, 1));
    }

    #[test]
    fn multiplicity_structure() {
        let ring = Rationals;
        // (X-1)^3 (X+2)^2 (X-5)
        let f = QPoly::from_i64_coeffs(&[-1, 1])
            .pow(&ring, 3)
            .mul(&ring, &QPoly::from_i64_coeffs(&[2, 1]).pow(&ring, 2))
            .mul(&ring, &QPoly::from_i64_coeffs(&[-5, 1]));
        let decomp = f.multiplicity_decomposition(&ring).unwrap();
        let shape: Vec<(usize, usize)> = decomp
            .iter()
            .map(|(m, p)| (*m, p.degree().unwrap()))
            .collect();
        assert_eq!(shape, vec![(1, 1), (2, 1), (3, 1)]);
        let sf = f.squarefree_part(&ring).unwrap();
        assert_eq!(sf.degree(), Some(3));
    }

    #[test]
    fn fast_gcd_matches_generic() {
        let ring = Rationals;
        let a = QPoly::from_i64_coeffs(&[1, 0, 1]); // X^2+1
        let b = QPoly::from_i64_coeffs(&[-3, 1]); // X-3
        let c = QPoly::from_i64_coeffs(&[5, 2]); // 2X+5
        let d = QPoly::from_i64_coeffs(&[1, 1, 1]); // X^2+X+1
        let f = a.mul(&ring, &b.pow(&ring, 2)).mul(&ring, &c).scale(&ring, &q(3, 7));
        let g = b.mul(&ring, &c).mul(&ring, &d).scale(&ring, &q(-11, 2));
        assert_eq!(f.gcd_fast(&g).unwrap(), f.gcd(&ring, &g).unwrap());
        assert_eq!(f.gcd_fast(&g).unwrap(), b.mul(&ring, &c).monic(&ring));
        // coprime pair
        assert_eq!(a.gcd_fast(&d).unwrap(), QPoly::one(&ring));
        // zero and constant edge cases agree with the generic contract
        assert_eq!(QPoly::zero().gcd_fast(&f).unwrap(), f.monic(&ring));
        assert_eq!(f.gcd_fast(&QPoly::zero()).unwrap(), f.monic(&ring));
        assert_eq!(QPoly::zero().gcd_fast(&QPoly::zero()).unwrap(), QPoly::zero());
        let k = QPoly::from_i64_coeffs(&[9]);
        assert_eq!(k.gcd_fast(&f).unwrap(), k.gcd(&ring, &f).unwrap());
    }

    #[test]
    fn fast_decomposition_matches_generic() {
        let ring = Rationals;
        // (X-1)^4 (X^2+1)^2 (3X+2), rationally scaled
        let f = QPoly::from_i64_coeffs(&[-1, 1])
            .pow(&ring, 4)
            .mul(&ring, &QPoly::from_i64_coeffs(&[1, 0, 1]).pow(&ring, 2))
            .mul(&ring, &QPoly::from_i64_coeffs(&[2, 3]))
            .scale(&ring, &q(-5, 6));
        assert_eq!(
            f.multiplicity_decomposition_fast().unwrap(),
            f.multiplicity_decomposition(&ring).unwrap()
        );
        assert_eq!(f.squarefree_part_fast().unwrap(), f.squarefree_part(&ring).unwrap());
        assert_eq!(f.squarefree_part_fast().unwrap().degree(), Some(4));
    }

    #[test]
    fn primitive_integer_form() {
        let f = Poly::from_coeffs(&Rationals, vec![q(-3, 4), q(0, 1), q(3, 2)]);
        let (prim, content) = f.primitive_integer();
        assert_eq!(prim, QPoly::from_i64_coeffs(&[-1, 0, 2]));
        assert_eq!(content, q(3, 4));
        let g = prim.scale(&Rationals, &content);
        assert_eq!(g, f);
    }

    #[test]
    fn mod_p_reduction() {
        let fp = PrimeField::new(31).unwrap();
        let f = Poly::from_coeffs(&Rationals, vec![q(1, 8), q(-1, 1), q(1, 1)]);
        let fbar = f.reduce_mod(&fp).unwrap();
        assert_eq!(fbar.coeffs, vec![4, 30, 1]);
        let g = Poly::from_coeffs(&Rationals, vec![q(1, 1), q(31, 1)]);
        assert!(g.reduce_mod(&fp).is_err());
    }

    #[test]
    fn prime_field_polys() {
        let fp = PrimeField::new(31).unwrap();
        let f = Poly::from_coeffs(&fp, vec![30, 0, 1]); // X^2 - 1
        let g = Poly::from_coeffs(&fp, vec![30, 1]); // X - 1
        assert_eq!(f.gcd(&fp, &g).unwrap(), g);
        let h = f.exact_quotient(&fp, &g).unwrap();
        assert_eq!(h, Poly::from_coeffs(&fp, vec![1, 1]));
    }
}
