//! Sturm chains: exact counts of distinct real roots of rational
//! polynomials in half-open intervals `(a, b]` and on the whole line.
//!
//! The chain is kept over ℤ: the input's squarefree part is cleared to a
//! primitive integer polynomial and successive members are pseudo-remainders
//! divided by their (positive) content, with signs corrected so that each
//! member is a *positive* constant multiple of the rational-arithmetic chain
//! member it replaces. Sign variation counts are therefore exact while all
//! arithmetic stays in ℤ.

use super::field::Integers;
use super::poly::{pseudo_rem_z, QPoly, ZPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Outcome of a Sturm count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SturmCount {
    /// Number of distinct real roots in the queried range.
    pub count: usize,
    /// True when the input was not squarefree and was replaced by its
    /// squarefree part before counting (root multiplicities are ignored
    /// either way; this flag only reports that the reduction happened).
    pub reduced: bool,
}

/// A Sturm chain for a squarefree polynomial, stored as primitive integer
/// polynomials whose signs agree with the exact rational chain.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<ZPoly>,
    reduced: bool,
}

impl SturmChain {
    /// Build the chain for `f`, replacing `f` by its squarefree part first
    /// (reported through [`SturmChain::was_reduced`]). Errors on the zero
    /// polynomial, whose real-root set is not finite.
    pub fn new(f: &QPoly) -> Result<SturmChain> {
        if f.is_zero() {
            return Err(Error::InvalidPolynomial(
                "Sturm chain of the zero polynomial".into(),
            ));
        }
        let sf = f.squarefree_part_fast()?;
        let reduced = sf.degree() != f.degree();
        if sf.degree() == Some(0) {
            // Nonzero constant: no roots anywhere; chain with a single
            // constant member yields zero variations at every point.
            let one = ZPoly::from_coeffs(&Integers, vec![BigInt::from(1)]);
            return Ok(SturmChain { chain: vec![one], reduced });
        }
        let ring = Integers;
        let p0 = sf.to_primitive_z();
        let p1 = p0.derivative(&ring);
        let mut chain = vec![p0, p1];
        loop {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            if b.is_zero() {
                chain.pop();
                break;
            }
            if b.degree() == Some(0) {
                break;
            }
            // lc(b)^(δ+1)·a = q·b + r. When the scale factor is negative the
            // pseudo-remainder has the opposite sign of the true remainder,
            // so the chain member −(a mod b) is +r up to positive content.
            let delta = a.deg_i() - b.deg_i();
            let scale_negative = (delta + 1) % 2 != 0 && b.leading(&ring).is_negative();
            let r = pseudo_rem_z(a, b);
            let next = if scale_negative { div_positive_content(&r) } else { div_positive_content(&r.neg(&ring)) };
            if next.is_zero() {
                break;
            }
            chain.push(next);
        }
        Ok(SturmChain { chain, reduced })
    }

    /// True when the input polynomial was not squarefree.
    pub fn was_reduced(&self) -> bool {
        self.reduced
    }

    /// Sign variations of the chain at the rational point `x`, zeros skipped.
    pub fn variations_at(&self, x: &BigRational) -> usize {
        let num = x.numer();
        let den = x.denom();
        count_variations(self.chain.iter().map(|p| sign_at(p, num, den)))
    }

    /// Sign variations in the limit `x → −∞`.
    pub fn variations_neg_inf(&self) -> usize {
        count_variations(self.chain.iter().map(|p| {
            let s = leading_sign(p);
            if p.deg_i() % 2 != 0 {
                -s
            } else {
                s
            }
        }))
    }

    /// Sign variations in the limit `x → +∞`.
    pub fn variations_pos_inf(&self) -> usize {
        count_variations(self.chain.iter().map(leading_sign))
    }

    /// Distinct real roots in the half-open interval `(a, b]`. With the
    /// zero-skipping variation count, `V(x)` equals its right limit
    /// `V(x⁺)` even at roots, so a root at `b` is counted and a root at
    /// `a` is not. An empty interval (`a ≥ b`) has count zero.
    pub fn count_interval(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_neg_inf().saturating_sub(self.variations_pos_inf())
    }
}

/// Exact number of distinct real roots of `f` in `(a, b]`, with the
/// squarefree reduction applied (and reported) automatically.
pub fn sturm_count(f: &QPoly, a: &BigRational, b: &BigRational) -> Result<SturmCount> {
    let chain = SturmChain::new(f)?;
    Ok(SturmCount { count: chain.count_interval(a, b), reduced: chain.was_reduced() })
}

/// Exact number of distinct real roots of `f` on the whole real line.
pub fn sturm_count_all(f: &QPoly) -> Result<SturmCount> {
    let chain = SturmChain::new(f)?;
    Ok(SturmCount { count: chain.count_all(), reduced: chain.was_reduced() })
}

/// Divide an integer polynomial by its positive content, preserving signs.
fn div_positive_content(p: &ZPoly) -> ZPoly {
    if p.is_zero() {
        return ZPoly::zero();
    }
    let mut content = BigInt::zero();
    for c in &p.coeffs {
        content = content.gcd(c);
    }
    let coeffs = p.coeffs.iter().map(|c| c / &content).collect();
    ZPoly::from_coeffs(&Integers, coeffs)
}

/// Sign of `p(n/d)` for `d > 0`, via the homogeneous integer value
/// `Σ cᵢ nⁱ d^(deg−i)` (same sign, no rational arithmetic): Horner in `n`
/// with one extra factor of `d` folded in per level.
fn sign_at(p: &ZPoly, n: &BigInt, d: &BigInt) -> i32 {
    let coeffs = &p.coeffs;
    if coeffs.is_empty() {
        return 0;
    }
    let deg = coeffs.len() - 1;
    let mut acc = coeffs[deg].clone();
    let mut dpow = BigInt::from(1);
    for c in coeffs[..deg].iter().rev() {
        dpow *= d;
        acc = acc * n + c * &dpow;
    }
    sign_of(&acc)
}

fn sign_of(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

fn leading_sign(p: &ZPoly) -> i32 {
    p.coeffs.last().map(sign_of).unwrap_or(0)
}

/// Count sign alternations in a sequence, skipping zeros.
fn count_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0i32;
    let mut count = 0usize;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn quadratic_examples() {
        // X² − 2 on [0, 2): one root (√2).
        let f = QPoly::from_i64_coeffs(&[-2, 0, 1]);
        let c = sturm_count(&f, &q(0), &q(2)).unwrap();
        assert_eq!(c.count, 1);
        assert!(!c.reduced);
        // X² + 1 has no real roots at all.
        let g = QPoly::from_i64_coeffs(&[1, 0, 1]);
        assert_eq!(sturm_count(&g, &q(-10), &q(10)).unwrap().count, 0);
        assert_eq!(sturm_count_all(&g).unwrap().count, 0);
        // Both roots of X² − 2 on the whole line.
        assert_eq!(sturm_count_all(&f).unwrap().count, 2);
    }

    #[test]
    fn half_open_endpoint_conventions() {
        // f = X(X−1)(X−2): roots 0, 1, 2.
        let f = QPoly::from_i64_coeffs(&[0, 2, -3, 1]);
        // (0, 2] holds 1 and 2 but not the root at the left endpoint.
        assert_eq!(sturm_count(&f, &q(0), &q(2)).unwrap().count, 2);
        // (−1, 0] picks up the root at the right endpoint.
        assert_eq!(sturm_count(&f, &q(-1), &q(0)).unwrap().count, 1);
        // Empty and reversed intervals count zero.
        assert_eq!(sturm_count(&f, &q(1), &q(1)).unwrap().count, 0);
        assert_eq!(sturm_count(&f, &q(2), &q(-2)).unwrap().count, 0);
    }

    #[test]
    fn squarefree_reduction_reported() {
        // (X−1)²(X+3): two distinct real roots, reduction reported.
        let f = QPoly::from_i64_coeffs(&[3, -5, 1, 1]);
        let c = sturm_count_all(&f).unwrap();
        assert_eq!(c.count, 2);
        assert!(c.reduced);
    }

    #[test]
    fn rational_endpoints_and_scaled_input() {
        // 6X² − 5X + 1 = (2X−1)(3X−1): roots 1/2 and 1/3.
        let f = QPoly::from_i64_coeffs(&[1, -5, 6]);
        assert_eq!(sturm_count_all(&f).unwrap().count, 2);
        assert_eq!(sturm_count(&f, &qr(1, 3), &qr(1, 2)).unwrap().count, 1);
        assert_eq!(sturm_count(&f, &qr(1, 4), &qr(1, 2)).unwrap().count, 2);
        assert_eq!(sturm_count(&f, &qr(1, 2), &q(5)).unwrap().count, 0);
    }

    #[test]
    fn known_root_counts_match_construction() {
        // Product of linear factors with known roots times an irreducible
        // quadratic: the real-root count is the number of linear factors.
        let ring = super::super::field::Rationals;
        let roots = [-7i64, -2, 0, 3, 11];
        let mut f = QPoly::from_i64_coeffs(&[5, 1, 1]); // X²+X+5, Δ<0
        for r in roots {
            f = f.mul(&ring, &QPoly::from_i64_coeffs(&[-r, 1]));
        }
        assert_eq!(sturm_count_all(&f).unwrap().count, roots.len());
        // Count inside (−3, 3]: roots −2, 0, 3.
        assert_eq!(sturm_count(&f, &q(-3), &q(3)).unwrap().count, 3);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(sturm_count_all(&QPoly::zero()).is_err());
    }

    #[test]
    fn constant_has_no_roots() {
        let f = QPoly::from_i64_coeffs(&[7]);
        assert_eq!(sturm_count_all(&f).unwrap().count, 0);
    }
}
