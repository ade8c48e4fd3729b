//! Ramification data of a rational cover `t = p(X)/q(X)` of the line:
//! branch-point discovery through the discriminant in `t`, and exact
//! fiber profiles at rational points, at ∞, and at conjugate pairs of
//! quadratic irrationalities.
//!
//! Covers are kept in the normal form `deg p > deg q` with `gcd(p,q) = 1`,
//! so the map has degree `deg p` and the fiber over ∞ is governed by `q`
//! together with the degree drop `deg p − deg q`.

use super::poly::QPoly;
use super::resultant::discriminant_in_t_modular;
use crate::error::{Error, Result};
use crate::perm::CycleType;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A branch point of a cover of the `t`-line, kept exact.
#[derive(Clone, Debug, PartialEq)]
pub enum BranchPoint {
    /// A rational point `t = r`.
    Rational(BigRational),
    /// The pair of conjugate roots of `t² + b·t + c`, irreducible over ℚ.
    /// Both points carry the same inertia profile.
    QuadraticPair {
        /// Linear coefficient of the minimal polynomial.
        b: BigRational,
        /// Constant coefficient of the minimal polynomial.
        c: BigRational,
    },
    /// The point `t = ∞`.
    Infinity,
}

impl std::fmt::Display for BranchPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BranchPoint::Rational(r) => write!(f, "{r}"),
            BranchPoint::QuadraticPair { b, c } => {
                write!(f, "roots of t^2 + ({b})t + ({c})")
            }
            BranchPoint::Infinity => write!(f, "infinity"),
        }
    }
}

/// Inertia (cycle-type) data attached to one branch point; a
/// `QuadraticPair` stands for two conjugate branch points with equal type.
#[derive(Clone, Debug, PartialEq)]
pub struct RamificationProfile {
    /// Where the branching happens.
    pub point: BranchPoint,
    /// Multiset of ramification indices in the fiber.
    pub inertia: CycleType,
}

impl RamificationProfile {
    /// Number of geometric branch points this entry stands for.
    pub fn point_count(&self) -> usize {
        match self.point {
            BranchPoint::QuadraticPair { .. } => 2,
            _ => 1,
        }
    }

    /// Total ramification index contribution, counting conjugates.
    pub fn total_index(&self) -> usize {
        self.inertia.index() * self.point_count()
    }
}

pub(crate) fn check_cover(p: &QPoly, q: &QPoly) -> Result<usize> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidPolynomial("cover needs nonzero numerator and denominator".into()));
    }
    if p.deg_i() <= q.deg_i() {
        return Err(Error::InvalidPolynomial(format!(
            "cover normal form requires deg p > deg q (got {} and {})",
            p.deg_i(),
            q.deg_i()
        )));
    }
    let g = p.gcd_fast(q)?;
    if g.degree() != Some(0) {
        return Err(Error::InvalidPolynomial("cover map p/q is not reduced".into()));
    }
    Ok(p.degree().unwrap())
}

fn profile_from_decomposition(decomp: &[(usize, QPoly)], extra: &[u32], degree: usize) -> Result<CycleType> {
    let mut lengths: Vec<u32> = extra.to_vec();
    for (mult, factor) in decomp {
        let d = factor.degree().unwrap_or(0);
        for _ in 0..d {
            lengths.push(*mult as u32);
        }
    }
    let ty = CycleType::from_lengths(&lengths);
    if ty.degree() != degree {
        return Err(Error::InvalidRamification(format!(
            "fiber multiplicities sum to {} instead of the cover degree {}",
            ty.degree(),
            degree
        )));
    }
    Ok(ty)
}

/// The inertia cycle type of the fiber over a rational point `t = t0`:
/// root multiplicities of `p − t0·q`. A non-branch point legally returns
/// the trivial type `1^n`.
pub fn ramification_profile(p: &QPoly, q: &QPoly, t0: &BigRational) -> Result<CycleType> {
    let n = check_cover(p, q)?;
    let ring = super::field::Rationals;
    let fiber = p.sub(&ring, &q.scale(&ring, t0));
    if fiber.degree() != Some(n) {
        return Err(Error::InvalidPolynomial("fiber polynomial lost degree unexpectedly".into()));
    }
    let decomp = fiber.multiplicity_decomposition_fast()?;
    profile_from_decomposition(&decomp, &[], n)
}

/// The inertia cycle type of the fiber over `t = ∞`: root multiplicities
/// of `q`, plus one cycle of length `deg p − deg q` at `X = ∞`.
pub fn ramification_profile_infinity(p: &QPoly, q: &QPoly) -> Result<CycleType> {
    let n = check_cover(p, q)?;
    let drop = (p.deg_i() - q.deg_i()) as u32;
    let decomp = if q.degree() == Some(0) {
        Vec::new()
    } else {
        q.multiplicity_decomposition_fast()?
    };
    profile_from_decomposition(&decomp, &[drop], n)
}

/// The common inertia cycle type of the two fibers over the conjugate
/// roots of `t² + b·t + c` (which must be irreducible over ℚ). Works with
/// the norm form `N = p² + b·p·q + c·q²`, the product of the two conjugate
/// fiber polynomials: their root sets are disjoint, the conjugate profiles
/// agree, so each multiplicity appears in `N` exactly twice as often.
pub fn ramification_profile_pair(
    p: &QPoly,
    q: &QPoly,
    b: &BigRational,
    c: &BigRational,
) -> Result<CycleType> {
    let n = check_cover(p, q)?;
    let disc = b * b - BigRational::from_integer(BigInt::from(4)) * c;
    if rational_sqrt(&disc).is_some() {
        return Err(Error::BranchPoint(
            "t^2 + bt + c splits over the rationals; use the rational-point profile".into(),
        ));
    }
    let ring = super::field::Rationals;
    let norm = p
        .mul(&ring, p)
        .add(&ring, &p.mul(&ring, q).scale(&ring, b))
        .add(&ring, &q.mul(&ring, q).scale(&ring, c));
    if norm.degree() != Some(2 * n) {
        return Err(Error::InvalidPolynomial("norm form lost degree unexpectedly".into()));
    }
    let decomp = norm.multiplicity_decomposition_fast()?;
    let mut lengths: Vec<u32> = Vec::new();
    for (mult, factor) in &decomp {
        let d = factor.degree().unwrap_or(0);
        if d % 2 != 0 {
            return Err(Error::InvalidRamification(
                "conjugate fibers produced an odd multiplicity block".into(),
            ));
        }
        for _ in 0..d / 2 {
            lengths.push(*mult as u32);
        }
    }
    let ty = CycleType::from_lengths(&lengths);
    if ty.degree() != n {
        return Err(Error::InvalidRamification(format!(
            "conjugate fiber multiplicities sum to {} instead of {}",
            ty.degree(),
            n
        )));
    }
    Ok(ty)
}

/// Exact square root of a nonnegative rational, when it is a square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// All branch points of the cover with their inertia profiles, certified
/// complete by the Riemann–Hurwitz count for a genus-zero source:
/// `Σ index = 2·deg − 2` must hold exactly, otherwise an error reports
/// what was found.
///
/// Branch values are isolated from the squarefree part of the
/// discriminant in `t`; linear and quadratic blocks are solved exactly.
/// A squarefree branch-locus factor of degree ≥ 3 (never the case for the
/// curated families) is reported as unsupported rather than approximated.
pub fn branch_profiles(p: &QPoly, q: &QPoly) -> Result<Vec<RamificationProfile>> {
    let n = check_cover(p, q)?;
    let ring = super::field::Rationals;
    let disc = discriminant_in_t_modular(p, q)?;
    if disc.is_zero() {
        return Err(Error::InvalidPolynomial("identically vanishing discriminant: inseparable cover".into()));
    }
    let mut profiles: Vec<RamificationProfile> = Vec::new();

    let sf = disc.squarefree_part_fast()?;
    // t = 0 first when it is a branch value
    let mut rest = sf.clone();
    if sf.evaluate(&ring, &BigRational::zero()).is_zero() {
        let x = QPoly::x(&ring);
        rest = sf.exact_quotient(&ring, &x)?;
        let ty = ramification_profile(p, q, &BigRational::zero())?;
        profiles.push(RamificationProfile {
            point: BranchPoint::Rational(BigRational::zero()),
            inertia: ty,
        });
    }

    match rest.degree().unwrap_or(0) {
        0 => {}
        1 => {
            let r = -&rest.coeffs[0] / &rest.coeffs[1];
            push_rational(p, q, r, &mut profiles)?;
        }
        2 => {
            let a2 = rest.coeffs[2].clone();
            let b = &rest.coeffs[1] / &a2;
            let c = &rest.coeffs[0] / &a2;
            let four = BigRational::from_integer(BigInt::from(4));
            let two = BigRational::from_integer(BigInt::from(2));
            let disc2 = &b * &b - four * &c;
            if let Some(s) = rational_sqrt(&disc2) {
                let r1 = (-&b + &s) / &two;
                let r2 = (-&b - &s) / &two;
                push_rational(p, q, r1, &mut profiles)?;
                push_rational(p, q, r2, &mut profiles)?;
            } else {
                let ty = ramification_profile_pair(p, q, &b, &c)?;
                profiles.push(RamificationProfile {
                    point: BranchPoint::QuadraticPair { b, c },
                    inertia: ty,
                });
            }
        }
        d => {
            return Err(Error::BranchPoint(format!(
                "branch locus has a squarefree factor of degree {d}; only rational and \
                 quadratic branch values are supported"
            )));
        }
    }

    let ty = ramification_profile_infinity(p, q)?;
    if ty.index() > 0 {
        profiles.push(RamificationProfile { point: BranchPoint::Infinity, inertia: ty });
    }

    let total: usize = profiles.iter().map(|pr| pr.total_index()).sum();
    if total != 2 * n - 2 {
        return Err(Error::InvalidRamification(format!(
            "branch profiles reach ramification index {total}, expected {} for a \
             degree-{n} cover of genus zero",
            2 * n - 2
        )));
    }
    Ok(profiles)
}

fn push_rational(
    p: &QPoly,
    q: &QPoly,
    r: BigRational,
    profiles: &mut Vec<RamificationProfile>,
) -> Result<()> {
    let ty = ramification_profile(p, q, &r)?;
    profiles.push(RamificationProfile { point: BranchPoint::Rational(r), inertia: ty });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ty(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    #[test]
    fn profile_of_power_map() {
        // t = X^4: branch 0 ↦ 4, ∞ ↦ 4, others trivial
        let p = QPoly::from_i64_coeffs(&[0, 0, 0, 0, 1]);
        let q = QPoly::from_i64_coeffs(&[1]);
        assert_eq!(ramification_profile(&p, &q, &qr(0)).unwrap(), ty("4"));
        assert_eq!(ramification_profile(&p, &q, &qr(3)).unwrap(), ty("1^4"));
        assert_eq!(ramification_profile_infinity(&p, &q).unwrap(), ty("4"));
        let profiles = branch_profiles(&p, &q).unwrap();
        assert_eq!(profiles.len(), 2);
        assert_eq!(profiles[0].point, BranchPoint::Rational(qr(0)));
        assert_eq!(profiles[1].point, BranchPoint::Infinity);
    }

    #[test]
    fn profile_of_chebyshev_like_cubic() {
        // t = X^3 − 3X: critical points X = ±1 with t = ∓2
        let p = QPoly::from_i64_coeffs(&[0, -3, 0, 1]);
        let q = QPoly::from_i64_coeffs(&[1]);
        assert_eq!(ramification_profile(&p, &q, &qr(2)).unwrap(), ty("2.1"));
        assert_eq!(ramification_profile(&p, &q, &qr(-2)).unwrap(), ty("2.1"));
        assert_eq!(ramification_profile_infinity(&p, &q).unwrap(), ty("3"));
        let profiles = branch_profiles(&p, &q).unwrap();
        assert_eq!(profiles.len(), 3);
        let pts: Vec<String> = profiles.iter().map(|p| p.point.to_string()).collect();
        assert!(pts.contains(&"2".to_string()) && pts.contains(&"-2".to_string()));
    }

    #[test]
    fn conjugate_pair_fiber() {
        // t = X^3 − 3X + t shifted: use p = X^3, branch at t^2 = −27·…
        // X^3 − 3X has rational branch values; take p = X^3 + X instead:
        // disc_X(X^3 + X − t) = −4 − 27t^2, roots t = ±2i/(3√3): conjugate pair.
        let p = QPoly::from_i64_coeffs(&[0, 1, 0, 1]);
        let q = QPoly::from_i64_coeffs(&[1]);
        let profiles = branch_profiles(&p, &q).unwrap();
        // pair with type 2.1 (counts twice) + ∞ with type 3
        assert_eq!(profiles.len(), 2);
        match &profiles[0].point {
            BranchPoint::QuadraticPair { b, c } => {
                assert!(b.is_zero());
                assert_eq!(c, &BigRational::new(BigInt::from(4), BigInt::from(27)));
            }
            other => panic!("expected quadratic pair, got {other}"),
        }
        assert_eq!(profiles[0].inertia, ty("2.1"));
        assert_eq!(profiles[0].point_count(), 2);
        assert_eq!(profiles[1].inertia, ty("3"));
    }

    #[test]
    fn rational_map_with_pole_structure() {
        // t = X^3/(X−1): fiber over ∞ = pole at 1 (order 1) + X=∞ (order 2)
        let p = QPoly::from_i64_coeffs(&[0, 0, 0, 1]);
        let q = QPoly::from_i64_coeffs(&[-1, 1]);
        assert_eq!(ramification_profile_infinity(&p, &q).unwrap(), ty("2.1"));
        assert_eq!(ramification_profile(&p, &q, &qr(0)).unwrap(), ty("3"));
        // remaining branch value 27/4 (double root at X = 3/2); RH closes
        let profiles = branch_profiles(&p, &q).unwrap();
        assert_eq!(profiles.len(), 3);
        assert_eq!(profiles[1].point, BranchPoint::Rational(BigRational::new(
            BigInt::from(27), BigInt::from(4))));
        assert_eq!(profiles[1].inertia, ty("2.1"));
        let total: usize = profiles.iter().map(|p| p.total_index()).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn square_root_of_rationals() {
        assert_eq!(rational_sqrt(&BigRational::new(BigInt::from(9), BigInt::from(4))),
                   Some(BigRational::new(BigInt::from(3), BigInt::from(2))));
        assert_eq!(rational_sqrt(&qr(2)), None);
        assert_eq!(rational_sqrt(&qr(-4)), None);
        assert_eq!(rational_sqrt(&qr(0)), Some(qr(0)));
    }

    #[test]
    fn pair_rejects_split_quadratic() {
        let p = QPoly::from_i64_coeffs(&[0, 1, 0, 1]);
        let q = QPoly::from_i64_coeffs(&[1]);
        // t^2 − 1 splits
        assert!(ramification_profile_pair(&p, &q, &qr(0), &qr(-1)).is_err());
    }
}
