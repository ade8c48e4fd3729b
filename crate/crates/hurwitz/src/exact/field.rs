//! Coefficient rings for exact polynomial arithmetic: big rationals, prime
//! fields with a word-sized modulus, and polynomial rings over either
//! (the latter used as coefficient domains for bivariate work).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A commutative coefficient ring with exact arithmetic.
///
/// Fields implement `inv` for every nonzero element; integral domains that
/// are not fields (polynomial rings) return `None` from `inv` for
/// non-units and support `exact_div` where divisibility is guaranteed.
pub trait Coefficients {
    /// Element representation of the ring.
    type Elem: Clone + PartialEq + std::fmt::Debug;

    /// The additive identity.
    fn zero(&self) -> Self::Elem;
    /// The multiplicative identity.
    fn one(&self) -> Self::Elem;
    /// Test against the additive identity.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Sum.
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Difference.
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Additive inverse.
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Product.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Exact division: `a / b` when `b` divides `a`; used by the
    /// subresultant scheme where divisibility is a theorem.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// Embed a machine integer.
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// True when every nonzero element is invertible.
    fn is_field(&self) -> bool;
}

/// The field of rational numbers with arbitrary-precision values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Coefficients for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        if b.is_zero() {
            return Err(Error::DivisionByZero("rational exact division".into()));
        }
        Ok(a / b)
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_field(&self) -> bool {
        true
    }
}

/// The rational integers as an exact coefficient domain — not a field:
/// only `±1` are units, and exact division errors on a nonzero remainder.
/// Useful because remainder sequences over ℤ avoid the normalization cost
/// of rational arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Integers;

impl Coefficients for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.is_one() || (-a).is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        if b.is_zero() {
            return Err(Error::DivisionByZero("integer exact division".into()));
        }
        let (q, r) = num_integer::Integer::div_rem(a, b);
        if !r.is_zero() {
            return Err(Error::DivisionByZero(
                "integer division left a remainder where exactness was promised".into(),
            ));
        }
        Ok(q)
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn is_field(&self) -> bool {
        false
    }
}

/// A prime field `F_p` with `p` an odd prime below `2^62`; elements are
/// reduced residues stored in a machine word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Construct the field, verifying primality by trial division (the
    /// modulus is word-sized, so this is cheap and exact).
    pub fn new(p: u64) -> Result<PrimeField> {
        if p < 3 || p >= (1 << 62) {
            return Err(Error::InvalidPrime(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// The prime modulus.
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Image of a machine integer as a reduced residue.
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Image of a rational number; errors when the denominator vanishes
    /// modulo `p`.
    pub fn reduce_rational(&self, r: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let num = r.numer() % &p;
        let den = r.denom() % &p;
        let to_u64 = |x: &BigInt| -> u64 {
            let m = ((x % &p) + &p) % &p;
            let (_, digits) = m.to_u64_digits();
            digits.first().copied().unwrap_or(0)
        };
        let den = to_u64(&den);
        if den == 0 {
            return Err(Error::DivisionByZero(format!(
                "denominator of {r} vanishes modulo {}",
                self.p
            )));
        }
        let num = to_u64(&num);
        Ok(self.mul_raw(num, self.inv_raw(den)))
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// Modular exponentiation by squaring.
    pub fn pow_raw(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv_raw(&self, a: u64) -> u64 {
        // Fermat: a^(p-2); callers guarantee a ≠ 0
        self.pow_raw(a, self.p - 2)
    }

    /// True when `a` is a nonzero square modulo `p` (Euler's criterion);
    /// zero counts as a square.
    pub fn is_square(&self, a: u64) -> bool {
        let a = a % self.p;
        a == 0 || self.pow_raw(a, (self.p - 1) / 2) == 1
    }

    /// A square root of `a` when one exists (Tonelli–Shanks).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow_raw(a, (p + 1) / 4));
        }
        // write p−1 = q·2^s with q odd
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        // find a non-residue z deterministically
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow_raw(z, q);
        let mut t = self.pow_raw(a, q);
        let mut r = self.pow_raw(a, (q + 1) / 2);
        while t != 1 {
            // least i with t^(2^i) = 1
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul_raw(t2, t2);
                i += 1;
            }
            let b = self.pow_raw(c, 1 << (m - i - 1));
            m = i;
            c = self.mul_raw(b, b);
            t = self.mul_raw(t, c);
            r = self.mul_raw(r, b);
        }
        Some(r)
    }
}

impl Coefficients for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_raw(*a, *b)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.inv_raw(*a))
        }
    }
    fn exact_div(&self, a: &u64, b: &u64) -> Result<u64> {
        let inv = self.inv(b).ok_or_else(|| Error::DivisionByZero("prime-field exact division".into()))?;
        Ok(self.mul_raw(*a, inv))
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn is_field(&self) -> bool {
        true
    }
}

/// Deterministic Miller–Rabin, exact for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(31).unwrap();
        assert_eq!(f.add(&30, &5), 4);
        assert_eq!(f.mul(&7, &9), 63 % 31);
        assert_eq!(f.mul(&f.inv(&12).unwrap(), &12), 1);
        assert!(PrimeField::new(32).is_err());
        assert!(PrimeField::new(2).is_err());
    }

    #[test]
    fn square_roots() {
        let f = PrimeField::new(31).unwrap();
        let mut squares = 0;
        for a in 1..31u64 {
            if let Some(r) = f.sqrt(a) {
                assert_eq!(f.mul(&r, &r), a);
                squares += 1;
            } else {
                assert!(!f.is_square(a));
            }
        }
        assert_eq!(squares, 15);
        // a 1 mod 4 prime exercises the full Tonelli–Shanks loop
        let f = PrimeField::new(13).unwrap();
        for a in 1..13u64 {
            if let Some(r) = f.sqrt(a) {
                assert_eq!(f.mul(&r, &r), a);
            }
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(31));
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(31).unwrap();
        let r = BigRational::new(BigInt::from(1), BigInt::from(8));
        let img = f.reduce_rational(&r).unwrap();
        assert_eq!(f.mul(&img, &8), 1);
        let bad = BigRational::new(BigInt::from(1), BigInt::from(62));
        assert!(f.reduce_rational(&bad).is_err());
    }
}
