//! Complete factorization over prime fields: squarefree (radical)
//! decomposition aware of characteristic p, distinct-degree factorization,
//! and seeded Cantor–Zassenhaus equal-degree splitting.
//!
//! Output is canonical — monic irreducible factors sorted by degree and
//! then lexicographically by coefficients — so runs are reproducible even
//! though the equal-degree stage draws random splitting polynomials (from
//! a caller-supplied seed).

use super::field::PrimeField;
use super::poly::FpPoly;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Complete factorization of `f` into monic irreducibles with
/// multiplicities. The unit (leading coefficient) is implicit: the product
/// of the returned powers times `lc(f)` reconstructs `f` exactly. A nonzero
/// constant factors into the empty list; the zero polynomial is rejected.
///
/// Randomness in the equal-degree stage comes entirely from `seed`, so
/// equal inputs give equal runs; the sorted output is canonical regardless.
pub fn factor_fp(fp: &PrimeField, f: &FpPoly, seed: u64) -> Result<Vec<(FpPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::InvalidPolynomial("factorization of the zero polynomial".into()));
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let m = f.monic(fp);
    let rad = radical(fp, &m)?;
    let blocks = distinct_degree(fp, &rad)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut irreducibles = Vec::new();
    for (k, block) in blocks {
        equal_degree(fp, block, k, &mut rng, &mut irreducibles)?;
    }
    let mut out = Vec::with_capacity(irreducibles.len());
    let mut rest = m;
    for g in irreducibles {
        let mut mult = 0usize;
        loop {
            let (q, r) = rest.divmod(fp, &g)?;
            if r.is_zero() {
                rest = q;
                mult += 1;
            } else {
                break;
            }
        }
        if mult == 0 {
            return Err(Error::InvalidPolynomial(
                "internal factorization error: radical factor does not divide the input".into(),
            ));
        }
        out.push((g, mult));
    }
    if rest.degree() != Some(0) {
        return Err(Error::InvalidPolynomial(
            "internal factorization error: nontrivial cofactor after multiplicity extraction".into(),
        ));
    }
    out.sort_by(|a, b| (a.0.deg_i(), &a.0.coeffs).cmp(&(b.0.deg_i(), &b.0.coeffs)));
    Ok(out)
}

/// Irreducibility test by distinct-degree factorization: `f` (made monic)
/// is irreducible iff it is squarefree and its sole distinct-degree block
/// is the whole polynomial. Constants and the zero polynomial are not
/// irreducible.
pub fn is_irreducible(fp: &PrimeField, f: &FpPoly) -> Result<bool> {
    let deg = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(d) => d,
    };
    if deg == 1 {
        return Ok(true);
    }
    let m = f.monic(fp);
    let d = m.derivative(fp);
    if d.is_zero() {
        return Ok(false); // p-th power
    }
    if m.gcd(fp, &d)?.degree() != Some(0) {
        return Ok(false); // repeated factor
    }
    let blocks = distinct_degree(fp, &m)?;
    Ok(blocks.len() == 1 && blocks[0].0 == deg)
}

/// Product of the distinct monic irreducible factors of a monic `f`,
/// characteristic-p aware: factors whose multiplicity is divisible by p are
/// invisible to `gcd(f, f′)` and are recovered by deflating the p-th-power
/// part (`u(X^p) = h(X)^p` over `F_p`).
fn radical(fp: &PrimeField, f: &FpPoly) -> Result<FpPoly> {
    if f.degree() == Some(0) {
        return Ok(FpPoly::constant(fp, 1));
    }
    let d = f.derivative(fp);
    if d.is_zero() {
        return radical(fp, &deflate_p(fp, f)?);
    }
    let c = f.gcd(fp, &d)?;
    let w = f.exact_quotient(fp, &c)?; // distinct factors with mult ∤≡ 0 (mod p)
    // Strip every w-factor completely; what is left is the p-th-power part.
    let mut rest = f.clone();
    loop {
        let g = rest.gcd(fp, &w)?;
        if g.degree() == Some(0) {
            break;
        }
        rest = rest.exact_quotient(fp, &g)?;
    }
    if rest.degree() == Some(0) {
        return Ok(w);
    }
    let tail = radical(fp, &deflate_p(fp, &rest)?)?;
    Ok(w.mul(fp, &tail))
}

/// Inverse of Frobenius inflation: for `f(X) = u(X^p)` return `u`.
/// Errors when `f` has a nonzero coefficient away from multiples of p.
fn deflate_p(fp: &PrimeField, f: &FpPoly) -> Result<FpPoly> {
    let p = fp.modulus() as usize;
    let mut u = Vec::with_capacity(f.coeffs.len() / p + 1);
    for (i, c) in f.coeffs.iter().enumerate() {
        if i % p == 0 {
            u.push(*c);
        } else if *c != 0 {
            return Err(Error::InvalidPolynomial(
                "deflation of a polynomial that is not in X^p".into(),
            ));
        }
    }
    Ok(FpPoly::from_coeffs(fp, u))
}

/// Distinct-degree factorization of a monic squarefree `f`: pairs
/// `(k, product of all irreducible factors of degree k)`, ascending in k,
/// trivial blocks omitted.
fn distinct_degree(fp: &PrimeField, f: &FpPoly) -> Result<Vec<(usize, FpPoly)>> {
    let mut blocks = Vec::new();
    let mut g = f.clone();
    let mut h = FpPoly::x(fp); // X^(p^k) mod g, k = 0 so far
    let mut k = 0usize;
    while g.degree().map(|d| d >= 2 * (k + 1)).unwrap_or(false) {
        k += 1;
        h = powmod_u64(fp, &h, fp.modulus(), &g)?;
        let hx = h.sub(fp, &FpPoly::x(fp));
        let gk = hx.gcd(fp, &g)?;
        if gk.degree().map(|d| d > 0).unwrap_or(false) {
            g = g.exact_quotient(fp, &gk)?;
            let (_, hr) = h.divmod(fp, &g)?;
            h = hr;
            blocks.push((k, gk));
        }
    }
    if g.degree().map(|d| d > 0).unwrap_or(false) {
        blocks.push((g.degree().unwrap(), g));
    }
    Ok(blocks)
}

/// Cantor–Zassenhaus equal-degree splitting: `f` monic squarefree with all
/// irreducible factors of degree `k`; appends the factors to `out`.
fn equal_degree(
    fp: &PrimeField,
    f: FpPoly,
    k: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FpPoly>,
) -> Result<()> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(());
    }
    if deg == k {
        out.push(f);
        return Ok(());
    }
    // (p^k − 1)/2; p is odd, so the division is exact.
    let e = (BigUint::from(fp.modulus()).pow(k as u32) - BigUint::from(1u32)) / BigUint::from(2u32);
    let budget = 128 * (k + 8);
    for _ in 0..budget {
        let r = random_poly(fp, 2 * k, rng);
        if r.degree().map(|d| d < 1).unwrap_or(true) {
            continue;
        }
        let d0 = r.gcd(fp, &f)?;
        let split = if d0.degree().map(|d| d > 0 && d < deg).unwrap_or(false) {
            Some(d0)
        } else {
            let s = powmod_big(fp, &r, &e, &f)?;
            let s1 = s.sub(fp, &FpPoly::constant(fp, 1));
            let d = s1.gcd(fp, &f)?;
            if d.degree().map(|x| x > 0 && x < deg).unwrap_or(false) {
                Some(d)
            } else {
                None
            }
        };
        if let Some(d) = split {
            let q = f.exact_quotient(fp, &d)?;
            equal_degree(fp, d, k, rng, out)?;
            equal_degree(fp, q, k, rng, out)?;
            return Ok(());
        }
    }
    Err(Error::InvalidPolynomial(
        "equal-degree splitting exhausted its iteration budget".into(),
    ))
}

/// Uniform random polynomial of degree < `bound` (coefficients drawn from
/// the full field).
fn random_poly(fp: &PrimeField, bound: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    let p = fp.modulus();
    let coeffs: Vec<u64> = (0..bound).map(|_| uniform_mod(rng, p)).collect();
    FpPoly::from_coeffs(fp, coeffs)
}

/// Unbiased draw from `0..p` by rejection on the top of the 64-bit range.
fn uniform_mod(rng: &mut ChaCha8Rng, p: u64) -> u64 {
    let zone = u64::MAX - u64::MAX % p;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % p;
        }
    }
}

/// `base^exp mod modulus` with a machine-word exponent.
fn powmod_u64(fp: &PrimeField, base: &FpPoly, mut exp: u64, modulus: &FpPoly) -> Result<FpPoly> {
    let mut acc = FpPoly::constant(fp, 1);
    let (_, mut b) = base.divmod(fp, modulus)?;
    while exp > 0 {
        if exp & 1 == 1 {
            let (_, r) = acc.mul(fp, &b).divmod(fp, modulus)?;
            acc = r;
        }
        let (_, r) = b.mul(fp, &b).divmod(fp, modulus)?;
        b = r;
        exp >>= 1;
    }
    Ok(acc)
}

/// `base^exp mod modulus` with an unbounded exponent (square-and-multiply
/// over the exponent's bits, most significant first).
fn powmod_big(fp: &PrimeField, base: &FpPoly, exp: &BigUint, modulus: &FpPoly) -> Result<FpPoly> {
    let mut acc = FpPoly::constant(fp, 1);
    let (_, b) = base.divmod(fp, modulus)?;
    let bits = exp.bits();
    for i in (0..bits).rev() {
        let (_, sq) = acc.mul(fp, &acc).divmod(fp, modulus)?;
        acc = sq;
        if exp.bit(i) {
            let (_, r) = acc.mul(fp, &b).divmod(fp, modulus)?;
            acc = r;
        }
    }
    Ok(acc)
}
