//! Resultants and discriminants through the subresultant polynomial
//! remainder sequence, exact over any integral domain with exact division.
//!
//! The same generic routine computes univariate resultants over ℚ or a
//! prime field and, with polynomial coefficients, eliminates `X` from
//! `p(X) − t·q(X)` to produce the branch-locus discriminant in `t`.

use super::field::{is_prime_u64, Coefficients, PrimeField, Rationals};
use super::poly::{FpPoly, Poly, QPoly};
use crate::error::{Error, Result};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A polynomial ring viewed as a coefficient domain (coefficients for
/// bivariate computations). The base must be a field so that exact
/// division of coefficients can be carried out by plain division.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<F: Coefficients> {
    /// The coefficient ring of the polynomials themselves.
    pub base: F,
}

impl<F: Coefficients> Coefficients for PolyRing<F> {
    type Elem = Poly<F>;

    fn zero(&self) -> Poly<F> {
        Poly::zero()
    }
    fn one(&self) -> Poly<F> {
        Poly::one(&self.base)
    }
    fn is_zero(&self, a: &Poly<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a.add(&self.base, b)
    }
    fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a.sub(&self.base, b)
    }
    fn neg(&self, a: &Poly<F>) -> Poly<F> {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a.mul(&self.base, b)
    }
    fn inv(&self, a: &Poly<F>) -> Option<Poly<F>> {
        if a.degree() == Some(0) {
            self.base
                .inv(&a.coeffs[0])
                .map(|c| Poly::constant(&self.base, c))
        } else {
            None
        }
    }
    fn exact_div(&self, a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
        a.exact_quotient(&self.base, b)
    }
    fn from_i64(&self, n: i64) -> Poly<F> {
        Poly::constant(&self.base, self.base.from_i64(n))
    }
    fn is_field(&self) -> bool {
        false
    }
}

/// Pseudo-remainder: returns `R` with `lc(B)^(δ+1)·A ≡ R (mod B)` and
/// `deg R < deg B`, where `δ = deg A − deg B ≥ 0`.
fn pseudo_rem<F: Coefficients>(ring: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let db = b.degree().expect("pseudo_rem divisor nonzero");
    let lead = b.leading(ring);
    let mut r = a.clone();
    let mut scale_left = a.deg_i() - b.deg_i() + 1;
    while !r.is_zero() && r.deg_i() >= db as i64 {
        let dr = r.degree().unwrap();
        let rl = r.leading(ring);
        // r ← lc(B)·r − lc(r)·X^(dr−db)·B
        let mut next = vec![ring.zero(); dr]; // degree drops by ≥ 1
        for (i, c) in r.coeffs.iter().enumerate().take(dr) {
            next[i] = ring.mul(c, &lead);
        }
        for (j, c) in b.coeffs.iter().enumerate().take(db) {
            let idx = j + dr - db;
            next[idx] = ring.sub(&next[idx], &ring.mul(c, &rl));
        }
        r = Poly::from_coeffs(ring, next);
        scale_left -= 1;
    }
    // bring the total scaling to exactly lc(B)^(δ+1)
    for _ in 0..scale_left {
        r = r.scale(ring, &lead);
    }
    r
}

/// Resultant of `a` and `b` via the subresultant remainder sequence.
/// `res(0, ·)` is 0 by convention; constants give `c^deg` rules.
pub fn resultant<F: Coefficients>(ring: &F, a: &Poly<F>, b: &Poly<F>) -> Result<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return Ok(ring.zero());
    }
    let (mut a, mut b, mut negate) = if a.deg_i() < b.deg_i() {
        let flip = (a.deg_i() * b.deg_i()) % 2 == 1;
        (b.clone(), a.clone(), flip)
    } else {
        (a.clone(), b.clone(), false)
    };
    if b.degree() == Some(0) {
        // res(A, c) = c^deg A
        let mut acc = ring.one();
        for _ in 0..a.degree().unwrap() {
            acc = ring.mul(&acc, &b.coeffs[0]);
        }
        return Ok(if negate { ring.neg(&acc) } else { acc });
    }
    let mut g = ring.one();
    let mut h = ring.one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_rem(ring, &a, &b);
        a = b;
        // b ← R / (g·h^δ)
        let mut div = g.clone();
        for _ in 0..delta {
            div = ring.mul(&div, &h);
        }
        b = if r.is_zero() {
            Poly::zero()
        } else {
            let coeffs = r
                .coeffs
                .iter()
                .map(|c| ring.exact_div(c, &div))
                .collect::<Result<Vec<_>>>()?;
            Poly::from_coeffs(ring, coeffs)
        };
        g = a.leading(ring);
        // h ← h^(1−δ)·g^δ
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => {
                let mut num = ring.one();
                for _ in 0..delta {
                    num = ring.mul(&num, &g);
                }
                let mut den = ring.one();
                for _ in 0..delta - 1 {
                    den = ring.mul(&den, &h);
                }
                ring.exact_div(&num, &den)?
            }
        };
        if b.is_zero() {
            // positive-degree common factor
            return Ok(ring.zero());
        }
        if b.degree() == Some(0) {
            break;
        }
    }
    // res = s · lc(B)^deg A / h^(deg A − 1)
    let da = a.degree().unwrap();
    let mut num = ring.one();
    for _ in 0..da {
        num = ring.mul(&num, &b.coeffs[0]);
    }
    let mut den = ring.one();
    for _ in 0..da.saturating_sub(1) {
        den = ring.mul(&den, &h);
    }
    let res = ring.exact_div(&num, &den)?;
    Ok(if negate { ring.neg(&res) } else { res })
}

/// Discriminant `(−1)^(d(d−1)/2)·res(f, f′)/lc(f)` for `deg f ≥ 1`.
pub fn discriminant<F: Coefficients>(ring: &F, f: &Poly<F>) -> Result<F::Elem> {
    let d = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidPolynomial("discriminant needs degree >= 1".into()))?;
    let res = resultant(ring, f, &f.derivative(ring))?;
    let lead = f.leading(ring);
    let quo = ring.exact_div(&res, &lead)?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { ring.neg(&quo) } else { quo })
}

/// View the pencil `p(X) − t·q(X)` as a polynomial in `X` with
/// coefficients in the polynomial ring in `t`.
fn pencil<F: Coefficients>(ring: &F, p: &Poly<F>, q: &Poly<F>) -> Poly<PolyRing<F>>
where
    F: Clone,
{
    let n = p.coeffs.len().max(q.coeffs.len());
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let pi = p.coeff(ring, i);
        let qi = q.coeff(ring, i);
        coeffs.push(Poly::from_coeffs(ring, vec![pi, ring.neg(&qi)]));
    }
    let pr = PolyRing { base: ring.clone() };
    Poly::from_coeffs(&pr, coeffs)
}

/// The discriminant of `p(X) − t·q(X)` with respect to `X`, as an exact
/// polynomial in `t`. Requires `deg p > deg q` (so the `X`-degree is
/// constant along the pencil) and `gcd(p, q) = 1`.
pub fn discriminant_in_t(p: &QPoly, q: &QPoly) -> Result<QPoly> {
    discriminant_in_t_generic(&Rationals, p, q)
}

/// `discriminant_in_t` over a prime field.
pub fn discriminant_in_t_fp(fp: &PrimeField, p: &FpPoly, q: &FpPoly) -> Result<FpPoly> {
    discriminant_in_t_generic(fp, p, q)
}

/// `discriminant_in_t` by Chinese-remainder reconstruction: the pencil is
/// cleared to integer coefficients, its discriminant is computed modulo
/// word-sized primes with the same remainder sequence, and the integer
/// result is recovered once the prime product passes a rigorous bound on
/// the discriminant's coefficients (the product of the row 1-norms of the
/// Sylvester matrix dominates the permanent of the entrywise norm matrix,
/// hence every coefficient of the determinant). The answer is exactly the
/// direct route's, usually orders of magnitude faster on large pencils;
/// `discriminant_in_t` stays available as an independent cross-check.
pub fn discriminant_in_t_modular(p: &QPoly, q: &QPoly) -> Result<QPoly> {
    let ring = Rationals;
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidPolynomial("pencil needs nonzero numerator and denominator".into()));
    }
    if p.deg_i() <= q.deg_i() {
        return Err(Error::InvalidPolynomial(format!(
            "pencil requires deg p > deg q (got {} and {})",
            p.deg_i(),
            q.deg_i()
        )));
    }
    let g = p.gcd_fast(q)?;
    if g.degree() != Some(0) {
        return Err(Error::InvalidPolynomial(
            "numerator and denominator share a factor; the cover map is not reduced".into(),
        ));
    }
    let d = p.degree().unwrap();

    // One common scalar clears every denominator of both polynomials, so
    // the pencil keeps its branch values and the discriminant only gains
    // the constant factor L^(2d−2), removed again at the end.
    let mut l = BigInt::one();
    for c in p.coeffs.iter().chain(q.coeffs.iter()) {
        l = l.lcm(c.denom());
    }
    let scale_q = BigRational::from_integer(l.clone());
    let to_int = |c: &BigRational| (c * &scale_q).to_integer();
    let mut pz: Vec<BigInt> = p.coeffs.iter().map(to_int).collect();
    let mut qz: Vec<BigInt> = q.coeffs.iter().map(to_int).collect();
    pz.resize(d + 1, BigInt::zero());
    qz.resize(d + 1, BigInt::zero());

    // Row 1-norms of the Sylvester matrix of (A, dA/dX), A = P − tQ:
    // d−1 rows built from A and d rows built from A'.
    let mut row_a = BigInt::zero();
    let mut row_da = BigInt::zero();
    for i in 0..=d {
        let m = pz[i].abs() + qz[i].abs();
        row_da += BigInt::from(i as u64) * &m;
        row_a += m;
    }
    let bound = row_a.pow(d as u32 - 1) * row_da.pow(d as u32);
    let target = BigInt::from(2) * bound;

    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); 2 * d - 1];
    let mut candidate: u64 = (1u64 << 62) - 1;
    while modulus <= target {
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        let pr = candidate;
        candidate -= 2;
        if mod_u64(&pz[d], pr) == 0 {
            // the pencil would lose X-degree modulo this prime
            continue;
        }
        let fp = PrimeField::new(pr)?;
        let pf: FpPoly = Poly::from_coeffs(&fp, pz.iter().map(|c| mod_u64(c, pr)).collect());
        let qf: FpPoly = Poly::from_coeffs(&fp, qz.iter().map(|c| mod_u64(c, pr)).collect());
        // the rational-level gcd check above suffices; a spurious common
        // factor modulo one prime does not disturb reduction of the
        // discriminant, so go straight to the pencil
        let f = pencil(&fp, &pf, &qf);
        let pr_ring = PolyRing { base: fp };
        let dm = discriminant(&pr_ring, &f)?;
        if dm.deg_i() >= residues.len() as i64 {
            return Err(Error::InvalidPolynomial(
                "modular discriminant exceeded its degree bound".into(),
            ));
        }
        let m_mod = mod_u64(&modulus, pr);
        let m_inv = fp
            .inv(&m_mod)
            .expect("distinct primes keep the accumulated modulus invertible");
        for (j, r) in residues.iter_mut().enumerate() {
            let vj = if j < dm.coeffs.len() { dm.coeffs[j] } else { 0 };
            let rj = mod_u64(r, pr);
            let delta = ((vj + pr - rj) % pr) as u128 * m_inv as u128 % pr as u128;
            *r += &modulus * BigInt::from(delta as u64);
        }
        modulus *= BigInt::from(pr);
    }

    let scale = l.pow(2 * d as u32 - 2);
    let coeffs: Vec<BigRational> = residues
        .into_iter()
        .map(|r| {
            let v = if &r * BigInt::from(2) > modulus { r - &modulus } else { r };
            BigRational::new(v, scale.clone())
        })
        .collect();
    Ok(Poly::from_coeffs(&ring, coeffs))
}

fn mod_u64(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced residue fits u64")
}

fn discriminant_in_t_generic<F: Coefficients + Clone>(
    ring: &F,
    p: &Poly<F>,
    q: &Poly<F>,
) -> Result<Poly<F>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidPolynomial("pencil needs nonzero numerator and denominator".into()));
    }
    if p.deg_i() <= q.deg_i() {
        return Err(Error::InvalidPolynomial(format!(
            "pencil requires deg p > deg q (got {} and {})",
            p.deg_i(),
            q.deg_i()
        )));
    }
    let g = p.gcd(ring, q)?;
    if g.degree() != Some(0) {
        return Err(Error::InvalidPolynomial(
            "numerator and denominator share a factor; the cover map is not reduced".into(),
        ));
    }
    let f = pencil(ring, p, q);
    let pr = PolyRing { base: ring.clone() };
    discriminant(&pr, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn resultant_linear_is_evaluation() {
        let ring = Rationals;
        // res(X − a, g) = g(a)
        let g = QPoly::from_i64_coeffs(&[4, -3, 0, 2]); // 2X^3 - 3X + 4
        for a in [-3i64, 0, 1, 7] {
            let lin = QPoly::from_i64_coeffs(&[-a, 1]);
            let r = resultant(&ring, &lin, &g).unwrap();
            assert_eq!(r, g.evaluate(&ring, &q(a)));
        }
    }

    #[test]
    fn discriminant_quadratic_cubic() {
        let ring = Rationals;
        // disc(X^2 + bX + c) = b^2 − 4c
        for (b, c) in [(3i64, 2i64), (-5, 7), (0, -1)] {
            let f = QPoly::from_i64_coeffs(&[c, b, 1]);
            assert_eq!(discriminant(&ring, &f).unwrap(), q(b * b - 4 * c));
        }
        // disc(X^3 + pX + q) = −4p^3 − 27q^2
        for (p, qq) in [(1i64, 1i64), (-2, 3), (0, 5)] {
            let f = QPoly::from_i64_coeffs(&[qq, p, 0, 1]);
            assert_eq!(
                discriminant(&ring, &f).unwrap(),
                q(-4 * p * p * p - 27 * qq * qq)
            );
        }
    }

    #[test]
    fn discriminant_from_roots() {
        let ring = Rationals;
        // f = 2(X−1)(X−2)(X−4): disc = lc^(2d−2)·prod (ri−rj)^2 for i<j
        let f = QPoly::from_i64_coeffs(&[-1, 1])
            .mul(&ring, &QPoly::from_i64_coeffs(&[-2, 1]))
            .mul(&ring, &QPoly::from_i64_coeffs(&[-4, 1]))
            .scale(&ring, &q(2));
        let expect = 16i64 * (1 * 9 * 4); // 2^4 · (1·9·4)
        assert_eq!(discriminant(&ring, &f).unwrap(), q(expect));
    }

    #[test]
    fn resultant_multiplicative_in_factors() {
        let ring = Rationals;
        let f = QPoly::from_i64_coeffs(&[1, 0, 1]); // X^2+1
        let g = QPoly::from_i64_coeffs(&[-2, 0, 1]); // X^2-2
        let h = QPoly::from_i64_coeffs(&[1, 3]); // 3X+1
        let fg = f.mul(&ring, &g);
        let lhs = resultant(&ring, &fg, &h).unwrap();
        let rhs = ring.mul(
            &resultant(&ring, &f, &h).unwrap(),
            &resultant(&ring, &g, &h).unwrap(),
        );
        assert_eq!(lhs, rhs);
        // swap antisymmetry: res(f,h) = (−1)^(deg f · deg h) res(h,f)
        let a = resultant(&ring, &f, &h).unwrap();
        let b = resultant(&ring, &h, &f).unwrap();
        assert_eq!(a, b); // 2·1 even
        let c = resultant(&ring, &h, &g).unwrap();
        let d = resultant(&ring, &g, &h).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn shared_root_gives_zero() {
        let ring = Rationals;
        let f = QPoly::from_i64_coeffs(&[-1, 1]).mul(&ring, &QPoly::from_i64_coeffs(&[1, 0, 1]));
        let g = QPoly::from_i64_coeffs(&[-1, 1]).mul(&ring, &QPoly::from_i64_coeffs(&[3, 1]));
        assert_eq!(resultant(&ring, &f, &g).unwrap(), q(0));
        let sq = QPoly::from_i64_coeffs(&[-1, 1]).pow(&ring, 2);
        assert_eq!(discriminant(&ring, &sq).unwrap(), q(0));
    }

    #[test]
    fn pencil_discriminants() {
        // disc_X(X^2 − t) = 4t
        let p = QPoly::from_i64_coeffs(&[0, 0, 1]);
        let qq = QPoly::from_i64_coeffs(&[1]);
        let d = discriminant_in_t(&p, &qq).unwrap();
        assert_eq!(d, QPoly::from_i64_coeffs(&[0, 4]));
        // disc_X(X^3 − t) = −27t^2
        let p = QPoly::from_i64_coeffs(&[0, 0, 0, 1]);
        let d = discriminant_in_t(&p, &qq).unwrap();
        assert_eq!(d, QPoly::from_i64_coeffs(&[0, 0, -27]));
        // disc_X(X^3 − 3X − t): −4(−3)^3 − 27 t^2 = 108 − 27t^2
        let p = QPoly::from_i64_coeffs(&[0, -3, 0, 1]);
        let d = discriminant_in_t(&p, &qq).unwrap();
        assert_eq!(d, QPoly::from_i64_coeffs(&[108, 0, -27]));
        // rational map: p = X^2, q = X + 1: f = X^2 − tX − t,
        // disc = t^2 + 4t
        let p = QPoly::from_i64_coeffs(&[0, 0, 1]);
        let qq = QPoly::from_i64_coeffs(&[1, 1]);
        let d = discriminant_in_t(&p, &qq).unwrap();
        assert_eq!(d, QPoly::from_i64_coeffs(&[0, 4, 1]));
    }

    #[test]
    fn modular_route_matches_direct() {
        let ring = Rationals;
        // small pencils
        let cases: Vec<(QPoly, QPoly)> = vec![
            (QPoly::from_i64_coeffs(&[0, 0, 1]), QPoly::from_i64_coeffs(&[1])),
            (QPoly::from_i64_coeffs(&[0, -3, 0, 1]), QPoly::from_i64_coeffs(&[1])),
            (QPoly::from_i64_coeffs(&[0, 0, 1]), QPoly::from_i64_coeffs(&[1, 1])),
        ];
        for (p, qq) in &cases {
            assert_eq!(
                discriminant_in_t_modular(p, qq).unwrap(),
                discriminant_in_t(p, qq).unwrap()
            );
        }
        // a mid-size pencil with genuine denominators on both sides:
        // p = (X^3 − (3/2)X + 1)^2 · (X^2 + 5/3),  q = (X^2 − 2)^3
        let half3 = BigRational::new(BigInt::from(-3), BigInt::from(2));
        let third5 = BigRational::new(BigInt::from(5), BigInt::from(3));
        let cubic = QPoly::from_coeffs(
            &ring,
            vec![q(1), half3, q(0), q(1)],
        );
        let p = cubic.pow(&ring, 2).mul(
            &ring,
            &QPoly::from_coeffs(&ring, vec![third5, q(0), q(1)]),
        );
        let qq = QPoly::from_i64_coeffs(&[-2, 0, 1]).pow(&ring, 3);
        let direct = discriminant_in_t(&p, &qq).unwrap();
        let modular = discriminant_in_t_modular(&p, &qq).unwrap();
        assert_eq!(direct, modular);
        assert!(direct.degree().unwrap() >= 8);
    }

    #[test]
    fn pencil_rejects_bad_inputs() {
        let p = QPoly::from_i64_coeffs(&[0, 0, 1]);
        let shared = QPoly::from_i64_coeffs(&[0, 1]);
        assert!(discriminant_in_t(&p, &shared).is_err()); // gcd = X
        let qq = QPoly::from_i64_coeffs(&[0, 0, 7, 1]);
        assert!(discriminant_in_t(&p, &qq).is_err()); // deg q >= deg p
    }

    #[test]
    fn prime_field_resultants() {
        let fp = PrimeField::new(31).unwrap();
        let f = Poly::from_coeffs(&fp, vec![2, 3, 1]);
        let g = Poly::from_coeffs(&fp, vec![5, 1]);
        // res(f, X+5) = f(−5) · sign (even product) = f(26)
        let r = resultant(&fp, &f, &g).unwrap();
        assert_eq!(r, f.evaluate(&fp, &26));
        let d = discriminant_in_t_fp(&fp, &Poly::from_coeffs(&fp, vec![0, 0, 1]), &Poly::one(&fp))
            .unwrap();
        assert_eq!(d, Poly::from_coeffs(&fp, vec![0, 4]));
    }
}
