//! X-degrees of the irreducible factors of the two-variable difference
//! polynomial `f₁(X)f₂(Y) − f₂(X)f₁(Y)` of a cover `f₁/f₂`, computed over
//! a prime field without bivariate factorization: Y is specialized to many
//! values of F_p, each specialization is factored univariately, and the
//! bivariate factor degrees are reconstructed as the join of the sampled
//! degree multisets in the partition lattice.
//!
//! Each specialization's factor-degree multiset is the cycle type of a
//! Frobenius element acting on the roots, so it refines the partition of
//! the degree given by the irreducible factors over F_p(Y); a sample never
//! lies — it can only fail to force enough merging. The minimal common
//! coarsening of the samples is therefore accepted only once it has been
//! confirmed, unchanged and unique, by several consecutive
//! specializations; degenerate specializations (on the branch locus) are
//! skipped and retried up to a bound.

use super::factor::factor_fp;
use super::field::{Coefficients, PrimeField};
use super::poly::QPoly;
use super::profile::check_cover;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Tuning for [`subcover_factor_degrees_with`].
#[derive(Clone, Debug)]
pub struct SubcoverOptions {
    /// The prime field the factor degrees are computed over.
    pub prime: u64,
    /// Consecutive specializations that must confirm the same multiset
    /// before it is accepted (the contract requires at least three).
    pub required_matches: usize,
    /// Total Y-values that may be tried before giving up.
    pub max_attempts: usize,
    /// Seed for the randomized equal-degree splitting in factorization.
    pub seed: u64,
    /// Node budget for the partition-lattice searches of one join step; a
    /// step that exhausts it is discarded and the specialization retried.
    pub search_budget: u64,
}

impl Default for SubcoverOptions {
    fn default() -> Self {
        SubcoverOptions {
            prime: 31,
            required_matches: 5,
            max_attempts: 64,
            seed: 1,
            search_budget: 500_000,
        }
    }
}

/// X-degrees (ascending, with multiplicity) of the irreducible factors of
/// `f₁(X)f₂(Y) − f₂(X)f₁(Y)` over F₃₁(Y), with the default options.
pub fn subcover_factor_degrees(f1: &QPoly, f2: &QPoly) -> Result<Vec<usize>> {
    subcover_factor_degrees_with(f1, f2, &SubcoverOptions::default())
}

/// [`subcover_factor_degrees`] with explicit options.
pub fn subcover_factor_degrees_with(
    f1: &QPoly,
    f2: &QPoly,
    opts: &SubcoverOptions,
) -> Result<Vec<usize>> {
    let n = check_cover(f1, f2)?;
    if opts.required_matches == 0 {
        return Err(Error::Config(
            "subcover consistency requires at least one matching specialization".into(),
        ));
    }
    let fp = PrimeField::new(opts.prime)?;
    let p1 = f1.reduce_mod(&fp).map_err(|_| bad_prime(opts.prime, "coefficient denominator"))?;
    let p2 = f2.reduce_mod(&fp).map_err(|_| bad_prime(opts.prime, "coefficient denominator"))?;
    if p1.degree() != f1.degree() || p2.degree() != f2.degree() {
        return Err(bad_prime(opts.prime, "leading coefficient"));
    }
    let mut cands: Vec<Vec<usize>> = Vec::new();
    let mut last: Option<Vec<usize>> = None;
    let mut streak = 0usize;
    let mut attempts = 0usize;
    let mut skipped = 0usize;
    // Specialize Y at the nonzero residues in turn; each admissible
    // specialization contributes one Frobenius cycle type.
    for y0 in 1..opts.prime {
        if attempts >= opts.max_attempts {
            break;
        }
        attempts += 1;
        let y = fp.reduce_i64(y0 as i64);
        let f2y = p2.evaluate(&fp, &y);
        if fp.is_zero(&f2y) {
            skipped += 1;
            continue;
        }
        let f1y = p1.evaluate(&fp, &y);
        // g(X) = f₁(X)f₂(y₀) − f₂(X)f₁(y₀); deg g = deg f₁ because
        // deg f₂ < deg f₁ and f₂(y₀) ≠ 0.
        let g = p1.scale(&fp, &f2y).sub(&fp, &p2.scale(&fp, &f1y));
        debug_assert_eq!(g.degree(), Some(n));
        let deriv = g.derivative(&fp);
        if deriv.is_zero() || g.gcd(&fp, &deriv)?.degree() != Some(0) {
            skipped += 1; // branch-locus residue: inseparable specialization
            continue;
        }
        let factors = factor_fp(&fp, &g, opts.seed)?;
        let mut sample: Vec<usize> =
            factors.iter().map(|(f, _)| f.degree().unwrap_or(0)).collect();
        sample.sort_unstable_by(|a, b| b.cmp(a));
        let mut budget = opts.search_budget;
        match fold_sample(cands.clone(), &sample, &mut budget) {
            Ok(next) => cands = next,
            Err(Error::BudgetExceeded { .. }) => {
                skipped += 1; // pathological sample; the join stays sound without it
                continue;
            }
            Err(e) => return Err(e),
        }
        if cands.len() == 1 {
            if last.as_ref() == Some(&cands[0]) {
                streak += 1;
            } else {
                last = Some(cands[0].clone());
                streak = 1;
            }
            if streak >= opts.required_matches {
                let mut out = cands[0].clone();
                out.sort_unstable();
                return Ok(out);
            }
        } else {
            last = None;
            streak = 0;
        }
    }
    Err(Error::InconsistentSpecializations(format!(
        "factor degrees did not stabilize over F_{}: {} specializations tried ({} skipped as \
         degenerate), {} consecutive confirmations required but best streak ended at {}",
        opts.prime, attempts, skipped, opts.required_matches, streak
    )))
}

fn bad_prime(p: u64, what: &str) -> Error {
    Error::InvalidPolynomial(format!("prime {p} divides a {what} of the cover"))
}

// ---------------------------------------------------------------------------
// Partition-lattice machinery
// ---------------------------------------------------------------------------
//
// Partitions are descending Vec<usize>. "fine ⊑ coarse" means the parts of
// `fine` can be grouped so the group sums are exactly the parts of
// `coarse`; every factor-degree sample of the specializations refines the
// factor-degree partition over F_p(Y).

/// Fold one sample into the antichain of minimal common coarsenings of all
/// samples so far (empty antichain = no samples yet).
fn fold_sample(
    cands: Vec<Vec<usize>>,
    sample: &[usize],
    budget: &mut u64,
) -> Result<Vec<Vec<usize>>> {
    if cands.is_empty() {
        return Ok(vec![sample.to_vec()]);
    }
    // Every minimal common coarsening of {all samples so far} ∪ {sample}
    // coarsens some current minimal candidate, so joining each candidate
    // with the sample and keeping the minimal results is exhaustive.
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in &cands {
        if refines_onto(sample, c, budget)? {
            // The candidate already absorbs the sample.
            all.insert(c.clone());
            continue;
        }
        for t in min_common_coarsenings(c, sample, budget)? {
            all.insert(t);
        }
    }
    let list: Vec<Vec<usize>> = all.into_iter().collect();
    let mut minimal = Vec::new();
    'outer: for (i, t) in list.iter().enumerate() {
        for (j, s) in list.iter().enumerate() {
            if i != j && s != t && refines_onto(s, t, budget)? {
                // A strictly finer common coarsening exists; t is not minimal.
                continue 'outer;
            }
        }
        minimal.push(t.clone());
    }
    if minimal.len() > 256 {
        return Err(Error::BudgetExceeded { what: "partition join antichain".into(), budget: 256 });
    }
    Ok(minimal)
}

/// Can the parts of `fine` be grouped to sum to the parts of `coarse`?
fn refines_onto(fine: &[usize], coarse: &[usize], budget: &mut u64) -> Result<bool> {
    if fine.iter().sum::<usize>() != coarse.iter().sum::<usize>() {
        return Ok(false);
    }
    if fine.len() < coarse.len() {
        return Ok(false);
    }
    let mut items = fine.to_vec();
    items.sort_unstable_by(|a, b| b.cmp(a));
    let mut caps = coarse.to_vec();
    caps.sort_unstable_by(|a, b| b.cmp(a));
    fn place(items: &[usize], caps: &mut Vec<usize>, budget: &mut u64) -> Result<bool> {
        if *budget == 0 {
            return Err(Error::BudgetExceeded {
                what: "partition refinement search".into(),
                budget: 0,
            });
        }
        *budget -= 1;
        let Some((&item, rest)) = items.split_first() else {
            return Ok(caps.iter().all(|&c| c == 0));
        };
        let mut tried: Vec<usize> = Vec::new();
        for i in 0..caps.len() {
            let cap = caps[i];
            if cap < item || tried.contains(&cap) {
                continue;
            }
            tried.push(cap);
            caps[i] = cap - item;
            if place(rest, caps, budget)? {
                caps[i] = cap;
                return Ok(true);
            }
            caps[i] = cap;
        }
        Ok(false)
    }
    place(&items, &mut caps, budget)
}

/// All minimal common coarsenings of two partitions of the same total.
///
/// Blocks are assembled by a canonical search: the block containing the
/// largest remaining part is enumerated first (every balanced sub-multiset
/// pair through that part is a candidate block), so each grouping into
/// balanced blocks arises exactly once; non-minimal results are filtered
/// at the end.
fn min_common_coarsenings(a: &[usize], b: &[usize], budget: &mut u64) -> Result<Vec<Vec<usize>>> {
    debug_assert_eq!(a.iter().sum::<usize>(), b.iter().sum::<usize>());
    let ca = counts(a);
    let cb = counts(b);
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut blocks: Vec<usize> = Vec::new();
    assemble(&ca, &cb, &mut blocks, &mut out, budget)?;
    let list: Vec<Vec<usize>> = out.into_iter().collect();
    let mut minimal = Vec::new();
    'outer: for (i, t) in list.iter().enumerate() {
        for (j, s) in list.iter().enumerate() {
            if i != j && s != t && refines_onto(s, t, budget)? {
                continue 'outer;
            }
        }
        minimal.push(t.clone());
    }
    Ok(minimal)
}

/// Value-count form of a partition: descending distinct values with counts.
fn counts(p: &[usize]) -> Vec<(usize, usize)> {
    let mut v = p.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    let mut out: Vec<(usize, usize)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some((val, c)) if *val == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

fn total(c: &[(usize, usize)]) -> usize {
    c.iter().map(|&(v, n)| v * n).sum()
}

/// Recursive block assembly over value-count remainders.
fn assemble(
    ra: &[(usize, usize)],
    rb: &[(usize, usize)],
    blocks: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
    budget: &mut u64,
) -> Result<()> {
    if total(ra) == 0 {
        let mut t = blocks.clone();
        t.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(t);
        return Ok(());
    }
    // Seed part: the largest value remaining on either side.
    let max_a = ra.iter().find(|&&(_, n)| n > 0).map(|&(v, _)| v).unwrap_or(0);
    let max_b = rb.iter().find(|&&(_, n)| n > 0).map(|&(v, _)| v).unwrap_or(0);
    let seed_on_a = max_a >= max_b;
    let (sa, sb, seed) = if seed_on_a { (ra, rb, max_a) } else { (rb, ra, max_b) };
    let seed_idx = sa.iter().position(|&(v, _)| v == seed).unwrap();
    let na = sa.len();
    let nb = sb.len();
    // Enumerate the balanced sub-multiset pairs containing the seed part by
    // walking (counts taken from each side), driven by the running sum
    // difference and deduplicated by state.
    let mut start_a = vec![0usize; na];
    start_a[seed_idx] = 1;
    let start = (start_a, vec![0usize; nb]);
    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let mut queue: Vec<(Vec<usize>, Vec<usize>)> = vec![start.clone()];
    seen.insert(start);
    let mut balanced: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    while let Some(state) = queue.pop() {
        if *budget == 0 {
            return Err(Error::BudgetExceeded {
                what: "balanced block enumeration".into(),
                budget: 0,
            });
        }
        *budget -= 1;
        let (ta, tb) = &state;
        let suma: usize = ta.iter().zip(sa).map(|(&c, &(v, _))| c * v).sum();
        let sumb: usize = tb.iter().zip(sb).map(|(&c, &(v, _))| c * v).sum();
        if suma == sumb {
            balanced.push(state.clone());
            // A balanced pair may still grow into a coarser balanced pair;
            // extend by one seed-side part to keep the walk canonical.
            for i in 0..na {
                if ta[i] < sa[i].1 {
                    let mut nxt = state.clone();
                    nxt.0[i] += 1;
                    if seen.insert(nxt.clone()) {
                        queue.push(nxt);
                    }
                }
            }
        } else if suma > sumb {
            for j in 0..nb {
                if tb[j] < sb[j].1 {
                    let mut nxt = state.clone();
                    nxt.1[j] += 1;
                    if seen.insert(nxt.clone()) {
                        queue.push(nxt);
                    }
                }
            }
        } else {
            for i in 0..na {
                if ta[i] < sa[i].1 {
                    let mut nxt = state.clone();
                    nxt.0[i] += 1;
                    if seen.insert(nxt.clone()) {
                        queue.push(nxt);
                    }
                }
            }
        }
    }
    for (ta, tb) in balanced {
        let block_sum: usize = ta.iter().zip(sa).map(|(&c, &(v, _))| c * v).sum();
        let next_sa: Vec<(usize, usize)> =
            sa.iter().zip(&ta).map(|(&(v, n), &c)| (v, n - c)).collect();
        let next_sb: Vec<(usize, usize)> =
            sb.iter().zip(&tb).map(|(&(v, n), &c)| (v, n - c)).collect();
        blocks.push(block_sum);
        let (next_ra, next_rb) =
            if seed_on_a { (&next_sa, &next_sb) } else { (&next_sb, &next_sa) };
        assemble(next_ra, next_rb, blocks, out, budget)?;
        blocks.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::Rationals;

    fn mcc(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
        let mut budget = 1_000_000u64;
        min_common_coarsenings(a, b, &mut budget).unwrap()
    }

    fn ro(fine: &[usize], coarse: &[usize]) -> bool {
        let mut budget = 1_000_000u64;
        refines_onto(fine, coarse, &mut budget).unwrap()
    }

    #[test]
    fn refinement_checks() {
        assert!(ro(&[2, 1, 1], &[2, 2]));
        assert!(ro(&[2, 1, 1], &[4]));
        assert!(ro(&[4], &[4]));
        assert!(!ro(&[3, 1], &[2, 2]));
        assert!(!ro(&[2, 2], &[3, 1]));
        assert!(!ro(&[2, 1], &[4]));
        assert!(ro(&[1, 1, 1, 1, 1, 1], &[4, 2]));
        assert!(!ro(&[5, 1], &[3, 3]));
    }

    #[test]
    fn pairwise_joins() {
        // 3+1 vs 2+2 can only merge completely.
        assert_eq!(mcc(&[3, 1], &[2, 2]), vec![vec![4]]);
        // 2+1+1 vs 2+2: group the two 1s.
        assert_eq!(mcc(&[2, 1, 1], &[2, 2]), vec![vec![2, 2]]);
        // Identical partitions join to themselves.
        assert_eq!(mcc(&[4, 2, 1], &[4, 2, 1]), vec![vec![4, 2, 1]]);
        // 4+1+1 vs 3+3 has no proper balanced split.
        assert_eq!(mcc(&[4, 1, 1], &[3, 3]), vec![vec![6]]);
        // 12+4 vs 10+6 inside a 16-point orbit.
        assert_eq!(mcc(&[12, 4], &[10, 6]), vec![vec![16]]);
    }

    #[test]
    fn join_reaches_orbit_partition() {
        // Cycle types sampled from ⟨(1234),(5678)⟩, which has two 4-orbits:
        // the stable join is {4,4}.
        let samples: Vec<Vec<usize>> = vec![
            vec![4, 1, 1, 1, 1],
            vec![1, 1, 1, 1, 4],
            vec![4, 4],
            vec![2, 2, 2, 2],
            vec![4, 2, 2],
            vec![2, 1, 1, 2, 1, 1],
        ];
        let mut budget = 1_000_000u64;
        let mut cands: Vec<Vec<usize>> = Vec::new();
        for s in &samples {
            let mut sorted = s.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            cands = fold_sample(cands, &sorted, &mut budget).unwrap();
        }
        assert_eq!(cands, vec![vec![4, 4]]);
    }

    #[test]
    fn quadratic_cover_splits() {
        // X² − t: (X − Y)(X + Y).
        let p = QPoly::from_i64_coeffs(&[0, 0, 1]);
        let one = QPoly::from_i64_coeffs(&[1]);
        assert_eq!(subcover_factor_degrees(&p, &one).unwrap(), vec![1, 1]);
    }

    #[test]
    fn power_covers_match_cyclotomic_factorization() {
        // Xⁿ − t: X-degrees of Xⁿ − Yⁿ over F₃₁(Y) follow the splitting of
        // the cyclotomic polynomials Φ_d (d | n) over F₃₁: φ(d)/e copies of
        // e, where e is the multiplicative order of 31 mod d.
        for n in [3usize, 4, 6, 8, 12] {
            let mut coeffs = vec![0i64; n + 1];
            coeffs[n] = 1;
            let p = QPoly::from_i64_coeffs(&coeffs);
            let one = QPoly::from_i64_coeffs(&[1]);
            let mut expect: Vec<usize> = Vec::new();
            for d in divisors(n) {
                let e = mult_order(31, d);
                for _ in 0..phi(d) / e {
                    expect.push(e);
                }
            }
            expect.sort_unstable();
            let got = subcover_factor_degrees(&p, &one).unwrap();
            assert_eq!(got, expect, "n = {n}");
        }
    }

    #[test]
    fn split_samples_join_to_bivariate_degrees() {
        // f₁ = (X²−1)², whose difference polynomial factors over F₃₁(Y) as
        // (X−Y)(X+Y)(X²+Y²−2): specializations where 2−y₀² is a square
        // sample {1,1,1,1} and the others {1,1,2}; the join must settle on
        // {1,1,2}.
        let x2m1 = QPoly::from_i64_coeffs(&[-1, 0, 1]);
        let p = x2m1.mul(&Rationals, &x2m1);
        let one = QPoly::from_i64_coeffs(&[1]);
        assert_eq!(subcover_factor_degrees(&p, &one).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn rejects_primes_meeting_the_coefficients() {
        let one = QPoly::from_i64_coeffs(&[1]);
        // Leading coefficient divisible by the prime.
        let p = QPoly::from_i64_coeffs(&[1, 0, 31]);
        let err = subcover_factor_degrees(&p, &one).unwrap_err();
        assert!(matches!(err, Error::InvalidPolynomial(_)), "{err}");
        // Denominator divisible by the prime.
        let q = QPoly::from_coeffs(
            &Rationals,
            vec![
                num_rational::BigRational::new(1.into(), 31.into()),
                num_rational::BigRational::from_integer(0.into()),
                num_rational::BigRational::from_integer(1.into()),
            ],
        );
        let err = subcover_factor_degrees(&q, &one).unwrap_err();
        assert!(matches!(err, Error::InvalidPolynomial(_)), "{err}");
    }

    #[test]
    fn exhausted_specializations_are_reported() {
        // Over F₃ every specialization of X³ − t is a cube, hence
        // inseparable: nothing can stabilize.
        let p = QPoly::from_i64_coeffs(&[0, 0, 0, 1]);
        let one = QPoly::from_i64_coeffs(&[1]);
        let opts = SubcoverOptions { prime: 3, ..SubcoverOptions::default() };
        let err = subcover_factor_degrees_with(&p, &one, &opts).unwrap_err();
        assert!(matches!(err, Error::InconsistentSpecializations(_)), "{err}");
    }

    fn divisors(n: usize) -> Vec<usize> {
        (1..=n).filter(|d| n % d == 0).collect()
    }

    fn phi(n: usize) -> usize {
        (1..=n).filter(|&k| gcd(k, n) == 1).count()
    }

    fn mult_order(p: usize, d: usize) -> usize {
        if d == 1 {
            return 1;
        }
        let base = p % d;
        assert_eq!(gcd(base, d), 1);
        let mut acc = base % d;
        let mut e = 1;
        while acc != 1 {
            acc = acc * base % d;
            e += 1;
        }
        e
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}
