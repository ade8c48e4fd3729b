//! Permutations on `{1, …, n}` and cycle types.
//!
//! Points are 1-based in every textual form (cycle notation, error messages)
//! and 0-based in the internal image table. The composition convention is
//! **right-to-left**: `(p ∘ q)(i) = p(q(i))`, so `p.compose(&q)` applies `q`
//! first. Conjugation is `conj(g, x) = g ∘ x ∘ g⁻¹`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}`, stored as a 0-based image table.
///
/// Ordering and equality are lexicographic on the image table, which makes
/// "minimal conjugate" canonical forms well defined.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    /// Maximum supported degree (image tables are `u16`).
    pub const MAX_DEGREE: usize = u16::MAX as usize;

    /// Identity permutation on `degree` points.
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= Self::MAX_DEGREE, "degree too large");
        Permutation { images: (0..degree as u16).collect() }
    }

    /// Build from a 0-based image table, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        if n > Self::MAX_DEGREE {
            return Err(Error::NotAPermutation(format!("degree {n} exceeds {}", Self::MAX_DEGREE)));
        }
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n {
                return Err(Error::NotAPermutation(format!(
                    "image {} out of range for degree {n}",
                    im + 1
                )));
            }
            if seen[im] {
                return Err(Error::NotAPermutation(format!("image {} repeated", im + 1)));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from a list of disjoint cycles over 1-based points.
    ///
    /// Cycles need not be disjoint for this to be rejected cleanly: any
    /// repeated point is an error. Points must lie in `1..=degree`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        assert!(degree <= Self::MAX_DEGREE, "degree too large");
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(Error::PointOutOfRange { point: pt, degree });
                }
                if seen[pt - 1] {
                    return Err(Error::NotAPermutation(format!("point {pt} appears twice")));
                }
                seen[pt - 1] = true;
            }
            for k in 0..cycle.len() {
                let from = cycle[k] - 1;
                let to = cycle[(k + 1) % cycle.len()] - 1;
                images[from] = to as u16;
            }
        }
        Ok(Permutation { images })
    }

    /// Number of points acted on.
    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn image0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// Image of the 1-based point `p`.
    #[inline]
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    /// The raw 0-based image table.
    #[inline]
    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// True if every point is fixed.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| im as usize == i)
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        let images = other.images.iter().map(|&q| self.images[q as usize]).collect();
        Permutation { images }
    }

    /// In-place composition into a caller-provided buffer (hot paths).
    #[inline]
    pub fn compose_into(&self, other: &Permutation, out: &mut Vec<u16>) {
        out.clear();
        out.extend(other.images.iter().map(|&q| self.images[q as usize]));
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u16;
        }
        Permutation { images }
    }

    /// `self` raised to the power `k` (negative allowed).
    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.degree();
        if n == 0 {
            return self.clone();
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = sq.compose(&acc);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Conjugate `g ∘ self ∘ g⁻¹` without forming `g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        assert_eq!(self.degree(), g.degree(), "degree mismatch in conjugate");
        let mut images = vec![0u16; self.degree()];
        for i in 0..self.degree() {
            images[g.images[i] as usize] = g.images[self.images[i] as usize];
        }
        Permutation { images }
    }

    /// True if `self` and `other` commute.
    pub fn commutes_with(&self, other: &Permutation) -> bool {
        let n = self.degree();
        (0..n).all(|i| {
            self.images[other.images[i] as usize] == other.images[self.images[i] as usize]
        })
    }

    /// Disjoint cycles, 0-based, each starting at its smallest point,
    /// ordered by smallest point; fixed points omitted.
    pub fn cycles0(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Points moved by the permutation (0-based).
    pub fn support0(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.images[i] as usize != i).collect()
    }

    /// Number of fixed points.
    pub fn fixed_points(&self) -> usize {
        (0..self.degree()).filter(|&i| self.images[i] as usize == i).count()
    }

    /// Cycle type including fixed points as parts of size 1.
    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            lens.push(len as u32);
        }
        CycleType::from_lengths(&lens)
    }

    /// Order of the permutation (lcm of cycle lengths).
    ///
    /// Errors with [`Error::OrderOverflow`] if the lcm exceeds `u128`.
    pub fn order(&self) -> Result<u128> {
        let mut ord: u128 = 1;
        for (len, _) in self.cycle_type().parts() {
            let len = *len as u128;
            let g = gcd_u128(ord, len);
            ord = ord
                .checked_mul(len / g)
                .ok_or_else(|| Error::OrderOverflow("element order exceeds u128".into()))?;
        }
        Ok(ord)
    }

    /// Sum over cycles of (length − 1); the index in Riemann–Hurwitz counts.
    pub fn index(&self) -> usize {
        self.degree() - self.cycle_type().parts().iter().map(|&(_, m)| m as usize).sum::<usize>()
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 { a } else { gcd_u128(b, a % b) }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation over 1-based points, e.g. `(1,20)(3,6)`.
    /// The identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles0();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse disjoint cycle notation such as `(1,55,27)(3,34,6)` for a known
/// degree. Whitespace between cycles and after commas is allowed. `()`
/// denotes the identity.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::NotAPermutation(format!("expected '(' at {rest:.12}…")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::NotAPermutation("unclosed cycle".into()))?;
        let inner = &rest[1..close];
        let inner = inner.trim();
        if !inner.is_empty() {
            let mut cycle = Vec::new();
            for part in inner.split(',') {
                let pt: usize = part.trim().parse().map_err(|_| {
                    Error::NotAPermutation(format!("bad point {:?} in cycle", part.trim()))
                })?;
                cycle.push(pt);
            }
            if cycle.len() == 1 {
                return Err(Error::NotAPermutation(format!(
                    "singleton cycle ({}) is not allowed",
                    cycle[0]
                )));
            }
            cycles.push(cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles)
}

/// The multiset of cycle lengths of a permutation, including 1-cycles.
///
/// Text form lists parts in **descending** length as `len^mult` with `^1`
/// omitted and parts joined by `.`, e.g. `2^6.1^15`, `7^4`, `15.12^2.9.8.7^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    /// `(length, multiplicity)` pairs, lengths strictly descending.
    parts: Vec<(u32, u32)>,
}

impl CycleType {
    /// Build from an unordered list of cycle lengths.
    pub fn from_lengths(lengths: &[u32]) -> Self {
        let mut sorted: Vec<u32> = lengths.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<(u32, u32)> = Vec::new();
        for len in sorted {
            match parts.last_mut() {
                Some((l, m)) if *l == len => *m += 1,
                _ => parts.push((len, 1)),
            }
        }
        CycleType { parts }
    }

    /// `(length, multiplicity)` pairs, lengths strictly descending.
    pub fn parts(&self) -> &[(u32, u32)] {
        &self.parts
    }

    /// Total number of points `Σ length · multiplicity`.
    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&(l, m)| l as usize * m as usize).sum()
    }

    /// Number of cycles `Σ multiplicity` (1-cycles included).
    pub fn num_cycles(&self) -> usize {
        self.parts.iter().map(|&(_, m)| m as usize).sum()
    }

    /// `degree − num_cycles`; the ramification index contribution.
    pub fn index(&self) -> usize {
        self.degree() - self.num_cycles()
    }

    /// Least common multiple of the part lengths (element order).
    pub fn order(&self) -> Result<u128> {
        let mut ord: u128 = 1;
        for &(l, _) in &self.parts {
            let l = l as u128;
            let g = gcd_u128(ord, l);
            ord = ord
                .checked_mul(l / g)
                .ok_or_else(|| Error::OrderOverflow("cycle-type order exceeds u128".into()))?;
        }
        Ok(ord)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1^0");
        }
        for (k, &(l, m)) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            if m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::NotAPermutation("empty cycle type".into()));
        }
        let mut parts: Vec<(u32, u32)> = Vec::new();
        for piece in s.split('.') {
            let (len_s, mult_s) = match piece.split_once('^') {
                Some((a, b)) => (a, Some(b)),
                None => (piece, None),
            };
            let len: u32 = len_s
                .trim()
                .parse()
                .map_err(|_| Error::NotAPermutation(format!("bad cycle length {len_s:?}")))?;
            let mult: u32 = match mult_s {
                Some(m) => m
                    .trim()
                    .parse()
                    .map_err(|_| Error::NotAPermutation(format!("bad multiplicity {m:?}")))?,
                None => 1,
            };
            if len == 0 || mult == 0 {
                return Err(Error::NotAPermutation("zero length or multiplicity".into()));
            }
            if let Some(&(prev, _)) = parts.last() {
                if len >= prev {
                    return Err(Error::NotAPermutation(format!(
                        "cycle type parts must strictly descend, got {len} after {prev}"
                    )));
                }
            }
            parts.push((len, mult));
        }
        Ok(CycleType { parts })
    }
}

impl PartialOrd for CycleType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycleType {
    /// Order by degree, then lexicographically on the descending part list;
    /// a total order usable for sorted reports.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.parts.cmp(&other.parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(degree: usize, text: &str) -> Permutation {
        parse_cycles(degree, text).unwrap()
    }

    #[test]
    fn compose_is_right_to_left() {
        // (1 2) ∘ (1 3): apply (1 3) first. 1→3→3, 3→1→2, 2→2→1 = (1,3,2).
        let a = p(3, "(1,2)");
        let b = p(3, "(1,3)");
        assert_eq!(a.compose(&b).to_string(), "(1,3,2)");
        assert_eq!(b.compose(&a).to_string(), "(1,2,3)");
    }

    #[test]
    fn inverse_and_pow() {
        let c = p(5, "(1,2,3,4,5)");
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(c.pow(5), Permutation::identity(5));
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.pow(3), c.compose(&c).compose(&c));
        assert_eq!(c.pow(0), Permutation::identity(5));
    }

    #[test]
    fn conjugation_convention() {
        let x = p(4, "(1,2)");
        let g = p(4, "(1,3)(2,4)");
        let expect = g.compose(&x).compose(&g.inverse());
        assert_eq!(x.conjugate_by(&g), expect);
        assert_eq!(x.conjugate_by(&g).to_string(), "(3,4)");
    }

    #[test]
    fn cycle_notation_round_trip() {
        let text = "(1,20)(3,6)(4,21)(5,15)";
        let x = p(22, text);
        assert_eq!(x.to_string(), text);
        assert_eq!(p(4, "()"), Permutation::identity(4));
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(parse_cycles(3, "(1,4)").is_err());
        assert!(parse_cycles(3, "(1,1)").is_err());
        assert!(parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(parse_cycles(3, "(1,2").is_err());
        assert!(parse_cycles(3, "(2)").is_err());
        assert!(parse_cycles(3, "1,2").is_err());
    }

    #[test]
    fn cycle_type_text_forms() {
        let x = p(28, "(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)(13,14,15)");
        assert_eq!(x.cycle_type().to_string(), "3.2^6.1^13");
        let t: CycleType = "3.2^6.1^13".parse().unwrap();
        assert_eq!(t, x.cycle_type());
        assert_eq!(t.degree(), 28);
        assert_eq!(t.index(), 8);
        let seven: CycleType = "7^4".parse().unwrap();
        assert_eq!(seven.degree(), 28);
        assert_eq!(seven.order().unwrap(), 7);
        assert!("2^2.3".parse::<CycleType>().is_err());
        assert!("0^2".parse::<CycleType>().is_err());
        assert!("".parse::<CycleType>().is_err());
    }

    #[test]
    fn order_and_index() {
        let x = p(9, "(1,2,3,4,5,6)(7,8,9)");
        assert_eq!(x.order().unwrap(), 6);
        assert_eq!(x.index(), 7);
        assert_eq!(Permutation::identity(5).order().unwrap(), 1);
        assert_eq!(Permutation::identity(5).cycle_type().to_string(), "1^5");
    }

    #[test]
    fn images_validation() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![2, 0]).is_err());
        assert!(Permutation::from_images(vec![1, 0]).is_ok());
    }
}
