//! The Artin braid action on generating tuples, braid orbits on inner
//! classes, and cycle types of braid words acting on an orbit.
//!
//! The generator `Qᵢ` (1 ≤ i ≤ r−1) acts on a tuple by
//! `(…, σᵢ, σᵢ₊₁, …) ↦ (…, σᵢ σᵢ₊₁ σᵢ⁻¹, σᵢ, …)`, all other entries
//! unchanged. Orbits are taken on canonical representatives of inner
//! classes; the straight chamber (fixed ordered class sequence) is
//! preserved by restricting to the subgroup of the braid group whose
//! underlying strand permutation fixes the class sequence.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nielsen::{Canonicalizer, EnumOptions, GeneratingTuple, InnerTupleClass};
use crate::perm::{CycleType, Permutation};

// ---------------------------------------------------------------------------
// Generator action on raw tuples
// ---------------------------------------------------------------------------

fn check_index(i: usize, strands: usize) -> Result<()> {
    if i < 1 || i + 1 > strands {
        return Err(Error::BraidIndexOutOfRange { index: i, strands });
    }
    Ok(())
}

/// Apply `Qᵢ` in place (1-based `i`, needs `i ≤ len − 1`).
pub fn apply_generator(entries: &mut [Permutation], i: usize) -> Result<()> {
    check_index(i, entries.len())?;
    let a = entries[i - 1].clone();
    let conj = entries[i].conjugate_by(&a);
    entries[i - 1] = conj;
    entries[i] = a;
    Ok(())
}

/// Apply `Qᵢ⁻¹` in place.
pub fn apply_generator_inverse(entries: &mut [Permutation], i: usize) -> Result<()> {
    check_index(i, entries.len())?;
    let b = entries[i].clone();
    let conj = entries[i - 1].conjugate_by(&b.inverse());
    entries[i] = conj;
    entries[i - 1] = b;
    Ok(())
}

/// The braid generator `Qᵢ` applied to a validated tuple.
///
/// Product-one and generation are preserved by the action, so the result is
/// again a valid generating tuple.
pub fn braid_generator(i: usize, t: &GeneratingTuple) -> Result<GeneratingTuple> {
    let mut entries = t.entries().to_vec();
    apply_generator(&mut entries, i)?;
    debug_assert!(crate::nielsen::tuple_product(&entries).is_identity());
    Ok(GeneratingTuple::new_unchecked(t.group().clone(), entries))
}

/// The inverse braid generator `Qᵢ⁻¹` applied to a validated tuple.
pub fn braid_generator_inverse(i: usize, t: &GeneratingTuple) -> Result<GeneratingTuple> {
    let mut entries = t.entries().to_vec();
    apply_generator_inverse(&mut entries, i)?;
    Ok(GeneratingTuple::new_unchecked(t.group().clone(), entries))
}

// ---------------------------------------------------------------------------
// Braid words
// ---------------------------------------------------------------------------

/// A word in the generators `Q₁ … Q_{r−1}`, stored as runs
/// `(index, exponent)` with nonzero exponents. The empty word is the
/// identity and prints as `id`.
///
/// Letters act left to right: the first letter is applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    runs: Vec<(usize, i64)>,
}

impl BraidWord {
    /// The identity word.
    pub fn identity() -> BraidWord {
        BraidWord { runs: Vec::new() }
    }

    /// Build from `(index, exponent)` runs; zero exponents are dropped.
    pub fn from_runs(runs: Vec<(usize, i64)>) -> Result<BraidWord> {
        for &(i, _) in &runs {
            if i == 0 {
                return Err(Error::BraidIndexOutOfRange { index: 0, strands: 0 });
            }
        }
        Ok(BraidWord { runs: runs.into_iter().filter(|&(_, e)| e != 0).collect() })
    }

    /// The runs `(index, exponent)`.
    pub fn runs(&self) -> &[(usize, i64)] {
        &self.runs
    }

    /// Largest generator index used (0 for the identity word).
    pub fn max_index(&self) -> usize {
        self.runs.iter().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// The inverse word.
    pub fn inverse(&self) -> BraidWord {
        BraidWord { runs: self.runs.iter().rev().map(|&(i, e)| (i, -e)).collect() }
    }

    /// Concatenation `self · other` (self acts first).
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut runs = self.runs.clone();
        runs.extend_from_slice(&other.runs);
        BraidWord { runs }
    }

    /// Apply the word to a tuple in place.
    pub fn apply(&self, entries: &mut [Permutation]) -> Result<()> {
        for &(i, e) in &self.runs {
            check_index(i, entries.len())?;
            if e > 0 {
                for _ in 0..e {
                    apply_generator(entries, i)?;
                }
            } else {
                for _ in 0..(-e) {
                    apply_generator_inverse(entries, i)?;
                }
            }
        }
        Ok(())
    }

    /// The permutation of strand positions induced by the word (each letter
    /// `Qᵢ^{±1}` transposes strands `i` and `i+1`), on `strands` strands.
    pub fn strand_permutation(&self, strands: usize) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..strands).collect();
        for &(i, e) in &self.runs {
            check_index(i, strands)?;
            if e % 2 != 0 {
                images.swap(i - 1, i);
            }
        }
        // `images` built by successive swaps is a bijection.
        Permutation::from_images(images.into_iter().map(|x| x as u16).collect())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "id");
        }
        for (k, &(i, e)) in self.runs.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "Q{i}")?;
            } else {
                write!(f, "Q{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parse words like `Q2`, `Q1^2 Q2 Q3^-1`, `Q1.Q2`, or `id`.
    fn from_str(s: &str) -> Result<BraidWord> {
        let cleaned = s.replace(['.', '*'], " ");
        let trimmed = cleaned.trim();
        if trimmed.is_empty() || trimmed == "id" || trimmed == "1" {
            return Ok(BraidWord::identity());
        }
        let mut runs = Vec::new();
        for tok in trimmed.split_whitespace() {
            let rest = tok.strip_prefix('Q').or_else(|| tok.strip_prefix('q')).ok_or_else(
                || Error::Config(format!("bad braid letter {tok:?}: expected Q<i> or Q<i>^<e>")),
            )?;
            let (idx_str, exp) = match rest.split_once('^') {
                Some((a, b)) => {
                    let e: i64 = b.parse().map_err(|_| {
                        Error::Config(format!("bad exponent in braid letter {tok:?}"))
                    })?;
                    (a, e)
                }
                None => (rest, 1),
            };
            let idx: usize = idx_str
                .parse()
                .map_err(|_| Error::Config(format!("bad index in braid letter {tok:?}")))?;
            if idx == 0 {
                return Err(Error::Config("braid indices are 1-based; Q0 is invalid".into()));
            }
            if exp != 0 {
                runs.push((idx, exp));
            }
        }
        Ok(BraidWord { runs })
    }
}

/// The pure-braid band generator `A_{ij}` (1 ≤ i < j ≤ r) as a word:
/// `(Q_{j−1} ⋯ Q_{i+1}) Q_i² (Q_{i+1}⁻¹ ⋯ Q_{j−1}⁻¹)`. Its strand
/// permutation is trivial.
pub fn pure_band_word(i: usize, j: usize) -> BraidWord {
    debug_assert!(1 <= i && i < j);
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for k in ((i + 1)..j).rev() {
        runs.push((k, 1));
    }
    runs.push((i, 2));
    for k in (i + 1)..j {
        runs.push((k, -1));
    }
    BraidWord { runs }
}

/// The band transposition word for strands `i < j`:
/// `(Q_{j−1} ⋯ Q_{i+1}) Q_i (Q_{i+1}⁻¹ ⋯ Q_{j−1}⁻¹)`. Its strand
/// permutation is the transposition `(i j)`.
pub fn band_transposition_word(i: usize, j: usize) -> BraidWord {
    debug_assert!(1 <= i && i < j);
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for k in ((i + 1)..j).rev() {
        runs.push((k, 1));
    }
    runs.push((i, 1));
    for k in (i + 1)..j {
        runs.push((k, -1));
    }
    BraidWord { runs }
}

// ---------------------------------------------------------------------------
// Braid orbits on inner classes
// ---------------------------------------------------------------------------

/// A braid orbit on inner classes: the orbit of a straight tuple under the
/// subgroup of the braid group preserving the ordered class sequence
/// (equivalently, the full braid orbit intersected with the straight
/// chamber).
pub struct BraidOrbit {
    classes: Vec<InnerTupleClass>,
    index: HashMap<Vec<Permutation>, usize>,
    canon: Canonicalizer,
    strands: usize,
}

impl BraidOrbit {
    /// Orbit members, sorted by canonical representative.
    pub fn classes(&self) -> &[InnerTupleClass] {
        &self.classes
    }

    /// Orbit size.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    /// True when the orbit is empty (never, for a valid seed).
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of strands `r`.
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The permutation of orbit positions induced by a braid word (positions
    /// refer to the sorted order of [`BraidOrbit::classes`]).
    ///
    /// Errors when the word references a generator out of range, or when it
    /// maps some member outside the orbit (its strand permutation does not
    /// preserve the class sequence).
    pub fn word_action(&mut self, word: &BraidWord) -> Result<Permutation> {
        if word.max_index() + 1 > self.strands {
            return Err(Error::BraidIndexOutOfRange {
                index: word.max_index(),
                strands: self.strands,
            });
        }
        let mut images: Vec<u16> = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let mut entries = c.canonical().entries().to_vec();
            word.apply(&mut entries)?;
            let (rows, _) = self.canon.canonicalize(&entries)?;
            let j = self.index.get(&rows).copied().ok_or_else(|| {
                Error::VerificationFailed(format!(
                    "braid word {word} maps an orbit member outside the orbit \
                     (its strand permutation does not preserve the class sequence)"
                ))
            })?;
            images.push(j as u16);
        }
        Permutation::from_images(images)
    }
}

/// BFS closure of a seed inner class under the straightness-preserving braid
/// generators: all pure band generators `A_{ij}`, plus the band
/// transposition words for strand pairs carrying equal classes.
///
/// `opts.candidate_budget` caps the orbit size; `opts.class_budget` caps the
/// conjugation orbits used for canonical forms.
pub fn braid_orbit(seed: &InnerTupleClass, opts: &EnumOptions) -> Result<BraidOrbit> {
    let group = seed.canonical().group().clone();
    let entries = seed.canonical().entries();
    let r = entries.len();
    let mut canon = Canonicalizer::new(group.clone(), opts.class_budget)?;

    // Identify which strand pairs carry the same conjugacy class.
    let mut same = vec![vec![false; r]; r];
    for i in 0..r {
        for j in (i + 1)..r {
            same[i][j] = entries[i].cycle_type() == entries[j].cycle_type()
                && group.are_conjugate(&entries[i], &entries[j], opts.class_budget)?;
        }
    }

    // Generator words.
    let mut words: Vec<BraidWord> = Vec::new();
    for i in 1..=r {
        for j in (i + 1)..=r {
            words.push(pure_band_word(i, j));
            if same[i - 1][j - 1] {
                words.push(band_transposition_word(i, j));
            }
        }
    }

    // BFS on canonical representatives.
    let (seed_rows, _) = canon.canonicalize(entries)?;
    let mut index: HashMap<Vec<Permutation>, usize> = HashMap::new();
    let mut members: Vec<Vec<Permutation>> = Vec::new();
    index.insert(seed_rows.clone(), 0);
    members.push(seed_rows);
    let mut head = 0;
    while head < members.len() {
        let cur = members[head].clone();
        head += 1;
        for w in &words {
            let mut next = cur.clone();
            w.apply(&mut next)?;
            let (rows, _) = canon.canonicalize(&next)?;
            if !index.contains_key(&rows) {
                if members.len() >= opts.candidate_budget {
                    return Err(Error::BudgetExceeded {
                        what: "braid orbit".into(),
                        budget: opts.candidate_budget,
                    });
                }
                index.insert(rows.clone(), members.len());
                members.push(rows);
            }
        }
    }

    members.sort();
    let mut index = HashMap::new();
    let mut classes = Vec::with_capacity(members.len());
    for (k, rows) in members.into_iter().enumerate() {
        index.insert(rows.clone(), k);
        classes.push(InnerTupleClass::from_canonical_rows(group.clone(), rows));
    }
    Ok(BraidOrbit { classes, index, canon, strands: r })
}

/// Cycle types of the given braid words acting on the orbit.
pub fn hurwitz_curve_braid_types(
    orbit: &mut BraidOrbit,
    words: &[BraidWord],
) -> Result<Vec<CycleType>> {
    words.iter().map(|w| Ok(orbit.word_action(w)?.cycle_type())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;
    use crate::nielsen::{
        enumerate_straight_nielsen, tuple_product, ClassDescriptor, RamificationType,
    };
    use crate::perm::parse_cycles;
    use std::sync::Arc;

    fn p(degree: usize, text: &str) -> Permutation {
        parse_cycles(degree, text).unwrap()
    }

    fn s4_tuple() -> Vec<Permutation> {
        vec![p(4, "(1,2)"), p(4, "(2,3)"), p(4, "(3,4)"), p(4, "(1,4,3,2)")]
    }

    #[test]
    fn generator_and_inverse_cancel() {
        for i in 1..=3 {
            let mut t = s4_tuple();
            apply_generator(&mut t, i).unwrap();
            assert!(tuple_product(&t).is_identity());
            apply_generator_inverse(&mut t, i).unwrap();
            assert_eq!(t, s4_tuple());
            // Other order too.
            apply_generator_inverse(&mut t, i).unwrap();
            apply_generator(&mut t, i).unwrap();
            assert_eq!(t, s4_tuple());
        }
        let mut t = s4_tuple();
        assert!(apply_generator(&mut t, 0).is_err());
        assert!(apply_generator(&mut t, 4).is_err());
    }

    #[test]
    fn equal_adjacent_entries_are_fixed() {
        let mut t = vec![p(3, "(1,2)"), p(3, "(1,2)"), Permutation::identity(3)];
        let before = t.clone();
        apply_generator(&mut t, 1).unwrap();
        assert_eq!(t, before);
    }

    #[test]
    fn braid_relations() {
        // Q_i Q_{i+1} Q_i = Q_{i+1} Q_i Q_{i+1} on arbitrary tuples.
        let base = s4_tuple();
        for i in 1..=2 {
            let mut a = base.clone();
            apply_generator(&mut a, i).unwrap();
            apply_generator(&mut a, i + 1).unwrap();
            apply_generator(&mut a, i).unwrap();
            let mut b = base.clone();
            apply_generator(&mut b, i + 1).unwrap();
            apply_generator(&mut b, i).unwrap();
            apply_generator(&mut b, i + 1).unwrap();
            assert_eq!(a, b);
        }
        // Far commutation: Q1 Q3 = Q3 Q1.
        let mut a = base.clone();
        apply_generator(&mut a, 1).unwrap();
        apply_generator(&mut a, 3).unwrap();
        let mut b = base.clone();
        apply_generator(&mut b, 3).unwrap();
        apply_generator(&mut b, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn validated_generator_preserves_class_multiset() {
        let g = Arc::new(PermGroup::symmetric(3));
        let t = GeneratingTuple::new(g, vec![p(3, "(1,2)"), p(3, "(1,3)"), p(3, "(1,2,3)")])
            .unwrap();
        let u = braid_generator(1, &t).unwrap();
        let mut before: Vec<CycleType> = t.cycle_types();
        let mut after: Vec<CycleType> = u.cycle_types();
        before.sort();
        after.sort();
        assert_eq!(before, after);
        assert!(tuple_product(u.entries()).is_identity());
        let back = braid_generator_inverse(1, &u).unwrap();
        assert_eq!(back.entries(), t.entries());
    }

    #[test]
    fn word_parse_and_display() {
        let w: BraidWord = "Q1^2 Q2 Q3^-1".parse().unwrap();
        assert_eq!(w.runs(), &[(1, 2), (2, 1), (3, -1)]);
        assert_eq!(w.to_string(), "Q1^2 Q2 Q3^-1");
        assert_eq!(w.max_index(), 3);
        let id: BraidWord = "id".parse().unwrap();
        assert_eq!(id, BraidWord::identity());
        assert_eq!(id.to_string(), "id");
        let dotted: BraidWord = "Q2.Q1^2.Q2^-1".parse().unwrap();
        assert_eq!(dotted.runs(), &[(2, 1), (1, 2), (2, -1)]);
        assert!("R1".parse::<BraidWord>().is_err());
        assert!("Q0".parse::<BraidWord>().is_err());
        assert!("Qx^2".parse::<BraidWord>().is_err());
        // Word application agrees with letterwise application.
        let mut a = s4_tuple();
        w.apply(&mut a).unwrap();
        let mut b = s4_tuple();
        apply_generator(&mut b, 1).unwrap();
        apply_generator(&mut b, 1).unwrap();
        apply_generator(&mut b, 2).unwrap();
        apply_generator_inverse(&mut b, 3).unwrap();
        assert_eq!(a, b);
        // Inverse word undoes the word.
        w.inverse().apply(&mut a).unwrap();
        assert_eq!(a, s4_tuple());
    }

    #[test]
    fn band_words_have_expected_strand_permutations() {
        for r in 3..=5usize {
            for i in 1..r {
                for j in (i + 1)..=r {
                    let a = pure_band_word(i, j);
                    assert!(a.strand_permutation(r).unwrap().is_identity(), "A_{i}{j}");
                    let s = band_transposition_word(i, j);
                    let sp = s.strand_permutation(r).unwrap();
                    let expect = Permutation::from_cycles(r, &[vec![i, j]]).unwrap();
                    assert_eq!(sp, expect, "band transposition {i},{j} on {r} strands");
                }
            }
        }
    }

    #[test]
    fn s3_orbit_is_a_single_point() {
        let g = Arc::new(PermGroup::symmetric(3));
        let ty = RamificationType::resolve(
            g,
            &[
                ClassDescriptor::from_type("2.1".parse().unwrap()),
                ClassDescriptor::from_type("2.1".parse().unwrap()),
                ClassDescriptor::from_type("3".parse().unwrap()),
            ],
        )
        .unwrap();
        let en = enumerate_straight_nielsen(&ty, &EnumOptions::default()).unwrap();
        assert_eq!(en.inner_classes.len(), 1);
        let mut orbit = braid_orbit(&en.inner_classes[0], &EnumOptions::default()).unwrap();
        assert_eq!(orbit.len(), 1);
        // Q1 preserves the (2A,2A,3A) sequence and acts trivially here.
        let act = orbit.word_action(&"Q1".parse().unwrap()).unwrap();
        assert!(act.is_identity());
        // The identity word acts as 1^orbit.
        let id_act = orbit.word_action(&BraidWord::identity()).unwrap();
        assert_eq!(id_act.cycle_type().to_string(), "1");
        // Q2 swaps a 2A strand with the 3A strand: chamber broken.
        assert!(orbit.word_action(&"Q2".parse().unwrap()).is_err());
        // Out-of-range generator.
        assert!(orbit.word_action(&"Q3".parse().unwrap()).is_err());
    }

    #[test]
    fn orbit_covers_enumeration_in_single_orbit_cases() {
        // S₄, classes (2.1², 2.1², 3.1, 3.1): enumerate, then check the braid
        // orbit of the first class against the full enumeration.
        let g = Arc::new(PermGroup::symmetric(4));
        let ty = RamificationType::resolve(
            g,
            &[
                ClassDescriptor::from_type("2.1^2".parse().unwrap()),
                ClassDescriptor::from_type("2.1^2".parse().unwrap()),
                ClassDescriptor::from_type("3.1".parse().unwrap()),
                ClassDescriptor::from_type("3.1".parse().unwrap()),
            ],
        )
        .unwrap();
        let en = enumerate_straight_nielsen(&ty, &EnumOptions::default()).unwrap();
        assert!(en.inner_count > 0);
        let mut seen: std::collections::HashSet<&InnerTupleClass> = Default::default();
        let orbit = braid_orbit(&en.inner_classes[0], &EnumOptions::default()).unwrap();
        for c in orbit.classes() {
            // Every orbit member appears in the enumeration.
            assert!(en.inner_classes.binary_search(c).is_ok());
            seen.insert(en.inner_classes.iter().find(|x| *x == c).unwrap());
        }
        assert!(orbit.len() as u64 <= en.inner_count);
    }
}
