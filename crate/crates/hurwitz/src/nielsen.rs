//! Nielsen classes of generating tuples: enumeration, canonical forms,
//! genus bookkeeping, rigidity, and the symmetric-tuple condition.
//!
//! A *straight* Nielsen class fixes an ordered list of conjugacy classes
//! `(C₁, …, C_r)` and collects the tuples `(σ₁, …, σ_r)` with `σᵢ ∈ Cᵢ`,
//! product one (in order, `σ₁ ∘ σ₂ ∘ ⋯ ∘ σ_r = 1`), and `⟨σ₁, …, σ_r⟩` the
//! whole group. The *inner* classes are the orbits under simultaneous
//! conjugation.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{subgroup_order, PermGroup, ResolvedClass};
use crate::perm::{CycleType, Permutation};

/// Default cap on the number of candidate tuples visited by enumeration.
pub const DEFAULT_CANDIDATE_BUDGET: usize = 20_000_000;

/// Default cap for class closures inside enumeration.
pub const DEFAULT_CLASS_BUDGET: usize = 5_000_000;

// ---------------------------------------------------------------------------
// Tuples and ramification types
// ---------------------------------------------------------------------------

/// Product of the entries in order: `t₁ ∘ t₂ ∘ ⋯ ∘ t_r`.
pub fn tuple_product(entries: &[Permutation]) -> Permutation {
    let n = entries.first().map_or(0, |p| p.degree());
    entries.iter().fold(Permutation::identity(n), |acc, t| acc.compose(t))
}

/// A generating tuple with product one: the combinatorial data of a cover.
///
/// Construction checks all three invariants: entries nonidentity, product
/// one, and generation of the ambient group.
#[derive(Clone)]
pub struct GeneratingTuple {
    group: Arc<PermGroup>,
    entries: Vec<Permutation>,
}

impl std::fmt::Debug for GeneratingTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GeneratingTuple[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl PartialEq for GeneratingTuple {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}
impl Eq for GeneratingTuple {}

impl GeneratingTuple {
    /// Validate and wrap a tuple.
    pub fn new(group: Arc<PermGroup>, entries: Vec<Permutation>) -> Result<GeneratingTuple> {
        if entries.len() < 3 {
            return Err(Error::InvalidRamification(format!(
                "a generating tuple needs r ≥ 3 entries, got {}",
                entries.len()
            )));
        }
        for (i, e) in entries.iter().enumerate() {
            if e.degree() != group.degree() {
                return Err(Error::DegreeMismatch { left: group.degree(), right: e.degree() });
            }
            if e.is_identity() {
                return Err(Error::IdentityEntry { index: i + 1 });
            }
            if !group.contains(e) {
                return Err(Error::NotAPermutation(format!("entry {} is not in the group", i + 1)));
            }
        }
        if !tuple_product(&entries).is_identity() {
            return Err(Error::ProductNotIdentity);
        }
        let expected = group.order()?;
        let found = subgroup_order(group.degree(), &entries)?;
        if found != expected {
            return Err(Error::NotGenerating { found, expected });
        }
        Ok(GeneratingTuple { group, entries })
    }

    /// Wrap entries already known to satisfy the invariants.
    pub(crate) fn new_unchecked(group: Arc<PermGroup>, entries: Vec<Permutation>) -> GeneratingTuple {
        GeneratingTuple { group, entries }
    }

    /// The ambient group.
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    /// The entries `(σ₁, …, σ_r)`.
    pub fn entries(&self) -> &[Permutation] {
        &self.entries
    }

    /// Number of entries `r`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false (r ≥ 3 is enforced); present for clippy-idiomatic APIs.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cycle types of the entries.
    pub fn cycle_types(&self) -> Vec<CycleType> {
        self.entries.iter().map(|e| e.cycle_type()).collect()
    }

    /// Genus of the cover with this branch-cycle description
    /// (Riemann–Hurwitz; requires a transitive group).
    pub fn genus(&self) -> Result<u32> {
        if !self.group.is_transitive() {
            return Err(Error::NotTransitive);
        }
        genus_from_cycle_types(self.group.degree(), &self.cycle_types())
    }
}

/// A class descriptor as written in type files: cycle type plus optional
/// disambiguating attributes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDescriptor {
    /// Cycle type of the class elements.
    pub cycle_type: CycleType,
    /// Exact class size, when needed for disambiguation.
    pub class_size: Option<usize>,
    /// Element order (redundant with the type; checked when present).
    pub element_order: Option<u128>,
}

impl ClassDescriptor {
    /// Descriptor with only a cycle type.
    pub fn from_type(cycle_type: CycleType) -> Self {
        ClassDescriptor { cycle_type, class_size: None, element_order: None }
    }
}

/// An ordered list of resolved conjugacy classes: the ramification data of a
/// straight Nielsen class.
#[derive(Clone)]
pub struct RamificationType {
    group: Arc<PermGroup>,
    classes: Vec<ResolvedClass>,
}

impl RamificationType {
    /// Resolve descriptors against the group; every descriptor must match
    /// exactly one class.
    pub fn resolve(group: Arc<PermGroup>, descriptors: &[ClassDescriptor]) -> Result<Self> {
        let mut classes = Vec::with_capacity(descriptors.len());
        for d in descriptors {
            let c = group.resolve_class(&d.cycle_type, d.class_size, d.element_order)?;
            if c.order == 1 {
                return Err(Error::InvalidRamification(
                    "the identity class cannot appear in a ramification type".into(),
                ));
            }
            classes.push(c);
        }
        Ok(RamificationType { group, classes })
    }

    /// Wrap pre-resolved classes (used by tests and internal callers).
    pub fn from_resolved(group: Arc<PermGroup>, classes: Vec<ResolvedClass>) -> Self {
        RamificationType { group, classes }
    }

    /// The ambient group.
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    /// The resolved classes in order.
    pub fn classes(&self) -> &[ResolvedClass] {
        &self.classes
    }

    /// Number of branch points `r`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    /// True when no classes are present.
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Cycle types in order.
    pub fn cycle_types(&self) -> Vec<CycleType> {
        self.classes.iter().map(|c| c.rep.cycle_type()).collect()
    }
}

// ---------------------------------------------------------------------------
// Genus bookkeeping
// ---------------------------------------------------------------------------

/// Genus from Riemann–Hurwitz: `2 − 2g = 2n − Σᵢ ind(σᵢ)` with
/// `ind(σ) = n − #cycles(σ)`.
///
/// Errors when the total is odd or the genus negative — both signal that the
/// input does not describe a connected cover.
pub fn genus_from_cycle_types(degree: usize, types: &[CycleType]) -> Result<u32> {
    let mut ind_sum = 0i64;
    for t in types {
        if t.degree() != degree {
            return Err(Error::DegreeMismatch { left: degree, right: t.degree() });
        }
        ind_sum += t.index() as i64;
    }
    let rhs = 2 * degree as i64 - ind_sum; // = 2 − 2g
    if rhs % 2 != 0 {
        return Err(Error::BadGenus(format!(
            "Riemann–Hurwitz total 2n − Σ ind = {rhs} is odd"
        )));
    }
    let g2 = 2 - rhs;
    if g2 < 0 {
        return Err(Error::BadGenus(format!("negative genus {}", g2 / 2)));
    }
    Ok((g2 / 2) as u32)
}

/// Genus of the cover described by a tuple (see [`GeneratingTuple::genus`]).
pub fn tuple_genus(tuple: &GeneratingTuple) -> Result<u32> {
    tuple.genus()
}

// ---------------------------------------------------------------------------
// Canonical forms under simultaneous conjugation
// ---------------------------------------------------------------------------

/// Node of the lazily built minimization tree: the stabilizer reached after
/// minimizing a prefix of rows, with cached conjugation orbits of the values
/// seen for the next row.
struct Node {
    stab_gens: Vec<Permutation>,
    stab_order: u128,
    /// value → (orbit id, transporter value→min).
    seen: HashMap<Permutation, (u32, Permutation)>,
    orbits: Vec<NodeOrbit>,
}

struct NodeOrbit {
    elems: Vec<Permutation>,
    child: Option<Box<Node>>,
}

impl Node {
    fn new(stab_gens: Vec<Permutation>, stab_order: u128) -> Node {
        Node { stab_gens, stab_order, seen: HashMap::new(), orbits: Vec::new() }
    }
}

/// Computes lexicographically minimal conjugates of tuples under a fixed
/// group, caching orbit data so repeated canonicalizations (enumeration,
/// braid orbits) cost almost nothing after warm-up.
pub struct Canonicalizer {
    group: Arc<PermGroup>,
    budget: usize,
    root: Node,
}

impl Canonicalizer {
    /// New canonicalizer over `group`; `orbit_budget` caps each conjugation
    /// orbit explored.
    pub fn new(group: Arc<PermGroup>, orbit_budget: usize) -> Result<Canonicalizer> {
        let order = group.order()?;
        let gens = group.gens().to_vec();
        Ok(Canonicalizer { group: group.clone(), budget: orbit_budget, root: Node::new(gens, order) })
    }

    /// The lexicographically minimal simultaneous conjugate of `tuple`,
    /// together with a conjugator `c` (so `canonical[i] = c tuple[i] c⁻¹`).
    pub fn canonicalize(
        &mut self,
        tuple: &[Permutation],
    ) -> Result<(Vec<Permutation>, Permutation)> {
        let degree = self.group.degree();
        for t in tuple {
            if t.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: t.degree() });
            }
        }
        let mut rows = tuple.to_vec();
        let mut total = Permutation::identity(degree);
        descend(&mut self.root, &mut rows, 0, &mut total, degree, self.budget)?;
        Ok((rows, total))
    }
}

fn descend(
    node: &mut Node,
    rows: &mut [Permutation],
    row: usize,
    total: &mut Permutation,
    degree: usize,
    budget: usize,
) -> Result<()> {
    if row >= rows.len() || node.stab_order == 1 || node.stab_gens.is_empty() {
        return Ok(());
    }
    if !node.seen.contains_key(&rows[row]) {
        explore_orbit(node, &rows[row], degree, budget)?;
    }
    let (oid, v) = node.seen.get(&rows[row]).expect("explored above").clone();
    for r in rows.iter_mut() {
        *r = r.conjugate_by(&v);
    }
    *total = v.compose(total);
    let oid = oid as usize;
    if node.orbits[oid].child.is_none() {
        let child = build_child(node, oid, degree)?;
        node.orbits[oid].child = Some(Box::new(child));
    }
    descend(
        node.orbits[oid].child.as_mut().expect("built above"),
        rows,
        row + 1,
        total,
        degree,
        budget,
    )
}

/// BFS the conjugation orbit of `x` under the node's stabilizer generators,
/// recording per-element transporters to the orbit minimum.
fn explore_orbit(node: &mut Node, x: &Permutation, degree: usize, budget: usize) -> Result<()> {
    let mut elems: Vec<Permutation> = vec![x.clone()];
    let mut trans: Vec<Permutation> = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    index.insert(x.clone(), 0);
    let mut head = 0;
    let mut min_i = 0usize;
    while head < elems.len() {
        let cur = elems[head].clone();
        let u = trans[head].clone();
        head += 1;
        for g in &node.stab_gens {
            let y = cur.conjugate_by(g);
            if !index.contains_key(&y) {
                if elems.len() >= budget {
                    return Err(Error::BudgetExceeded {
                        what: "conjugation orbit in canonicalization".into(),
                        budget,
                    });
                }
                index.insert(y.clone(), elems.len() as u32);
                if y < elems[min_i] {
                    min_i = elems.len();
                }
                trans.push(g.compose(&u));
                elems.push(y);
            }
        }
    }
    let oid = node.orbits.len() as u32;
    for (i, e) in elems.iter().enumerate() {
        // v_e = u_min ∘ u_e⁻¹ transports e to the orbit minimum.
        let v = trans[min_i].compose(&trans[i].inverse());
        node.seen.insert(e.clone(), (oid, v));
    }
    node.orbits.push(NodeOrbit { elems, child: None });
    Ok(())
}

/// Stabilizer of the orbit minimum inside the node's stabilizer, as Schreier
/// generators certified complete by order counting.
fn build_child(node: &Node, oid: usize, degree: usize) -> Result<Node> {
    let orbit = &node.orbits[oid];
    let orbit_len = orbit.elems.len() as u128;
    if node.stab_order % orbit_len != 0 {
        return Err(Error::OrderOverflow(
            "orbit size does not divide stabilizer order; internal invariant broken".into(),
        ));
    }
    let target = node.stab_order / orbit_len;
    if target == 1 {
        return Ok(Node::new(Vec::new(), 1));
    }
    let mut found: Vec<Permutation> = Vec::new();
    let mut dedupe: HashMap<Permutation, ()> = HashMap::new();
    for e in &orbit.elems {
        let (_, v_e) = &node.seen[e];
        for g in &node.stab_gens {
            let y = e.conjugate_by(g);
            let (y_oid, v_y) = &node.seen[&y];
            debug_assert_eq!(*y_oid as usize, oid);
            // v_y ∘ g ∘ v_e⁻¹ fixes the orbit minimum.
            let sg = v_y.compose(&g.compose(&v_e.inverse()));
            if sg.is_identity() || dedupe.contains_key(&sg) {
                continue;
            }
            dedupe.insert(sg.clone(), ());
            found.push(sg);
            if found.len() % 16 == 0 && subgroup_order(degree, &found)? == target {
                return Ok(Node::new(found, target));
            }
        }
    }
    let got = subgroup_order(degree, &found)?;
    if got != target {
        return Err(Error::OrderOverflow(format!(
            "stabilizer closure reached order {got}, expected {target}; internal invariant broken"
        )));
    }
    Ok(Node::new(found, target))
}

/// An inner Nielsen class, stored by its canonical representative
/// (lexicographically minimal under simultaneous conjugation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerTupleClass {
    canonical: GeneratingTuple,
}

impl std::hash::Hash for InnerTupleClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical.entries.hash(state);
    }
}

impl PartialOrd for InnerTupleClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for InnerTupleClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical.entries.cmp(&other.canonical.entries)
    }
}

impl InnerTupleClass {
    /// Canonicalize a tuple into its inner class.
    pub fn of(tuple: &GeneratingTuple, canon: &mut Canonicalizer) -> Result<InnerTupleClass> {
        let (rows, _) = canon.canonicalize(&tuple.entries)?;
        Ok(InnerTupleClass {
            canonical: GeneratingTuple::new_unchecked(tuple.group.clone(), rows),
        })
    }

    /// The canonical representative.
    pub fn canonical(&self) -> &GeneratingTuple {
        &self.canonical
    }

    /// Wrap rows already in canonical form (internal orbit machinery).
    pub(crate) fn from_canonical_rows(
        group: Arc<PermGroup>,
        rows: Vec<Permutation>,
    ) -> InnerTupleClass {
        InnerTupleClass { canonical: GeneratingTuple::new_unchecked(group, rows) }
    }
}

// ---------------------------------------------------------------------------
// Enumeration of straight Nielsen classes
// ---------------------------------------------------------------------------

/// Tunable limits for [`enumerate_straight_nielsen`].
#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Cap on the number of candidate tuples visited (product of free class
    /// sizes).
    pub candidate_budget: usize,
    /// Cap for conjugacy-class closures and canonicalization orbits.
    pub class_budget: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            candidate_budget: DEFAULT_CANDIDATE_BUDGET,
            class_budget: DEFAULT_CLASS_BUDGET,
        }
    }
}

/// The outcome of enumerating a straight Nielsen class.
#[derive(Debug)]
pub struct NielsenEnumeration {
    /// `|SNi(C)|`: number of straight generating tuples.
    pub straight_count: u128,
    /// Count with `σ₁` fixed to the first class representative.
    pub fixed_first_count: u64,
    /// `|SNi^in(C)|`: number of inner classes.
    pub inner_count: u64,
    /// Canonical representatives of the inner classes, sorted.
    pub inner_classes: Vec<InnerTupleClass>,
}

/// Enumerate the straight Nielsen class of a ramification type.
///
/// Strategy: fix `σ₁` to the first class representative, iterate positions
/// `2…r−1` over explicit class element lists, solve `σ_r` from the
/// product-one condition and test its class, partition the surviving
/// partial tuples into orbits under the centralizer of `σ₁` (these orbits
/// are exactly the inner classes), and run the expensive generation test
/// once per orbit. Requires a trivial-centre group; an empty result is
/// legal output, not an error.
pub fn enumerate_straight_nielsen(
    ty: &RamificationType,
    opts: &EnumOptions,
) -> Result<NielsenEnumeration> {
    let group = ty.group().clone();
    let degree = group.degree();
    let r = ty.len();
    if r < 3 {
        return Err(Error::InvalidRamification(format!("need r ≥ 3 classes, got {r}")));
    }
    let order = group.order()?;
    let centre = group.centre()?;
    if centre.len() != 1 {
        return Err(Error::NontrivialCentre(centre.len() as u128));
    }

    let sigma1 = ty.classes()[0].rep.clone();
    let (cent_gens, cent_order) = group.centralizer_gens(&sigma1, opts.class_budget)?;

    // Element lists for the free positions 2…r−1, sharing lists between
    // equal classes.
    let free = &ty.classes()[1..r - 1];
    let mut list_of: Vec<usize> = Vec::with_capacity(free.len());
    let mut lists: Vec<Vec<Permutation>> = Vec::new();
    let mut list_reps: Vec<Permutation> = Vec::new();
    for c in free {
        match list_reps.iter().position(|rep| rep == &c.rep) {
            Some(i) => list_of.push(i),
            None => {
                let elems = group.conjugacy_class(&c.rep, opts.class_budget)?;
                debug_assert_eq!(elems.len(), c.size);
                list_reps.push(c.rep.clone());
                lists.push(elems);
                list_of.push(lists.len() - 1);
            }
        }
    }

    // Candidate space size and mixed-radix strides.
    let mut candidate_count: u128 = 1;
    for &li in &list_of {
        candidate_count = candidate_count.saturating_mul(lists[li].len() as u128);
    }
    if candidate_count > opts.candidate_budget as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("straight Nielsen enumeration over {candidate_count} candidates"),
            budget: opts.candidate_budget,
        });
    }
    let candidate_count = candidate_count as usize;

    // Last class: membership by cycle type alone when the type is unique to
    // the class; otherwise by an explicit element set.
    let last = &ty.classes()[r - 1];
    let last_type = last.rep.cycle_type();
    let type_unique = group.classes_of_type(&last_type)?.len() == 1;
    let last_set: Option<HashMap<Permutation, ()>> = if type_unique {
        None
    } else {
        Some(
            group
                .conjugacy_class(&last.rep, opts.class_budget)?
                .into_iter()
                .map(|p| (p, ()))
                .collect(),
        )
    };

    // Scan all candidates; record the passing ones in a bitset.
    let mut passing = Bitset::new(candidate_count);
    {
        let nfree = list_of.len();
        let mut idx = vec![0usize; nfree];
        // prefixes[k] = σ₁ ∘ e₁ ∘ … ∘ e_k.
        let mut prefixes: Vec<Permutation> = Vec::with_capacity(nfree + 1);
        prefixes.push(sigma1.clone());
        for k in 0..nfree {
            let next = prefixes[k].compose(&lists[list_of[k]][0]);
            prefixes.push(next);
        }
        let expected = type_counts(&last_type);
        let mut cycle_seen = vec![false; degree];
        let mut key = 0usize;
        loop {
            // Test the full product: σ_r = product⁻¹ shares its cycle type.
            let full = &prefixes[nfree];
            if images_match_type(full.images(), &expected, &mut cycle_seen) {
                let ok = match &last_set {
                    None => true,
                    Some(set) => set.contains_key(&full.inverse()),
                };
                if ok {
                    passing.set(key);
                }
            }
            // Odometer increment; recompute the prefixes from the changed
            // position onward.
            let mut pos = nfree;
            loop {
                if pos == 0 {
                    break;
                }
                let p = pos - 1;
                idx[p] += 1;
                if idx[p] < lists[list_of[p]].len() {
                    break;
                }
                idx[p] = 0;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            for k in (pos - 1)..nfree {
                prefixes[k + 1] = prefixes[k].compose(&lists[list_of[k]][idx[k]]);
            }
            key += 1;
        }
        debug_assert_eq!(key + 1, candidate_count);
    }

    // Conjugation tables: for each list and each centralizer generator, the
    // induced permutation of list indices.
    let mut list_index: Vec<HashMap<Permutation, u32>> = Vec::new();
    for l in &lists {
        list_index.push(l.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect());
    }
    let mut tables: Vec<Vec<Vec<u32>>> = Vec::new(); // [list][gen][elem]
    for (li, l) in lists.iter().enumerate() {
        let mut per_gen = Vec::new();
        for c in &cent_gens {
            let table: Vec<u32> =
                l.iter().map(|e| list_index[li][&e.conjugate_by(c)]).collect();
            per_gen.push(table);
        }
        tables.push(per_gen);
    }

    // Orbit partition of the passing set under the centralizer action.
    let strides = {
        let mut s = vec![1usize; list_of.len()];
        for k in (0..list_of.len().saturating_sub(1)).rev() {
            s[k] = s[k + 1] * lists[list_of[k + 1]].len();
        }
        s
    };
    let mut visited = Bitset::new(candidate_count);
    let mut orbit_reps: Vec<(usize, u64)> = Vec::new(); // (key, orbit size)
    let mut queue: Vec<usize> = Vec::new();
    let mut digits = vec![0usize; list_of.len()];
    for start in 0..candidate_count {
        if !passing.get(start) || visited.get(start) {
            continue;
        }
        queue.clear();
        queue.push(start);
        visited.set(start);
        let mut size = 0u64;
        let mut head = 0;
        while head < queue.len() {
            let key = queue[head];
            head += 1;
            size += 1;
            let mut rem = key;
            for (k, d) in digits.iter_mut().enumerate() {
                *d = rem / strides[k];
                rem %= strides[k];
            }
            for gi in 0..cent_gens.len() {
                let mut nkey = 0usize;
                for (k, &d) in digits.iter().enumerate() {
                    nkey += tables[list_of[k]][gi][d] as usize * strides[k];
                }
                debug_assert!(passing.get(nkey), "centralizer action left the passing set");
                if !visited.get(nkey) {
                    visited.set(nkey);
                    queue.push(nkey);
                }
            }
        }
        orbit_reps.push((start, size));
    }

    // Generation test once per orbit; orbits of generating tuples are exactly
    // the inner classes.
    let mut canon = Canonicalizer::new(group.clone(), opts.class_budget)?;
    let mut inner: Vec<InnerTupleClass> = Vec::new();
    let mut fixed_first_count = 0u64;
    for &(key, size) in &orbit_reps {
        let mut rem = key;
        let mut entries = Vec::with_capacity(r);
        entries.push(sigma1.clone());
        for (k, &li) in list_of.iter().enumerate() {
            let d = rem / strides[k];
            rem %= strides[k];
            entries.push(lists[li][d].clone());
        }
        let last_entry = tuple_product(&entries).inverse();
        entries.push(last_entry);
        if subgroup_order(degree, &entries)? != order {
            continue;
        }
        fixed_first_count += size;
        // A generating tuple has trivial conjugation stabilizer (trivial
        // centre), so its centralizer orbit is free.
        if size as u128 != cent_order {
            return Err(Error::OrderOverflow(format!(
                "generating orbit of size {size} under a centralizer of order {cent_order}; internal invariant broken"
            )));
        }
        let (rows, _) = canon.canonicalize(&entries)?;
        inner.push(InnerTupleClass {
            canonical: GeneratingTuple::new_unchecked(group.clone(), rows),
        });
    }
    inner.sort();

    let straight_count = ty.classes()[0].size as u128 * fixed_first_count as u128;
    let inner_count = inner.len() as u64;
    // Cross-check the count identity |SNi^in| = |SNi| / |G|.
    if straight_count != inner_count as u128 * order {
        return Err(Error::OrderOverflow(format!(
            "count identity violated: |SNi| = {straight_count}, inner = {inner_count}, |G| = {order}"
        )));
    }
    Ok(NielsenEnumeration {
        straight_count,
        fixed_first_count,
        inner_count,
        inner_classes: inner,
    })
}

/// Fixed-size bitset over candidate keys.
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn new(len: usize) -> Bitset {
        Bitset { words: vec![0u64; (len + 63) / 64] }
    }
    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }
    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
}

/// Descending `(length, multiplicity)` pairs of a type, for the no-allocation
/// matcher below.
fn type_counts(ty: &CycleType) -> Vec<(u32, u32)> {
    ty.parts().to_vec()
}

/// Does the image table have exactly this cycle type? `seen` is a reusable
/// scratch buffer of the same degree.
fn images_match_type(images: &[u16], expected: &[(u32, u32)], seen: &mut [bool]) -> bool {
    seen.iter_mut().for_each(|s| *s = false);
    let mut remaining: Vec<(u32, u32)> = expected.to_vec();
    let n = images.len();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            len += 1;
            p = images[p] as usize;
        }
        match remaining.iter_mut().find(|(l, m)| *l == len && *m > 0) {
            Some((_, m)) => *m -= 1,
            None => return false,
        }
    }
    remaining.iter().all(|&(_, m)| m == 0)
}

// ---------------------------------------------------------------------------
// Rigidity and the symmetric-tuple condition
// ---------------------------------------------------------------------------

/// Result of a rigidity check.
#[derive(Debug)]
pub struct RigidityReport {
    /// Number of inner classes of the type.
    pub inner_count: u64,
    /// Rationality of each class (closure under powering by units modulo the
    /// element order), in type order.
    pub class_rational: Vec<bool>,
    /// True iff exactly one inner class exists.
    pub rigid: bool,
}

/// Check rigidity of a ramification type: exactly one inner Nielsen class.
/// Also reports rationality of each class.
pub fn rigidity_check(ty: &RamificationType, opts: &EnumOptions) -> Result<RigidityReport> {
    let en = enumerate_straight_nielsen(ty, opts)?;
    let mut class_rational = Vec::with_capacity(ty.len());
    for c in ty.classes() {
        class_rational.push(ty.group().class_is_rational(&c.rep, opts.class_budget)?);
    }
    Ok(RigidityReport {
        inner_count: en.inner_count,
        class_rational,
        rigid: en.inner_count == 1,
    })
}

/// Search a list of inner classes (r = 4 tuples `(σ₁, σ₂,₁, σ₂,₂, σ₃)`) for
/// one satisfying the symmetry condition `σ₃ = σ₂,₂ ∘ σ₃⁻¹ ∘ σ₂,₂⁻¹`.
///
/// The condition is invariant under simultaneous conjugation, so testing one
/// representative per class decides it for the whole class. Returns the
/// first witness.
pub fn exists_symmetric_tuple(classes: &[InnerTupleClass]) -> Result<Option<GeneratingTuple>> {
    for c in classes {
        let e = c.canonical().entries();
        if e.len() != 4 {
            return Err(Error::InvalidRamification(format!(
                "symmetric-tuple condition needs r = 4, got {}",
                e.len()
            )));
        }
        let conj = e[3].inverse().conjugate_by(&e[2]);
        if conj == e[3] {
            return Ok(Some(c.canonical().clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn p(degree: usize, text: &str) -> Permutation {
        parse_cycles(degree, text).unwrap()
    }

    fn s3_type() -> RamificationType {
        let g = Arc::new(PermGroup::symmetric(3));
        RamificationType::resolve(
            g,
            &[
                ClassDescriptor::from_type("2.1".parse().unwrap()),
                ClassDescriptor::from_type("2.1".parse().unwrap()),
                ClassDescriptor::from_type("3".parse().unwrap()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn s3_enumeration() {
        let en = enumerate_straight_nielsen(&s3_type(), &EnumOptions::default()).unwrap();
        assert_eq!(en.straight_count, 6);
        assert_eq!(en.fixed_first_count, 2);
        assert_eq!(en.inner_count, 1);
        assert_eq!(en.inner_classes.len(), 1);
        // The canonical representative is itself a valid tuple.
        let rep = en.inner_classes[0].canonical();
        assert!(tuple_product(rep.entries()).is_identity());
    }

    #[test]
    fn a5_three_involutions_is_empty() {
        let g = Arc::new(PermGroup::new(5, vec![p(5, "(1,2,3,4,5)"), p(5, "(3,4,5)")]).unwrap());
        assert_eq!(g.order().unwrap(), 60);
        let ty = RamificationType::resolve(
            g,
            &[
                ClassDescriptor::from_type("2^2.1".parse().unwrap()),
                ClassDescriptor::from_type("2^2.1".parse().unwrap()),
                ClassDescriptor::from_type("2^2.1".parse().unwrap()),
            ],
        )
        .unwrap();
        let en = enumerate_straight_nielsen(&ty, &EnumOptions::default()).unwrap();
        assert_eq!(en.inner_count, 0);
        assert_eq!(en.straight_count, 0);
    }

    #[test]
    fn a4_enumeration_with_split_classes() {
        // A4: the 3-cycles split into two classes of size 4; descriptors are
        // ambiguous, so build the type from explicit representatives.
        let g = Arc::new(PermGroup::new(4, vec![p(4, "(1,2,3)"), p(4, "(2,3,4)")]).unwrap());
        let v = g.resolve_class(&"2^2".parse().unwrap(), None, None).unwrap();
        let rep_a = p(4, "(1,2,3)");
        let class_a = ResolvedClass {
            rep: rep_a.clone(),
            size: 4,
            order: 3,
            uniqueness_verified: false,
        };
        // σ₃ class must be the one containing the products: (2²)∘A lands in A.
        let ty = RamificationType::from_resolved(
            g.clone(),
            vec![v.clone(), class_a.clone(), class_a.clone()],
        );
        // For C₃ = A the product condition needs σ₁σ₂ ∈ A⁻¹-class = B, so
        // check both choices; exactly one is nonempty with count 12.
        let rep_b = rep_a.inverse();
        let class_b = ResolvedClass { rep: rep_b, size: 4, order: 3, uniqueness_verified: false };
        let ty_b = RamificationType::from_resolved(g, vec![v, class_a, class_b]);
        let en_a = enumerate_straight_nielsen(&ty, &EnumOptions::default()).unwrap();
        let en_b = enumerate_straight_nielsen(&ty_b, &EnumOptions::default()).unwrap();
        let counts = [en_a.straight_count, en_b.straight_count];
        assert!(counts.contains(&12) && counts.contains(&0), "got {counts:?}");
        assert_eq!(en_a.inner_count as u128 + en_b.inner_count as u128, 1);
    }

    #[test]
    fn genus_formulas() {
        let types: Vec<CycleType> = ["2^6.1^16", "2^12.1^4", "2^12.1^4", "7^4"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(genus_from_cycle_types(28, &types).unwrap(), 0);
        let types: Vec<CycleType> = ["15.12^2.9.8.7^2", "3^13.2^14.1^3", "2^35"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(genus_from_cycle_types(70, &types).unwrap(), 0);
        let types: Vec<CycleType> = ["2^6.1^15", "2^6.1^15", "4^6.1^3", "6^4.3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(genus_from_cycle_types(27, &types).unwrap(), 0);
        let types: Vec<CycleType> = ["2^10.1^16", "2^12.1^12", "2^12.1^12", "2^12.1^12", "3^12"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(genus_from_cycle_types(36, &types).unwrap(), 0);
        // n-cycle pair.
        let types: Vec<CycleType> = ["5", "5"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(genus_from_cycle_types(5, &types).unwrap(), 0);
        // Degree mismatch and bad totals error.
        let types: Vec<CycleType> = ["2.1", "3"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(genus_from_cycle_types(3, &types).is_err());
    }

    #[test]
    fn tuple_validation() {
        let g = Arc::new(PermGroup::symmetric(3));
        let ok = GeneratingTuple::new(
            g.clone(),
            vec![p(3, "(1,2)"), p(3, "(1,3)"), p(3, "(1,2,3)")],
        );
        assert!(ok.is_ok(), "{ok:?}");
        assert_eq!(ok.unwrap().genus().unwrap(), 0);
        // Product not one.
        let bad = GeneratingTuple::new(
            g.clone(),
            vec![p(3, "(1,2)"), p(3, "(1,3)"), p(3, "(1,3,2)")],
        );
        assert!(matches!(bad.unwrap_err(), Error::ProductNotIdentity));
        // Identity entry.
        let bad = GeneratingTuple::new(
            g.clone(),
            vec![p(3, "(1,2)"), Permutation::identity(3), p(3, "(1,2)")],
        );
        assert!(matches!(bad.unwrap_err(), Error::IdentityEntry { index: 2 }));
        // Not generating: three equal transpositions in S3 generate C2.
        let bad =
            GeneratingTuple::new(g, vec![p(3, "(1,2)"), p(3, "(1,2)"), p(3, "(1,2)")]);
        assert!(matches!(bad.unwrap_err(), Error::ProductNotIdentity | Error::NotGenerating { .. }));
    }

    #[test]
    fn canonicalizer_matches_direct_minimization() {
        let g = Arc::new(PermGroup::symmetric(4));
        let tuple = vec![p(4, "(1,2)"), p(4, "(2,3)"), p(4, "(3,4)"), p(4, "(1,4,3,2)")];
        assert!(tuple_product(&tuple).is_identity());
        let mut canon = Canonicalizer::new(g.clone(), 1_000_000).unwrap();
        let (c1, w1) = canon.canonicalize(&tuple).unwrap();
        // Conjugator realizes the form.
        for (x, y) in tuple.iter().zip(c1.iter()) {
            assert_eq!(&x.conjugate_by(&w1), y);
        }
        // Agreement with the uncached layered minimizer.
        let (c2, _) = g.minimal_conjugate_tuple(&tuple, 1_000_000).unwrap();
        assert_eq!(c1, c2);
        // Conjugates canonicalize identically (cache warm now).
        for t in ["(1,3)", "(1,4)(2,3)", "(2,4,3)"] {
            let h = p(4, t);
            let conj: Vec<Permutation> = tuple.iter().map(|x| x.conjugate_by(&h)).collect();
            let (c3, _) = canon.canonicalize(&conj).unwrap();
            assert_eq!(c1, c3);
        }
    }

    #[test]
    fn symmetric_condition() {
        // σ₃ an involution commuting with σ₂,₂ satisfies the condition.
        let g = Arc::new(PermGroup::symmetric(4));
        let entries = vec![p(4, "(1,2)"), p(4, "(1,2)(3,4)"), p(4, "(1,2,3)"), p(4, "(1,3,4)")];
        // Build a dummy class wrapper (entries need not generate for this
        // test of the predicate itself).
        let t4: Vec<Permutation> =
            vec![p(4, "(1,2)"), p(4, "(3,4)"), p(4, "(1,2)"), p(4, "(3,4)")];
        let _ = entries;
        let tup = GeneratingTuple::new_unchecked(g.clone(), t4);
        let cls = InnerTupleClass { canonical: tup };
        let found = exists_symmetric_tuple(std::slice::from_ref(&cls)).unwrap();
        assert!(found.is_some());
        // Wrong arity errors.
        let t3 = GeneratingTuple::new_unchecked(
            g,
            vec![p(4, "(1,2)"), p(4, "(3,4)"), p(4, "(1,2)")],
        );
        let cls3 = InnerTupleClass { canonical: t3 };
        assert!(exists_symmetric_tuple(std::slice::from_ref(&cls3)).is_err());
    }
}
