//! Finite permutation groups: stabilizer chains, orbits, blocks, conjugacy
//! classes, centralizers, and canonical forms for tuples under conjugation.
//!
//! Everything here is exact. Orders are certified by a deterministic
//! Schreier–Sims stabilizer chain; conjugacy classes are closed by breadth
//! first search under generator conjugation; class-descriptor resolution is
//! made unambiguous by full element enumeration when the group order fits the
//! configured budget.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::perm::{CycleType, Permutation};

/// Default cap for full element enumeration (class-uniqueness resolution).
pub const DEFAULT_ELEMENT_BUDGET: usize = 2_000_000;

/// Default cap for a single conjugacy-class closure.
pub const DEFAULT_CLASS_BUDGET: usize = 5_000_000;

// ---------------------------------------------------------------------------
// Stabilizer chains
// ---------------------------------------------------------------------------

/// One level of a stabilizer chain.
#[derive(Clone)]
struct Level {
    /// Base point of this level (0-based).
    point: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Permutation>,
    /// Orbit of `point` under those generators, in discovery order.
    orbit: Vec<usize>,
    /// `transversal[x]` maps `point` to `x` when `x` is in the orbit.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        Level { point, gens: Vec::new(), orbit: Vec::new(), transversal: vec![None; degree] }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.orbit.push(self.point);
        self.transversal[self.point] = Some(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let y = g.image0(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap();
                    self.transversal[y] = Some(g.compose(u));
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// A base and strong generating set computed by deterministic Schreier–Sims.
///
/// The chain certifies the group order as the product of its orbit lengths
/// and answers membership by sifting.
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    /// Build a chain for the group generated by `gens` on `degree` points.
    ///
    /// `base_hints` are consumed in order when new base points are needed;
    /// pass the points whose stabilizers you want along the chain prefix.
    pub fn build(degree: usize, gens: &[Permutation], base_hints: &[usize]) -> Bsgs {
        let mut chain = Bsgs { degree, levels: Vec::new() };
        let mut hints: VecDeque<usize> = base_hints.iter().copied().collect();
        let nonid: Vec<Permutation> =
            gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if nonid.is_empty() {
            return chain;
        }
        chain.ensure_level(&nonid[0], &mut hints);
        for g in &nonid {
            chain.levels[0].gens.push(g.clone());
        }
        chain.levels[0].recompute_orbit(degree);
        chain.complete_level(0, &mut hints);
        chain
    }

    /// Create the next level for a generator that fixes all current base
    /// points, choosing the base point from the hints when possible.
    fn ensure_level(&mut self, mover: &Permutation, hints: &mut VecDeque<usize>) {
        let point = loop {
            match hints.pop_front() {
                Some(h) => {
                    if mover.image0(h) != h {
                        break h;
                    }
                    // Hint already fixed by the whole remaining group at this
                    // depth adds a useless level; skip it only when the mover
                    // fixes it, otherwise it would never gain an orbit > 1.
                    // (Skipped hints are simply dropped.)
                }
                None => {
                    break (0..self.degree)
                        .find(|&p| mover.image0(p) != p)
                        .expect("identity passed to ensure_level");
                }
            }
        };
        let mut level = Level::new(self.degree, point);
        level.recompute_orbit(self.degree);
        self.levels.push(level);
    }

    /// Sift `g` through levels `start..`; returns the residue and the level
    /// index at which sifting stopped (= number of levels passed).
    fn sift_from(&self, start: usize, g: &Permutation) -> (Permutation, usize) {
        let mut cur = g.clone();
        for j in start..self.levels.len() {
            let level = &self.levels[j];
            let x = cur.image0(level.point);
            match &level.transversal[x] {
                Some(u) => cur = u.inverse().compose(&cur),
                None => return (cur, j),
            }
        }
        (cur, self.levels.len())
    }

    /// Establish the chain invariant at `level` and below.
    fn complete_level(&mut self, level: usize, hints: &mut VecDeque<usize>) {
        'restart: loop {
            self.levels[level].recompute_orbit(self.degree);
            let orbit_len = self.levels[level].orbit.len();
            let gen_len = self.levels[level].gens.len();
            for oi in 0..orbit_len {
                for gi in 0..gen_len {
                    let (x, schreier) = {
                        let lv = &self.levels[level];
                        let x = lv.orbit[oi];
                        let g = &lv.gens[gi];
                        let u_x = lv.transversal[x].as_ref().unwrap();
                        let y = g.image0(x);
                        let u_y = lv.transversal[y].as_ref().unwrap();
                        (x, u_y.inverse().compose(&g.compose(u_x)))
                    };
                    let _ = x;
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, stop) = self.sift_from(level + 1, &schreier);
                    if residue.is_identity() {
                        continue;
                    }
                    if stop == self.levels.len() {
                        self.ensure_level(&residue, hints);
                    }
                    for k in 0..=stop.min(self.levels.len() - 1) {
                        self.levels[k].gens.push(residue.clone());
                        self.levels[k].recompute_orbit(self.degree);
                    }
                    if stop > level {
                        self.complete_level(stop, hints);
                    }
                    continue 'restart;
                }
            }
            return;
        }
    }

    /// Number of points.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The base (one point per level).
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Exact group order.
    pub fn order_big(&self) -> BigUint {
        let mut ord = BigUint::from(1u32);
        for level in &self.levels {
            ord *= BigUint::from(level.orbit.len());
        }
        ord
    }

    /// Group order as `u128`, erroring on overflow.
    pub fn order(&self) -> Result<u128> {
        let mut ord: u128 = 1;
        for level in &self.levels {
            ord = ord
                .checked_mul(level.orbit.len() as u128)
                .ok_or_else(|| Error::OrderOverflow("group order exceeds u128".into()))?;
        }
        Ok(ord)
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        self.sift_from(0, g).0.is_identity()
    }

    /// Strong generators fixing the first `k` base points pointwise.
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Permutation> {
        if k >= self.levels.len() {
            return Vec::new();
        }
        self.levels[k].gens.clone()
    }
}

/// Order of the subgroup generated by `gens` (fresh chain each call).
pub fn subgroup_order(degree: usize, gens: &[Permutation]) -> Result<u128> {
    Bsgs::build(degree, gens, &[]).order()
}

// ---------------------------------------------------------------------------
// Element table (full enumeration)
// ---------------------------------------------------------------------------

/// Flat arena of all group elements, with a sorted index for lookups.
pub struct ElementTable {
    degree: usize,
    arena: Vec<u16>,
    count: usize,
    sorted: Vec<u32>,
}

impl fmt::Debug for ElementTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementTable(degree {}, {} elements)", self.degree, self.count)
    }
}

impl ElementTable {
    fn build(degree: usize, gens: &[Permutation], budget: usize) -> Result<ElementTable> {
        let n = degree;
        let mut arena: Vec<u16> = Vec::new();
        let mut map: HashMap<Vec<u16>, u32> = HashMap::new();
        let id: Vec<u16> = (0..n as u16).collect();
        arena.extend_from_slice(&id);
        map.insert(id, 0);
        let mut head = 0usize;
        let mut count = 1usize;
        let mut scratch = vec![0u16; n];
        while head < count {
            let base = head * n;
            for g in gens {
                let gi = g.images();
                for i in 0..n {
                    scratch[i] = gi[arena[base + i] as usize];
                }
                if !map.contains_key(scratch.as_slice()) {
                    if count >= budget {
                        return Err(Error::BudgetExceeded {
                            what: "full element enumeration".into(),
                            budget,
                        });
                    }
                    map.insert(scratch.clone(), count as u32);
                    arena.extend_from_slice(&scratch);
                    count += 1;
                }
            }
            head += 1;
        }
        drop(map);
        let mut sorted: Vec<u32> = (0..count as u32).collect();
        sorted.sort_unstable_by(|&a, &b| {
            let sa = &arena[a as usize * n..(a as usize + 1) * n];
            let sb = &arena[b as usize * n..(b as usize + 1) * n];
            sa.cmp(sb)
        });
        Ok(ElementTable { degree, arena, count, sorted })
    }

    /// Number of elements (= group order).
    pub fn len(&self) -> usize {
        self.count
    }

    /// True only for the trivial group's table before seeding (never here).
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Image table of element `i`.
    pub fn get(&self, i: usize) -> &[u16] {
        &self.arena[i * self.degree..(i + 1) * self.degree]
    }

    /// Element `i` as a [`Permutation`].
    pub fn perm(&self, i: usize) -> Permutation {
        Permutation::from_images(self.get(i).to_vec()).expect("arena holds valid permutations")
    }

    /// Index of the element with the given image table, if present.
    pub fn find(&self, images: &[u16]) -> Option<usize> {
        let n = self.degree;
        self.sorted
            .binary_search_by(|&c| self.arena[c as usize * n..(c as usize + 1) * n].cmp(images))
            .ok()
            .map(|pos| self.sorted[pos] as usize)
    }
}

// ---------------------------------------------------------------------------
// Permutation groups
// ---------------------------------------------------------------------------

/// A conjugacy class located from a descriptor.
#[derive(Clone, Debug)]
pub struct ResolvedClass {
    /// A representative (minimal arena element when resolved exactly).
    pub rep: Permutation,
    /// Exact class size.
    pub size: usize,
    /// Element order of the class.
    pub order: u128,
    /// True when uniqueness of the matching class was certified by full
    /// enumeration; false when resolution had to trust sampling.
    pub uniqueness_verified: bool,
}

/// A finite permutation group given by generators.
///
/// Heavy invariants (stabilizer chain, full element table) are computed once
/// on demand and cached.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    bsgs: OnceCell<Bsgs>,
    elements: OnceCell<ElementTable>,
    element_budget: usize,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, {} generators)", self.degree, self.gens.len())
    }
}

impl PermGroup {
    /// Create a group from generators on `degree` points.
    ///
    /// Identity generators are dropped; degrees must agree.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            gens,
            bsgs: OnceCell::new(),
            elements: OnceCell::new(),
            element_budget: DEFAULT_ELEMENT_BUDGET,
        })
    }

    /// The symmetric group on `n` points.
    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    /// Override the element-enumeration budget (default 2·10⁶).
    pub fn with_element_budget(mut self, budget: usize) -> PermGroup {
        self.element_budget = budget;
        self
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators (identity removed).
    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    /// The cached stabilizer chain.
    pub fn bsgs(&self) -> &Bsgs {
        self.bsgs.get_or_init(|| Bsgs::build(self.degree, &self.gens, &[]))
    }

    /// Exact group order.
    pub fn order_big(&self) -> BigUint {
        self.bsgs().order_big()
    }

    /// Group order as `u128` (errors on overflow).
    pub fn order(&self) -> Result<u128> {
        self.bsgs().order()
    }

    /// Membership test.
    pub fn contains(&self, g: &Permutation) -> bool {
        self.bsgs().contains(g)
    }

    /// Orbit of a 0-based point.
    pub fn orbit0(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &self.gens {
                let y = g.image0(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit
    }

    /// All orbits (0-based points), ordered by least element.
    pub fn orbits0(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let orbit = self.orbit0(p);
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// True when the group has a single orbit.
    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit0(0).len() == self.degree
    }

    /// True when the group is 2-transitive.
    pub fn is_2_transitive(&self) -> bool {
        if self.degree < 2 {
            return false;
        }
        if !self.is_transitive() {
            return false;
        }
        // Transitive + point stabilizer transitive on the rest.
        let chain = Bsgs::build(self.degree, &self.gens, &[0]);
        let stab_gens = chain.stabilizer_gens(1);
        let stab = PermGroup::new(self.degree, stab_gens).unwrap();
        let start = if self.degree > 1 { 1 } else { 0 };
        stab.orbit0(start).len() == self.degree - 1
    }

    // -- block systems ------------------------------------------------------

    /// The minimal block system whose block contains both `a` and `b`
    /// (0-based), as a block-id-per-point table. Requires transitivity.
    pub fn minimal_block_system0(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            queue.push_back((a, b));
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.gens {
                let (gx, gy) = (g.image0(x), g.image0(y));
                let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
                if rx != ry {
                    parent[rx] = ry;
                    queue.push_back((gx, gy));
                }
            }
        }
        let mut block_id = vec![usize::MAX; n];
        let mut next = 0;
        for p in 0..n {
            let r = find(&mut parent, p);
            if block_id[r] == usize::MAX {
                block_id[r] = next;
                next += 1;
            }
            block_id[p] = block_id[r];
        }
        Ok(block_id)
    }

    /// All distinct nontrivial minimal block systems, each as a sorted list
    /// of blocks of 0-based points.
    pub fn minimal_block_systems0(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        let n = self.degree;
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for b in 1..n {
            let ids = self.minimal_block_system0(0, b)?;
            let blocks = ids_to_blocks(&ids);
            let k = blocks.len();
            if k == 1 || k == n {
                continue;
            }
            if seen.contains(&ids) {
                continue;
            }
            seen.push(ids);
            out.push(blocks);
        }
        Ok(out)
    }

    /// True when transitive with no nontrivial block system.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        Ok(self.minimal_block_systems0()?.is_empty())
    }

    // -- centre and centralizers --------------------------------------------

    /// The centre of the group.
    ///
    /// For a transitive group each central element is determined by the image
    /// of one point (the centre is semiregular), so candidates are found by
    /// constraint propagation. Intransitive groups fall back to scanning the
    /// full element table.
    pub fn centre(&self) -> Result<Vec<Permutation>> {
        if !self.is_transitive() {
            let table = self.element_table()?;
            let mut out = Vec::new();
            for i in 0..table.len() {
                let c = table.perm(i);
                if self.gens.iter().all(|g| c.commutes_with(g)) {
                    out.push(c);
                }
            }
            return Ok(out);
        }
        let n = self.degree;
        let mut out = Vec::new();
        'cand: for beta in 0..n {
            // Propagate c(g(x)) = g(c(x)) from c(0) = beta.
            let mut image = vec![u16::MAX; n];
            let mut used = vec![false; n];
            image[0] = beta as u16;
            used[beta] = true;
            let mut queue = vec![0usize];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for g in &self.gens {
                    let gx = g.image0(x);
                    let want = g.image0(image[x] as usize) as u16;
                    if image[gx] == u16::MAX {
                        if used[want as usize] {
                            continue 'cand;
                        }
                        image[gx] = want;
                        used[want as usize] = true;
                        queue.push(gx);
                    } else if image[gx] != want {
                        continue 'cand;
                    }
                }
            }
            if image.iter().any(|&v| v == u16::MAX) {
                continue;
            }
            let c = Permutation::from_images(image).expect("propagation built a bijection");
            if self.gens.iter().all(|g| c.commutes_with(g)) && self.contains(&c) {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Generators and exact order of the centralizer of `x` in the group.
    ///
    /// Computed by Schreier generators on the conjugation orbit of `x`; the
    /// generator set is grown until its certified order reaches
    /// `|G| / |class(x)|`.
    pub fn centralizer_gens(&self, x: &Permutation, class_budget: usize) -> Result<(Vec<Permutation>, u128)> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: x.degree() });
        }
        let order = self.order()?;
        // BFS the conjugation orbit, storing a transporter u with
        // elem = u x u⁻¹ for each orbit element.
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        let mut elems: Vec<Permutation> = vec![x.clone()];
        let mut trans: Vec<Permutation> = vec![Permutation::identity(self.degree)];
        index.insert(x.clone(), 0);
        let mut head = 0;
        while head < elems.len() {
            let cur = elems[head].clone();
            let u = trans[head].clone();
            head += 1;
            for g in &self.gens {
                let y = cur.conjugate_by(g);
                if !index.contains_key(&y) {
                    if elems.len() >= class_budget {
                        return Err(Error::BudgetExceeded {
                            what: "conjugacy class closure".into(),
                            budget: class_budget,
                        });
                    }
                    index.insert(y.clone(), elems.len() as u32);
                    trans.push(g.compose(&u));
                    elems.push(y);
                }
            }
        }
        let class_size = elems.len() as u128;
        if order % class_size != 0 {
            return Err(Error::OrderOverflow(
                "class size does not divide group order; internal invariant broken".into(),
            ));
        }
        let target = order / class_size;
        // Schreier generators of the stabilizer (= centralizer of x).
        let mut found: Vec<Permutation> = Vec::new();
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        let mut since_check = 0usize;
        for i in 0..elems.len().max(1) {
            if i >= elems.len() {
                break;
            }
            for g in &self.gens {
                let y = elems[i].conjugate_by(g);
                let yi = index[&y] as usize;
                let sg = trans[yi].inverse().compose(&g.compose(&trans[i]));
                if sg.is_identity() || seen.contains_key(&sg) {
                    continue;
                }
                seen.insert(sg.clone(), ());
                found.push(sg);
                since_check += 1;
                if since_check >= 16 {
                    since_check = 0;
                    if subgroup_order(self.degree, &found)? == target {
                        return Ok((found, target));
                    }
                }
            }
        }
        let got = subgroup_order(self.degree, &found)?;
        if got != target {
            return Err(Error::OrderOverflow(format!(
                "centralizer closure reached order {got}, expected {target}; internal invariant broken"
            )));
        }
        Ok((found, target))
    }

    /// True when the normalizer `N = N_G(⟨σ⟩)` fixes one cycle of `σ` setwise
    /// (no other cycle lies in that cycle's `N`-orbit).
    ///
    /// `N` is computed by orbit-stabilizer on the conjugation action on the
    /// element set `{σ, σ², …}` of the cyclic subgroup, with Schreier
    /// generators certified complete by order counting.
    pub fn cyclic_normalizer_fixes_cycle(&self, sigma: &Permutation, budget: usize) -> Result<bool> {
        if sigma.is_identity() {
            return Err(Error::IdentityEntry { index: 1 });
        }
        if !self.contains(sigma) {
            return Err(Error::NotAPermutation(format!("{sigma} is not in the group")));
        }
        let order = self.order()?;
        // Canonical key of the cyclic subgroup: its sorted nonidentity
        // elements. Conjugation acts elementwise on the set (conjugating a
        // single element would be wrong for composite orders, where not every
        // member generates).
        let mut seed = Vec::new();
        let mut p = sigma.clone();
        while !p.is_identity() {
            seed.push(p.clone());
            p = sigma.compose(&p);
        }
        seed.sort();
        let conj_set = |set: &[Permutation], g: &Permutation| -> Vec<Permutation> {
            let mut moved: Vec<Permutation> = set.iter().map(|x| x.conjugate_by(g)).collect();
            moved.sort();
            moved
        };
        let mut index: HashMap<Vec<Permutation>, u32> = HashMap::new();
        let mut sets: Vec<Vec<Permutation>> = vec![seed.clone()];
        let mut trans: Vec<Permutation> = vec![Permutation::identity(self.degree)];
        index.insert(seed, 0);
        let mut head = 0;
        while head < sets.len() {
            let u = trans[head].clone();
            let cur = sets[head].clone();
            head += 1;
            for g in &self.gens {
                let moved = conj_set(&cur, g);
                if !index.contains_key(&moved) {
                    if sets.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            what: "cyclic subgroup conjugation orbit".into(),
                            budget,
                        });
                    }
                    index.insert(moved.clone(), sets.len() as u32);
                    trans.push(g.compose(&u));
                    sets.push(moved);
                }
            }
        }
        let orbit = sets.len() as u128;
        if order % orbit != 0 {
            return Err(Error::OrderOverflow(
                "subgroup orbit size does not divide group order; internal invariant broken".into(),
            ));
        }
        let target = order / orbit;
        let mut norm_gens: Vec<Permutation> = Vec::new();
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        let mut done = false;
        'outer: for i in 0..sets.len() {
            for g in &self.gens {
                let moved = conj_set(&sets[i], g);
                let yi = index[&moved] as usize;
                let sg = trans[yi].inverse().compose(&g.compose(&trans[i]));
                if sg.is_identity() || seen.contains_key(&sg) {
                    continue;
                }
                seen.insert(sg.clone(), ());
                norm_gens.push(sg);
                if norm_gens.len() % 16 == 0 && subgroup_order(self.degree, &norm_gens)? == target {
                    done = true;
                    break 'outer;
                }
            }
        }
        if !done && subgroup_order(self.degree, &norm_gens)? != target {
            return Err(Error::OrderOverflow(
                "normalizer closure fell short; internal invariant broken".into(),
            ));
        }
        // Does some cycle of σ stay fixed (setwise) under every normalizer
        // generator?
        let cycles = sigma.cycles0();
        'cycles: for cycle in &cycles {
            let mut members = vec![false; self.degree];
            for &p in cycle {
                members[p] = true;
            }
            for g in &norm_gens {
                if cycle.iter().any(|&p| !members[g.image0(p)]) {
                    continue 'cycles;
                }
            }
            return Ok(true);
        }
        Ok(false)
    }

    // -- conjugacy classes --------------------------------------------------

    /// Closure of the conjugacy class of `rep` under generator conjugation.
    pub fn conjugacy_class(&self, rep: &Permutation, budget: usize) -> Result<Vec<Permutation>> {
        if rep.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: rep.degree() });
        }
        let mut index: HashMap<Permutation, ()> = HashMap::new();
        let mut elems = vec![rep.clone()];
        index.insert(rep.clone(), ());
        let mut head = 0;
        while head < elems.len() {
            let cur = elems[head].clone();
            head += 1;
            for g in &self.gens {
                let y = cur.conjugate_by(g);
                if !index.contains_key(&y) {
                    if elems.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            what: "conjugacy class closure".into(),
                            budget,
                        });
                    }
                    index.insert(y.clone(), ());
                    elems.push(y);
                }
            }
        }
        Ok(elems)
    }

    /// True when `a` and `b` are conjugate in the group.
    pub fn are_conjugate(&self, a: &Permutation, b: &Permutation, budget: usize) -> Result<bool> {
        if a.cycle_type() != b.cycle_type() {
            return Ok(false);
        }
        let class = self.conjugacy_class(a, budget)?;
        Ok(class.contains(b))
    }

    /// The full element table (built on first use; budget-capped).
    pub fn element_table(&self) -> Result<&ElementTable> {
        if let Some(t) = self.elements.get() {
            return Ok(t);
        }
        let t = ElementTable::build(self.degree, &self.gens, self.element_budget)?;
        let _ = self.elements.set(t);
        Ok(self.elements.get().unwrap())
    }

    /// All conjugacy classes whose elements have the given cycle type,
    /// as `(representative, size)` pairs. Requires full enumeration.
    pub fn classes_of_type(&self, ty: &CycleType) -> Result<Vec<(Permutation, usize)>> {
        let table = self.element_table()?;
        let n = self.degree;
        let mut of_type: Vec<u32> = Vec::new();
        for i in 0..table.len() {
            if cycle_type_of_images(table.get(i)) == *ty {
                of_type.push(i as u32);
            }
        }
        let mut visited = vec![false; table.len()];
        let mut out = Vec::new();
        let mut scratch = vec![0u16; n];
        for &start in &of_type {
            if visited[start as usize] {
                continue;
            }
            // BFS the class inside the table.
            let mut queue = vec![start];
            visited[start as usize] = true;
            let mut head = 0;
            let mut min_idx = start;
            while head < queue.len() {
                let cur = queue[head] as usize;
                head += 1;
                for g in &self.gens {
                    conjugate_images(table.get(cur), g, &mut scratch);
                    let j = table
                        .find(&scratch)
                        .expect("conjugate of a group element is a group element");
                    if !visited[j] {
                        visited[j] = true;
                        if table.get(j) < table.get(min_idx as usize) {
                            min_idx = j as u32;
                        }
                        queue.push(j as u32);
                    }
                }
            }
            out.push((table.perm(min_idx as usize), queue.len()));
        }
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }

    /// Resolve a class descriptor (cycle type, optional size and element
    /// order) to the unique matching conjugacy class.
    ///
    /// When the group order fits the element budget, uniqueness is certified
    /// exactly by full enumeration; otherwise resolution errors with
    /// [`Error::BudgetExceeded`].
    pub fn resolve_class(
        &self,
        ty: &CycleType,
        size: Option<usize>,
        order: Option<u128>,
    ) -> Result<ResolvedClass> {
        if ty.degree() != self.degree {
            return Err(Error::NoMatchingClass(format!(
                "cycle type {ty} has degree {} but the group acts on {} points",
                ty.degree(),
                self.degree
            )));
        }
        let type_order = ty.order()?;
        if let Some(o) = order {
            if o != type_order {
                return Err(Error::NoMatchingClass(format!(
                    "cycle type {ty} forces element order {type_order}, descriptor says {o}"
                )));
            }
        }
        let classes = self.classes_of_type(ty)?;
        let matching: Vec<&(Permutation, usize)> =
            classes.iter().filter(|(_, s)| size.map_or(true, |want| *s == want)).collect();
        let desc = match size {
            Some(s) => format!("{ty} size={s}"),
            None => format!("{ty}"),
        };
        match matching.len() {
            0 => Err(Error::NoMatchingClass(desc)),
            1 => Ok(ResolvedClass {
                rep: matching[0].0.clone(),
                size: matching[0].1,
                order: type_order,
                uniqueness_verified: true,
            }),
            _ => Err(Error::AmbiguousClass(format!(
                "{desc} ({} classes match; sizes {:?})",
                matching.len(),
                matching.iter().map(|(_, s)| *s).collect::<Vec<_>>()
            ))),
        }
    }

    /// True when the class of `rep` is rational: closed under `k`-th powers
    /// for every `k` coprime to the element order.
    pub fn class_is_rational(&self, rep: &Permutation, budget: usize) -> Result<bool> {
        let ord = rep.order()?;
        if ord > u64::MAX as u128 {
            return Err(Error::OrderOverflow("element order too large for rationality scan".into()));
        }
        let ord = ord as u64;
        let class = self.conjugacy_class(rep, budget)?;
        let set: HashMap<&Permutation, ()> = class.iter().map(|p| (p, ())).collect();
        for k in 2..ord {
            if gcd_u64(k, ord) != 1 {
                continue;
            }
            let pk = rep.pow(k as i64);
            if !set.contains_key(&pk) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // -- canonical forms for tuples -----------------------------------------

    /// Lexicographically minimal conjugate of `tuple` under simultaneous
    /// conjugation by the group, together with a conjugator realizing it.
    ///
    /// Minimization is layered: row 1 is minimized over its conjugation
    /// orbit, then row 2 over the orbit under the stabilizer of the new
    /// row 1, and so on. Stabilizer generators are obtained as Schreier
    /// generators and certified complete by order counting.
    pub fn minimal_conjugate_tuple(
        &self,
        tuple: &[Permutation],
        orbit_budget: usize,
    ) -> Result<(Vec<Permutation>, Permutation)> {
        for t in tuple {
            if t.degree() != self.degree {
                return Err(Error::DegreeMismatch { left: self.degree, right: t.degree() });
            }
        }
        let mut current: Vec<Permutation> = tuple.to_vec();
        let mut total = Permutation::identity(self.degree);
        let mut level_gens: Vec<Permutation> = self.gens.clone();
        let mut level_order = self.order()?;
        for row in 0..current.len() {
            if level_gens.is_empty() || level_order == 1 {
                break;
            }
            let (conjugator, stab_gens, stab_order) = minimize_over_conjugation(
                self.degree,
                &current[row],
                &level_gens,
                level_order,
                orbit_budget,
            )?;
            for item in current.iter_mut() {
                *item = item.conjugate_by(&conjugator);
            }
            total = conjugator.compose(&total);
            level_gens = stab_gens;
            level_order = stab_order;
        }
        Ok((current, total))
    }
}

/// Convert a block-id-per-point table to sorted blocks (ids need not be
/// contiguous; empty slots are dropped).
pub(crate) fn ids_to_blocks(ids: &[usize]) -> Vec<Vec<usize>> {
    let k = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); k];
    for (p, &b) in ids.iter().enumerate() {
        blocks[b].push(p);
    }
    blocks.retain(|b| !b.is_empty());
    blocks.sort();
    blocks
}

/// Cycle type straight from an image table (no allocation of a Permutation).
fn cycle_type_of_images(images: &[u16]) -> CycleType {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut lens = Vec::new();
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
        lens.push(len);
    }
    CycleType::from_lengths(&lens)
}

/// `out = g ∘ x ∘ g⁻¹` on raw image tables.
fn conjugate_images(x: &[u16], g: &Permutation, out: &mut [u16]) {
    let gi = g.images();
    for i in 0..x.len() {
        out[gi[i] as usize] = gi[x[i] as usize];
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd_u64(b, a % b) }
}

/// Minimize `x` over conjugation by `⟨gens⟩` (of known order `group_order`).
///
/// Returns `(conjugator c, stabilizer gens of min, stabilizer order)` where
/// `min = c x c⁻¹` is the lexicographic minimum of the orbit and the
/// stabilizer is the centralizer of `min` inside `⟨gens⟩`, certified complete
/// by reaching order `group_order / orbit_size`.
fn minimize_over_conjugation(
    degree: usize,
    x: &Permutation,
    gens: &[Permutation],
    group_order: u128,
    orbit_budget: usize,
) -> Result<(Permutation, Vec<Permutation>, u128)> {
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    let mut elems: Vec<Permutation> = vec![x.clone()];
    let mut trans: Vec<Permutation> = vec![Permutation::identity(degree)];
    index.insert(x.clone(), 0);
    let mut head = 0;
    let mut min_i = 0usize;
    while head < elems.len() {
        let cur = elems[head].clone();
        let u = trans[head].clone();
        head += 1;
        for g in gens {
            let y = cur.conjugate_by(g);
            if !index.contains_key(&y) {
                if elems.len() >= orbit_budget {
                    return Err(Error::BudgetExceeded {
                        what: "conjugation orbit in tuple canonicalization".into(),
                        budget: orbit_budget,
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
    let orbit = elems.len() as u128;
    if group_order % orbit != 0 {
        return Err(Error::OrderOverflow(
            "orbit size does not divide group order; internal invariant broken".into(),
        ));
    }
    let stab_target = group_order / orbit;
    let c = trans[min_i].clone();
    if stab_target == 1 {
        return Ok((c, Vec::new(), 1));
    }
    // Schreier generators of the stabilizer of x, transported to stabilize
    // the minimum: s ↦ c s c⁻¹.
    let mut found: Vec<Permutation> = Vec::new();
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut since_check = 0usize;
    for i in 0..elems.len() {
        for g in gens {
            let y = elems[i].conjugate_by(g);
            let yi = index[&y] as usize;
            let sg = trans[yi].inverse().compose(&g.compose(&trans[i]));
            if sg.is_identity() {
                continue;
            }
            let sg = sg.conjugate_by(&c);
            if seen.contains_key(&sg) {
                continue;
            }
            seen.insert(sg.clone(), ());
            found.push(sg);
            since_check += 1;
            if since_check >= 16 {
                since_check = 0;
                if subgroup_order(degree, &found)? == stab_target {
                    return Ok((c, found, stab_target));
                }
            }
        }
    }
    let got = subgroup_order(degree, &found)?;
    if got != stab_target {
        return Err(Error::OrderOverflow(format!(
            "stabilizer closure reached order {got}, expected {stab_target}; internal invariant broken"
        )));
    }
    Ok((c, found, stab_target))
}

/// Find a permutation `c` with `c a_k c⁻¹ = b_k` for all `k`, if one exists
/// in the full symmetric group.
///
/// Uses constraint propagation: choosing the image of one point forces the
/// images of its whole orbit under the tuple entries, so the search
/// backtracks only across orbit seeds.
pub fn tuples_conjugate_in_sn(a: &[Permutation], b: &[Permutation]) -> Option<Permutation> {
    if a.len() != b.len() || a.is_empty() {
        return if a.len() == b.len() { Some(Permutation::identity(0)) } else { None };
    }
    let n = a[0].degree();
    if a.iter().chain(b.iter()).any(|p| p.degree() != n) {
        return None;
    }
    for k in 0..a.len() {
        if a[k].cycle_type() != b[k].cycle_type() {
            return None;
        }
    }
    let mut forward = vec![u16::MAX; n];
    let mut backward = vec![u16::MAX; n];
    if extend_tuple_map(a, b, &mut forward, &mut backward) {
        let images = forward;
        return Some(Permutation::from_images(images).expect("closure built a bijection"));
    }
    None
}

fn extend_tuple_map(
    a: &[Permutation],
    b: &[Permutation],
    forward: &mut Vec<u16>,
    backward: &mut Vec<u16>,
) -> bool {
    let n = forward.len();
    let p = match (0..n).find(|&p| forward[p] == u16::MAX) {
        Some(p) => p,
        None => return true,
    };
    for q in 0..n {
        if backward[q] != u16::MAX {
            continue;
        }
        let save_f = forward.clone();
        let save_b = backward.clone();
        forward[p] = q as u16;
        backward[q] = p as u16;
        let mut queue = vec![p];
        let mut ok = true;
        let mut head = 0;
        'prop: while head < queue.len() {
            let x = queue[head];
            head += 1;
            for k in 0..a.len() {
                let ax = a[k].image0(x);
                let bx = b[k].image0(forward[x] as usize) as u16;
                if forward[ax] == u16::MAX {
                    if backward[bx as usize] != u16::MAX {
                        ok = false;
                        break 'prop;
                    }
                    forward[ax] = bx;
                    backward[bx as usize] = ax as u16;
                    queue.push(ax);
                } else if forward[ax] != bx {
                    ok = false;
                    break 'prop;
                }
            }
        }
        if ok && extend_tuple_map(a, b, forward, backward) {
            return true;
        }
        *forward = save_f;
        *backward = save_b;
    }
    false
}
