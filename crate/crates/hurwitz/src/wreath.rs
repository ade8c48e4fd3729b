//! Reduction of an r-point cover to a 3-point cover: the wreath-product
//! Belyi triple of a generating tuple, and the inverse extraction of the
//! fiber tuple from such a triple.
//!
//! Composing a cover branched over r points with a cyclic map `x ↦ x^k`
//! (`k = r − 2`) merges the branch points into `{0, 1, ∞}`. On monodromy
//! this produces a degree-`n·k` triple `(σ₀, σ₁, σ_∞)` inside the wreath
//! product `G ≀ C_k`: the blocks are `k` copies of the original fiber,
//! `σ₀` permutes them cyclically (twisted by one tuple entry), and `σ₁`
//! acts blockwise by the middle entries.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{ids_to_blocks, PermGroup};
use crate::nielsen::{tuple_product, GeneratingTuple};
use crate::perm::Permutation;

/// Which tuple entry twists the cyclic block rotation, and in which
/// direction the middle entries are laid out along the blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchAssignment {
    /// `σ₀` twisted by the first entry; block `j` carries entry `r−1−j`.
    Standard,
    /// The standard assignment applied to the reversed-inverted tuple
    /// `(σ_r⁻¹, …, σ₁⁻¹)`; matches presentations that read the tuple in the
    /// opposite orientation.
    Reversed,
}

/// A permutation triple `(σ₀, σ₁, σ_∞)` with product one — the monodromy of
/// a cover branched over three points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BelyiTriple {
    /// Monodromy at 0.
    pub sigma0: Permutation,
    /// Monodromy at 1.
    pub sigma1: Permutation,
    /// Monodromy at ∞ (the inverse of `σ₀ ∘ σ₁`).
    pub sigma_inf: Permutation,
}

impl BelyiTriple {
    /// Build from the first two entries; `σ_∞ = (σ₀ ∘ σ₁)⁻¹`.
    pub fn from_pair(sigma0: Permutation, sigma1: Permutation) -> Result<BelyiTriple> {
        if sigma0.degree() != sigma1.degree() {
            return Err(Error::DegreeMismatch {
                left: sigma0.degree(),
                right: sigma1.degree(),
            });
        }
        let sigma_inf = sigma0.compose(&sigma1).inverse();
        Ok(BelyiTriple { sigma0, sigma1, sigma_inf })
    }

    /// Common degree of the three permutations.
    pub fn degree(&self) -> usize {
        self.sigma0.degree()
    }

    /// The entries as a slice-like array `[σ₀, σ₁, σ_∞]`.
    pub fn entries(&self) -> [&Permutation; 3] {
        [&self.sigma0, &self.sigma1, &self.sigma_inf]
    }

    /// Check the product-one identity `σ₀ ∘ σ₁ ∘ σ_∞ = 1`.
    pub fn is_product_one(&self) -> bool {
        self.sigma0.compose(&self.sigma1).compose(&self.sigma_inf).is_identity()
    }

    /// The group `⟨σ₀, σ₁⟩` as a permutation group.
    pub fn monodromy_group(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree(), vec![self.sigma0.clone(), self.sigma1.clone()])
    }
}

/// Index of the point `(i, j)` — fiber point `i` in block `j` — inside the
/// flattened degree-`n·k` set: blocks are laid out consecutively.
#[inline]
fn flat(i: usize, j: usize, n: usize) -> usize {
    j * n + i
}

/// The wreath-product Belyi triple of a generating tuple
/// `(t₁, …, t_r)`: a triple of degree `n·(r−2)` whose subcover data
/// recovers the tuple.
///
/// With `k = r − 2` and blocks `B₀, …, B_{k−1}` of size `n`:
/// `σ₀` maps `(i, j) ↦ (i, j+1)` for `j < k−1` and `(i, k−1) ↦ (τ(i), 0)`
/// with the twist `τ = t₁`; `σ₁` acts blockwise, on block `j` by the entry
/// assigned to it; `σ_∞ = (σ₀ ∘ σ₁)⁻¹`. The triple is transitive, has
/// product one, and `σ₀^k`, `σ_∞^k` lie in the blockwise base group with
/// components conjugate to `t₁` resp. `t_r`.
///
/// For `r = 3` the construction degenerates to the tuple itself.
pub fn wreath_belyi_triple(
    t: &GeneratingTuple,
    assignment: BranchAssignment,
) -> Result<BelyiTriple> {
    let entries: Vec<Permutation> = match assignment {
        BranchAssignment::Standard => t.entries().to_vec(),
        BranchAssignment::Reversed => {
            t.entries().iter().rev().map(|p| p.inverse()).collect()
        }
    };
    let r = entries.len();
    let n = t.group().degree();
    let k = r - 2;
    if k == 1 {
        // Degenerate case: the cyclic map is the identity.
        return BelyiTriple::from_pair(entries[0].clone(), entries[1].clone());
    }
    let nk = n * k;
    if nk > Permutation::MAX_DEGREE {
        return Err(Error::PointOutOfRange { point: nk, degree: Permutation::MAX_DEGREE });
    }

    // σ₀: block rotation twisted by τ = t₁ on the wrap-around.
    let tau = &entries[0];
    let mut s0 = vec![0u16; nk];
    for j in 0..k {
        for i in 0..n {
            let dst = if j + 1 < k {
                flat(i, j + 1, n)
            } else {
                flat(tau.image0(i), 0, n)
            };
            s0[flat(i, j, n)] = dst as u16;
        }
    }

    // σ₁: block j carries the entry m_j = t_{r−1−j} (so block 0 carries
    // t_{r−1}, …, block k−1 carries t₂).
    let mut s1 = vec![0u16; nk];
    for j in 0..k {
        let m = &entries[r - 2 - j];
        for i in 0..n {
            s1[flat(i, j, n)] = flat(m.image0(i), j, n) as u16;
        }
    }

    let triple = BelyiTriple::from_pair(
        Permutation::from_images(s0)?,
        Permutation::from_images(s1)?,
    )?;
    debug_assert!(triple.is_product_one());
    Ok(triple)
}

/// The canonical block system of a wreath triple: the orbits of the
/// blockwise subgroup `⟨σ₀^k, σ₀^a σ₁ σ₀^{−a} (0 ≤ a < k)⟩`, where `k` is
/// the number of blocks. Every generator preserves each block setwise, and
/// on a single block the restrictions generate the whole fiber monodromy
/// group, so for a genuine wreath triple the orbits are exactly the
/// blocks. Returns blocks as sorted 0-based point lists, ordered by their
/// minimal point.
///
/// `k` must divide the degree; the result is validated to be a partition
/// into `k` blocks.
pub fn wreath_block_system(triple: &BelyiTriple, k: usize) -> Result<Vec<Vec<usize>>> {
    let nk = triple.degree();
    if k == 0 || nk % k != 0 {
        return Err(Error::InvalidBlockSystem(format!(
            "{k} blocks cannot partition {nk} points"
        )));
    }
    let mut gens = vec![triple.sigma0.pow(k as i64)];
    for a in 0..k as i64 {
        let rot = triple.sigma0.pow(a);
        gens.push(rot.compose(&triple.sigma1).compose(&rot.inverse()));
    }
    // Union-find over points.
    let mut parent: Vec<usize> = (0..nk).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in &gens {
        for i in 0..nk {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.image0(i)));
            if a != b {
                parent[std::cmp::max(a, b)] = std::cmp::min(a, b);
            }
        }
    }
    let ids: Vec<usize> = (0..nk).map(|i| find(&mut parent, i)).collect();
    let blocks = ids_to_blocks(&ids);
    if blocks.len() != k {
        return Err(Error::InvalidBlockSystem(format!(
            "the blockwise subgroup has {} orbits, expected {k} blocks",
            blocks.len()
        )));
    }
    Ok(blocks)
}

/// Inverse of [`wreath_belyi_triple`]: recover the degree-`n` fiber tuple
/// from a triple and a block system.
///
/// The blocks must be cyclically permuted by `σ₀` and fixed setwise by
/// `σ₁`. Point labels inside each block are transported along `σ₀` from the
/// block containing the smallest point, making the result independent of
/// the input labeling up to simultaneous conjugation. The recovered tuple
/// is `(τ, m_{k−1}, …, m₀, closing entry)` with the closing entry solved
/// from the product-one condition; it is validated to generate a transitive
/// group and returned as a checked tuple.
pub fn extract_fiber_tuple(
    triple: &BelyiTriple,
    blocks: &[Vec<usize>],
) -> Result<GeneratingTuple> {
    let nk = triple.degree();
    let k = blocks.len();
    if k == 0 || nk % k != 0 {
        return Err(Error::InvalidBlockSystem(format!(
            "{k} blocks cannot partition {nk} points"
        )));
    }
    let n = nk / k;
    // Validate the partition.
    let mut seen = vec![false; nk];
    for b in blocks {
        if b.len() != n {
            return Err(Error::InvalidBlockSystem(format!(
                "block size {} differs from {n}",
                b.len()
            )));
        }
        for &x in b {
            if x >= nk || seen[x] {
                return Err(Error::InvalidBlockSystem(
                    "blocks do not partition the point set".into(),
                ));
            }
            seen[x] = true;
        }
    }

    // Block id of each point, and the induced action of σ₀ on blocks.
    let mut block_of = vec![usize::MAX; nk];
    for (bi, b) in blocks.iter().enumerate() {
        for &x in b {
            block_of[x] = bi;
        }
    }
    let image_block = |perm: &Permutation, bi: usize| -> Result<usize> {
        let target = block_of[perm.image0(blocks[bi][0])];
        for &x in &blocks[bi] {
            if block_of[perm.image0(x)] != target {
                return Err(Error::InvalidBlockSystem(format!(
                    "the triple does not preserve block {bi}"
                )));
            }
        }
        Ok(target)
    };
    // σ₁ must fix every block.
    for bi in 0..k {
        if image_block(&triple.sigma1, bi)? != bi {
            return Err(Error::InvalidBlockSystem(format!(
                "σ₁ moves block {bi}; blocks must be σ₁-invariant"
            )));
        }
    }
    // σ₀ must permute the blocks in a single k-cycle. Order blocks along it
    // starting from the block containing the smallest point.
    let start = block_of[0];
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut cur = start;
    for _ in 0..k {
        order.push(cur);
        cur = image_block(&triple.sigma0, cur)?;
    }
    if cur != start || {
        let mut s = order.clone();
        s.sort_unstable();
        s.dedup();
        s.len() != k
    } {
        return Err(Error::InvalidBlockSystem(
            "σ₀ does not permute the blocks in a single cycle".into(),
        ));
    }

    // Labels: enumerate block `order[0]` by sorted points, then transport
    // along σ₀. labels[j][i] = point of the j-th block (along the cycle)
    // carrying fiber label i.
    let mut labels: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut first = blocks[start].clone();
    first.sort_unstable();
    labels.push(first);
    for j in 1..k {
        let prev = &labels[j - 1];
        labels.push(prev.iter().map(|&x| triple.sigma0.image0(x)).collect());
    }
    // Position of each point inside its block's label list.
    let mut label_of = vec![usize::MAX; nk];
    for lab in &labels {
        for (i, &x) in lab.iter().enumerate() {
            label_of[x] = i;
        }
    }

    // Blockwise actions of σ₁ give the middle entries; the wrap-around of
    // σ₀^k on the first block gives the twist τ.
    let restrict = |perm: &Permutation, j: usize| -> Result<Permutation> {
        let imgs: Vec<u16> = (0..n)
            .map(|i| label_of[perm.image0(labels[j][i])] as u16)
            .collect();
        Permutation::from_images(imgs)
    };
    let tau = {
        let s0k = triple.sigma0.pow(k as i64);
        restrict(&s0k, 0)?
    };
    let mut entries: Vec<Permutation> = Vec::with_capacity(k + 2);
    entries.push(tau);
    // Block order[j] carries m_j; the tuple lists m_{k−1} down to m₀.
    for j in (0..k).rev() {
        entries.push(restrict(&triple.sigma1, j)?);
    }
    let closing = tuple_product(&entries).inverse();
    if closing.is_identity() {
        return Err(Error::IdentityEntry { index: k + 2 });
    }
    for (i, e) in entries.iter().enumerate() {
        if e.is_identity() {
            return Err(Error::IdentityEntry { index: i + 1 });
        }
    }
    entries.push(closing);

    // The recovered entries must generate a transitive group on the fiber.
    let group = Arc::new(PermGroup::new(n, entries.clone())?);
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(GeneratingTuple::new_unchecked(group, entries))
}
