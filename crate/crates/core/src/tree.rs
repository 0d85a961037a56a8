//! Closed subsets of Cantor space through their depth-`d` leaf traces.
//!
//! A node of level `m < d` is alive when some leaf below it is set. Gap and
//! porosity questions all reduce to "does every node of level `m` have a
//! dead descendant at level `m + k`", which is a `k`-fold pairwise AND of the
//! alive vector at level `m + k`.

use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::cantor::{cylinder, BinaryWord, ClopenSet};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::mask::ZeroMask;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedTree {
    set: ClopenSet,
}

impl ClosedTree {
    pub fn new(set: ClopenSet) -> Self {
        ClosedTree { set }
    }

    pub fn empty(depth: usize) -> Result<Self> {
        Ok(ClosedTree::new(ClopenSet::empty(depth)?))
    }

    pub fn full(depth: usize) -> Result<Self> {
        Ok(ClosedTree::new(ClopenSet::full(depth)?))
    }

    pub fn from_leaves(depth: usize, leaves: BitVec) -> Result<Self> {
        Ok(ClosedTree::new(ClopenSet::from_leaves(depth, leaves)?))
    }

    /// Leaves chosen by a predicate on the depth-`d` word.
    pub fn from_word_fn(depth: usize, mut f: impl FnMut(&BinaryWord) -> bool) -> Result<Self> {
        if depth > crate::cantor::MAX_DEPTH {
            return Err(Error::DepthTooLarge {
                depth,
                limit: crate::cantor::MAX_DEPTH,
            });
        }
        let leaves = BitVec::from_fn(1 << depth, |i| f(&BinaryWord::from_index(i as u64, depth)));
        ClosedTree::from_leaves(depth, leaves)
    }

    pub fn depth(&self) -> usize {
        self.set.depth()
    }

    pub fn as_clopen(&self) -> &ClopenSet {
        &self.set
    }

    pub fn into_clopen(self) -> ClopenSet {
        self.set
    }

    pub fn leaves(&self) -> &BitVec {
        self.set.leaves()
    }

    pub fn leaf_count(&self) -> u64 {
        self.set.leaf_count()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn measure(&self) -> Dyadic {
        self.set.measure()
    }

    /// Alive nodes of one level, `2^level` bits.
    pub fn alive_level(&self, level: usize) -> BitVec {
        debug_assert!(level <= self.depth());
        let mut v = self.leaves().clone();
        for _ in level..self.depth() {
            v = v.pair_or();
        }
        v
    }

    /// Whether `[w]` meets the set.
    pub fn is_alive(&self, w: &BinaryWord) -> bool {
        self.set.meets_cylinder(w)
    }

    /// Lexicographically least `δ ⊇ prefix` with `|δ| = len` and `[δ]`
    /// disjoint from the set.
    pub fn least_dead_extension(&self, prefix: &BinaryWord, len: usize) -> Option<BinaryWord> {
        let (d, p) = (self.depth(), prefix.len());
        debug_assert!(p <= len && len <= d);
        let lo = (prefix.to_index() as usize) << (d - p);
        let mut alive = self.leaves().slice(lo, lo + (1 << (d - p)));
        for _ in len..d {
            alive = alive.pair_or();
        }
        alive
            .first_zero()
            .map(|s| prefix.concat(&BinaryWord::from_index(s as u64, len - p)))
    }
}

/// Every node of `alive`'s level has a dead descendant `k` levels down.
fn every_node_escapes(alive: &BitVec, k: usize) -> bool {
    let mut v = alive.clone();
    for _ in 0..k {
        v = v.pair_and();
    }
    v.is_zero()
}

/// Least `k` such that every node of level `m` has a dead descendant at
/// level `m + k`. The empty tree has gap 0.
pub fn nd_gap(c: &ClosedTree, m: usize) -> Result<usize> {
    let d = c.depth();
    if m >= d && !(m == d && c.is_empty()) {
        return Err(Error::InvalidParameter(alloc::format!(
            "gap level {m} must be below the depth {d}"
        )));
    }
    let mut levels: Vec<BitVec> = Vec::with_capacity(d - m + 1);
    let mut v = c.leaves().clone();
    levels.push(v.clone());
    for _ in m..d {
        v = v.pair_or();
        levels.push(v.clone());
    }
    levels.reverse(); // levels[i] is level m + i
    (0..=d - m)
        .find(|&k| every_node_escapes(&levels[k], k))
        .ok_or(Error::NotNowhereDense { level: m, depth: d })
}

/// `γ ∈ 2^(m+k)` with `α ⊆ γ` and `([γ] + [β]) ∩ C = ∅`: `γ = β ⊕ δ` for the
/// least dead `δ` extending `α ⊕ β↾m`.
pub fn lemma_xd_gamma(
    c: &ClosedTree,
    m: usize,
    k: usize,
    alpha: &BinaryWord,
    beta: &BinaryWord,
) -> Result<BinaryWord> {
    check_extension_shape(c, m, k, alpha, beta)?;
    let required = nd_gap(c, m)?;
    if k < required {
        return Err(Error::GapTooSmall { given: k, required });
    }
    let start = alpha.xor(&beta.prefix(m))?;
    let delta = c
        .least_dead_extension(&start, m + k)
        .ok_or(Error::GapTooSmall { given: k, required })?;
    beta.xor(&delta)
}

pub(crate) fn check_extension_shape(
    c: &ClosedTree,
    m: usize,
    k: usize,
    alpha: &BinaryWord,
    beta: &BinaryWord,
) -> Result<()> {
    if alpha.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: alpha.len(),
        });
    }
    if beta.len() != m + k {
        return Err(Error::LengthMismatch {
            expected: m + k,
            found: beta.len(),
        });
    }
    if m + k > c.depth() {
        return Err(Error::DepthTooSmall {
            depth: c.depth(),
            requested: m + k,
        });
    }
    Ok(())
}

/// Every `α ∈ 2^m`, `m ≤ d − k`, has a dead extension in `2^(m+k)`.
pub fn is_k_porous_to_depth(t: &ClosedTree, k: usize) -> Result<bool> {
    let d = t.depth();
    if k == 0 || k > d {
        return Err(Error::InvalidParameter(alloc::format!(
            "porosity constant {k} outside 1..={d}"
        )));
    }
    let mut alive = t.leaves().clone();
    for level in (k..=d).rev() {
        if !every_node_escapes(&alive, k) {
            return Ok(false);
        }
        if level > k {
            alive = alive.pair_or();
        }
    }
    Ok(true)
}

/// Least `k ≥ 1` for which the tree is `k`-porous to its depth.
pub fn porosity_constant(t: &ClosedTree) -> Option<usize> {
    if t.is_empty() {
        return Some(1);
    }
    (1..=t.depth()).find(|&k| is_k_porous_to_depth(t, k).unwrap_or(false))
}

/// `(1 − 2^−k)^⌊d/k⌋`.
pub fn porous_density_bound(depth: usize, k: usize) -> Dyadic {
    let factor = Dyadic::new((1u64 << k) - 1, k as u32);
    factor.pow((depth / k) as u32)
}

/// Leaf density against the porous bound; the tree must be `k`-porous.
pub fn porous_density_check(t: &ClosedTree, k: usize) -> Result<bool> {
    if !is_k_porous_to_depth(t, k)? {
        return Err(Error::NotPorous { k });
    }
    Ok(t.measure() <= porous_density_bound(t.depth(), k))
}

/// All `(n, β)` with `n ≤ |x| − K`, `β = x↾n ⌢ 1^K`, where `β` sets some
/// mask coordinate and hence `[β]` misses the mask set. When no mask
/// coordinate lies in `[n, n + K)` no extension of `x↾n` escapes, so the
/// list is complete.
pub fn upper_porosity_witnesses(
    mask: ZeroMask,
    x: &BinaryWord,
    big_k: usize,
) -> Result<Vec<(usize, BinaryWord)>> {
    mask.check_word(x)?;
    if big_k == 0 || big_k > x.len() {
        return Err(Error::InvalidParameter(alloc::format!(
            "window {big_k} must lie in 1..={}",
            x.len()
        )));
    }
    Ok((0..=x.len() - big_k)
        .filter(|&n| (n..n + big_k).any(|i| mask.contains(i)))
        .map(|n| (n, x.prefix(n).concat(&BinaryWord::ones(big_k))))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadPlan {
    /// Zero-pad to the first mask-free run of the block length.
    Greedy,
    /// Block starts from the mask's closed form.
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapeStep {
    pub index: usize,
    pub k: usize,
    pub pad_from: usize,
    pub start: usize,
    pub block: BinaryWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escape {
    pub word: BinaryWord,
    pub steps: Vec<EscapeStep>,
}

/// A word vanishing on the mask whose cylinder misses every `T_j`.
///
/// Step `j` zero-pads the current word up to a mask-free run of length
/// `k_j` and appends the least block that kills `T_j`. The result is padded
/// with zeros to at least `min_len`.
pub fn escape_porous(
    mask: ZeroMask,
    trees: &[(usize, ClosedTree)],
    plan: PadPlan,
    min_len: usize,
) -> Result<Escape> {
    let mut t = BinaryWord::empty();
    let mut steps = Vec::with_capacity(trees.len());
    let mut prev_k = 0;
    for (index, (k, tree)) in trees.iter().enumerate() {
        let k = *k;
        if k < prev_k {
            return Err(Error::InvalidParameter(alloc::format!(
                "porosity constants must be nondecreasing, {k} follows {prev_k}"
            )));
        }
        prev_k = k;
        if !is_k_porous_to_depth(tree, k)? {
            return Err(Error::NotPorous { k });
        }
        let d = tree.depth();
        let pad_from = t.len();
        let start = match plan {
            PadPlan::Greedy => mask.first_free_run(pad_from, k, d)?,
            PadPlan::ClosedForm => {
                let s = mask.closed_form_block_start(k, pad_from)?;
                if s + k > d {
                    return Err(Error::MaskStarved {
                        from: pad_from,
                        run: k,
                        limit: d,
                    });
                }
                s
            }
        };
        let alpha = t.fit(start);
        let tau = tree
            .least_dead_extension(&alpha, start + k)
            .ok_or(Error::NotPorous { k })?;
        steps.push(EscapeStep {
            index,
            k,
            pad_from,
            start,
            block: tau.suffix_from(start),
        });
        t = tau;
    }
    let len = t.len().max(min_len);
    Ok(Escape {
        word: t.fit(len),
        steps,
    })
}

/// Recheck of an escape word by set operations only: `t` vanishes on the
/// mask and `[t] ∩ T_j = ∅` for every tree.
pub fn escape_holds(mask: ZeroMask, trees: &[(usize, ClosedTree)], t: &BinaryWord) -> Result<bool> {
    if mask.check_word(t).is_err() {
        return Ok(false);
    }
    for (_, tree) in trees {
        let d = tree.depth();
        let c = cylinder(&t.prefix(t.len().min(d)), d)?;
        if !c.intersect(tree.as_clopen())?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn no_11(depth: usize) -> ClosedTree {
        ClosedTree::from_word_fn(depth, |x| !x.bits().windows(2).any(|p| p[0] && p[1])).unwrap()
    }

    fn singleton_zero(depth: usize) -> ClosedTree {
        ClosedTree::from_word_fn(depth, |x| x.to_index() == 0).unwrap()
    }

    /// Gap by direct quantification over words.
    fn brute_gap(c: &ClosedTree, m: usize) -> Option<usize> {
        (0..=c.depth() - m).find(|&k| {
            (0..1u64 << m).all(|a| {
                let alpha = BinaryWord::from_index(a, m);
                (0..1u64 << k).any(|s| !c.is_alive(&alpha.concat(&BinaryWord::from_index(s, k))))
            })
        })
    }

    #[test]
    fn gap_examples() {
        assert_eq!(nd_gap(&singleton_zero(5), 0).unwrap(), 1);
        assert_eq!(nd_gap(&ClosedTree::empty(4).unwrap(), 2).unwrap(), 0);
        // even parity at depth 4: a length-3 node always keeps one even leaf,
        // so level-2 nodes need two more bits to escape
        let even = ClosedTree::from_word_fn(4, |x| x.bits().iter().filter(|&&b| b).count() % 2 == 0)
            .unwrap();
        assert_eq!(nd_gap(&even, 2).unwrap(), 2);
        assert_eq!(brute_gap(&even, 2), Some(2));
        assert!(matches!(
            nd_gap(&ClosedTree::full(3).unwrap(), 0),
            Err(Error::NotNowhereDense { .. })
        ));
        assert!(nd_gap(&even, 4).is_err());
    }

    #[test]
    fn gap_matches_brute_force() {
        for seed in 0..40u64 {
            let c = ClosedTree::from_word_fn(6, |x| {
                (x.to_index().wrapping_mul(0x9E37_79B9_7F4A_7C15 ^ seed) >> 59) % 3 == 0
            })
            .unwrap();
            for m in 0..6 {
                assert_eq!(nd_gap(&c, m).ok(), brute_gap(&c, m), "seed {seed} m {m}");
            }
        }
    }

    #[test]
    fn xd_examples() {
        let e = ClosedTree::empty(6).unwrap();
        let gamma = lemma_xd_gamma(&e, 2, 3, &w("10"), &w("01101")).unwrap();
        assert_eq!(gamma, w("10101"));
        let c = singleton_zero(1);
        assert_eq!(lemma_xd_gamma(&c, 0, 1, &w(""), &w("1")).unwrap(), w("0"));
        assert!(matches!(
            lemma_xd_gamma(&singleton_zero(4), 1, 0, &w("0"), &w("0")),
            Err(Error::GapTooSmall { .. })
        ));
        assert!(lemma_xd_gamma(&c, 0, 1, &w("1"), &w("1")).is_err());
    }

    #[test]
    fn xd_postcondition_exhaustive() {
        let c = no_11(6);
        for m in 0..4 {
            let k = nd_gap(&c, m).unwrap();
            for a in 0..1u64 << m {
                for b in 0..1u64 << (m + k) {
                    let alpha = BinaryWord::from_index(a, m);
                    let beta = BinaryWord::from_index(b, m + k);
                    let gamma = lemma_xd_gamma(&c, m, k, &alpha, &beta).unwrap();
                    assert!(alpha.is_prefix_of(&gamma));
                    let sum = ClopenSet::from_words(6, [&gamma])
                        .unwrap()
                        .xor_sumset(&cylinder(&beta, 6).unwrap())
                        .unwrap();
                    assert!(sum.is_disjoint(c.as_clopen()).unwrap());
                }
            }
        }
    }

    #[test]
    fn porosity_examples() {
        let e = ClosedTree::empty(5).unwrap();
        let f = ClosedTree::full(5).unwrap();
        for k in 1..=5 {
            assert!(is_k_porous_to_depth(&e, k).unwrap());
            assert!(!is_k_porous_to_depth(&f, k).unwrap());
        }
        let t = no_11(6);
        assert!(is_k_porous_to_depth(&t, 2).unwrap());
        assert!(!is_k_porous_to_depth(&t, 1).unwrap());
        assert_eq!(porosity_constant(&t), Some(2));
        assert_eq!(porosity_constant(&e), Some(1));
        assert_eq!(porosity_constant(&f), None);
        assert!(is_k_porous_to_depth(&t, 0).is_err());
    }

    #[test]
    fn porosity_matches_definition() {
        let brute = |t: &ClosedTree, k: usize| {
            (0..=t.depth() - k).all(|m| {
                (0..1u64 << m).all(|a| {
                    let alpha = BinaryWord::from_index(a, m);
                    (0..1u64 << k).any(|s| !t.is_alive(&alpha.concat(&BinaryWord::from_index(s, k))))
                })
            })
        };
        for seed in 0..60u64 {
            let t = ClosedTree::from_word_fn(6, |x| {
                (x.to_index() ^ seed).wrapping_mul(0x2545_F491_4F6C_DD1D).count_ones() % 4 != 0
            })
            .unwrap();
            for k in 1..=6 {
                assert_eq!(is_k_porous_to_depth(&t, k).unwrap(), brute(&t, k), "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn density_examples() {
        assert_eq!(porous_density_bound(6, 1), Dyadic::half_pow(6));
        assert_eq!(porous_density_bound(10, 2), Dyadic::new(243u32, 10));
        let t = singleton_zero(6);
        assert!(is_k_porous_to_depth(&t, 1).unwrap());
        assert!(porous_density_check(&t, 1).unwrap());
        assert!(porous_density_check(&ClosedTree::empty(6).unwrap(), 3).unwrap());
        assert!(porous_density_check(&no_11(8), 2).unwrap());
        assert!(matches!(
            porous_density_check(&no_11(8), 1),
            Err(Error::NotPorous { k: 1 })
        ));
    }

    #[test]
    fn upper_porosity_examples() {
        let x = BinaryWord::zeros(17);
        let found = upper_porosity_witnesses(ZeroMask::Pow2Pairs, &x, 2).unwrap();
        let ns: Vec<usize> = found.iter().map(|(n, _)| *n).collect();
        for n in [1, 3, 7, 15] {
            assert!(ns.contains(&n), "{n}");
        }
        for (n, beta) in &found {
            assert_eq!(beta.len(), n + 2);
            assert!(beta.suffix_from(*n) == w("11"));
            assert!(ZeroMask::Pow2Pairs.check_word(beta).is_err());
        }
        assert!(upper_porosity_witnesses(ZeroMask::Empty, &x, 2).unwrap().is_empty());
        let edge = upper_porosity_witnesses(ZeroMask::Pow2Pairs, &x, 17).unwrap();
        assert!(edge.iter().all(|(n, _)| *n == 0));
        assert!(upper_porosity_witnesses(ZeroMask::Pow2Pairs, &w("01"), 1).is_err());
    }

    #[test]
    fn escape_examples() {
        let e = escape_porous(ZeroMask::Pow2Pairs, &[], PadPlan::Greedy, 8).unwrap();
        assert_eq!(e.word, BinaryWord::zeros(8));
        // one 1-porous tree: all leaves beginning with 0 except a single path
        let t = ClosedTree::from_word_fn(8, |x| x.to_index() == 0).unwrap();
        let trees = [(1, t)];
        let e = escape_porous(ZeroMask::Pow2Pairs, &trees, PadPlan::Greedy, 8).unwrap();
        // coordinate 0 is free, and the least dead block there is "1"
        assert_eq!(e.word, w("10000000"));
        assert!(escape_holds(ZeroMask::Pow2Pairs, &trees, &e.word).unwrap());
    }

    #[test]
    fn escape_with_all_masks() {
        // bits at positions 0, k, 2k, ... all zero
        let d = 22;
        let trees: Vec<(usize, ClosedTree)> = (1..=3)
            .map(|k| {
                let m: u64 = (0..d).step_by(k).map(|p| 1u64 << (d - 1 - p)).sum();
                let leaves = BitVec::from_fn(1 << d, |i| i as u64 & m == 0);
                (k, ClosedTree::from_leaves(d, leaves).unwrap())
            })
            .collect();
        for (k, t) in &trees {
            assert!(is_k_porous_to_depth(t, *k).unwrap());
        }
        for mask in [ZeroMask::Pow2Pairs, ZeroMask::TriangularBlocks, ZeroMask::Empty] {
            for plan in [PadPlan::Greedy, PadPlan::ClosedForm] {
                let e = escape_porous(mask, &trees, plan, d).unwrap();
                assert!(escape_holds(mask, &trees, &e.word).unwrap(), "{mask:?} {plan:?}");
            }
        }
        let e = escape_porous(ZeroMask::Pow2Pairs, &trees, PadPlan::Greedy, 0).unwrap();
        let starts: Vec<usize> = e.steps.iter().map(|s| s.start).collect();
        assert_eq!(starts, [0, 6, 10]);
        let e = escape_porous(ZeroMask::TernaryBlocks, &trees[..1], PadPlan::Greedy, 0).unwrap();
        assert_eq!(e.steps[0].start, 1);
    }

    #[test]
    fn escape_rejects_bad_input() {
        let t = no_11(6);
        assert!(matches!(
            escape_porous(ZeroMask::Empty, &[(1, t.clone())], PadPlan::Greedy, 0),
            Err(Error::NotPorous { k: 1 })
        ));
        assert!(matches!(
            escape_porous(ZeroMask::TernaryBlocks, &[(2, no_11(6))], PadPlan::Greedy, 0),
            Err(Error::MaskStarved { .. })
        ));
        assert!(escape_porous(
            ZeroMask::Empty,
            &[(3, ClosedTree::empty(6).unwrap()), (2, t)],
            PadPlan::Greedy,
            0
        )
        .is_err());
    }
}
