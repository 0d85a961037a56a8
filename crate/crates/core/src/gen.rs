//! Seeded generators for test instances. All randomness comes from the
//! caller's generator.


use rand::Rng;

use crate::bits::BitVec;
use crate::cantor::{BinaryWord, ClopenSet};
use crate::error::Result;
use crate::gms::Cover;
use crate::tree::ClosedTree;

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, len: usize) -> BinaryWord {
    BinaryWord::new((0..len).map(|_| rng.gen()).collect())
}

/// Each leaf kept independently with probability `density`.
pub fn random_clopen<R: Rng + ?Sized>(rng: &mut R, depth: usize, density: f64) -> Result<ClopenSet> {
    let leaves = BitVec::from_fn(1 << depth, |_| rng.gen_bool(density));
    ClopenSet::from_leaves(depth, leaves)
}

/// Random family over `subset_count` subsets, as a family bit mask.
pub fn random_family<R: Rng + ?Sized>(rng: &mut R, subset_count: usize, density: f64) -> BitVec {
    BitVec::from_fn(subset_count, |_| rng.gen_bool(density))
}

/// Random leaves in which no two siblings are both kept, so every node
/// above the leaves has a dead leaf below it.
pub fn random_nowhere_dense_tree<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    density: f64,
) -> Result<ClosedTree> {
    if depth == 0 {
        return ClosedTree::empty(0);
    }
    let mut leaves = BitVec::zeros(1 << depth);
    for pair in 0..1usize << (depth - 1) {
        if rng.gen_bool(density) {
            leaves.set(2 * pair + usize::from(rng.gen::<bool>()), true);
        }
    }
    ClosedTree::from_leaves(depth, leaves)
}

/// A tree that is `k`-porous to `depth`: walking down the levels, every
/// node `k` levels up without a dead descendant gets one random descendant
/// killed. `extra` is the chance of an additional kill per level, applied
/// to a uniformly random node.
pub fn random_porous_tree<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    k: usize,
    extra: f64,
) -> Result<ClosedTree> {
    debug_assert!(k >= 1);
    let mut dead = BitVec::zeros(1);
    for level in 1..=depth {
        dead = dead.expand_pairs();
        if rng.gen_bool(extra) {
            let v = rng.gen_range(0..1usize << level);
            dead.set(v, true);
        }
        if level >= k {
            let mut covered = dead.clone();
            for _ in 0..k {
                covered = covered.pair_or();
            }
            for u in covered.not().iter_ones() {
                let r = rng.gen_range(0..1usize << k);
                dead.set((u << k) | r, true);
            }
        }
    }
    ClosedTree::from_leaves(depth, dead.not())
}

/// Cover words of the given lengths.
pub fn random_cover<R: Rng + ?Sized>(rng: &mut R, schedule: &[usize]) -> Cover {
    Cover::new(schedule.iter().map(|&len| random_word(rng, len)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{is_k_porous_to_depth, nd_gap};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn porous_generator_is_porous() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 1..=3 {
            for depth in [k, 2 * k + 1, 9] {
                let t = random_porous_tree(&mut rng, depth, k, 0.3).unwrap();
                assert!(is_k_porous_to_depth(&t, k).unwrap(), "k {k} depth {depth}");
            }
        }
        let t = random_porous_tree(&mut rng, 8, 1, 0.0).unwrap();
        assert_eq!(t.leaf_count(), 1);
    }

    #[test]
    fn nowhere_dense_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for depth in 1..10 {
            let t = random_nowhere_dense_tree(&mut rng, depth, 0.8).unwrap();
            for m in 0..depth {
                assert!(nd_gap(&t, m).is_ok());
            }
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_clopen(&mut ChaCha8Rng::seed_from_u64(3), 8, 0.4).unwrap();
        let b = random_clopen(&mut ChaCha8Rng::seed_from_u64(3), 8, 0.4).unwrap();
        assert_eq!(a, b);
        let w = random_word(&mut ChaCha8Rng::seed_from_u64(3), 20);
        assert_eq!(w, random_word(&mut ChaCha8Rng::seed_from_u64(3), 20));
    }
}
