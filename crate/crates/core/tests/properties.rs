use cantor_star_core::gen::random_clopen;
use cantor_star_core::{BinaryWord, ClopenSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sets(seed: u64, depths: [usize; 3], density: f64) -> [ClopenSet; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    depths.map(|d| random_clopen(&mut rng, d, density).unwrap())
}

/// `A + B` by the definition, at the larger depth.
fn sumset_by_pairs(a: &ClopenSet, b: &ClopenSet) -> ClopenSet {
    let d = a.depth().max(b.depth());
    let (a, b) = (a.refine(d).unwrap(), b.refine(d).unwrap());
    let mut out = ClopenSet::empty(d).unwrap();
    for x in 0..1usize << d {
        for y in 0..1usize << d {
            if a.contains_leaf(x) && b.contains_leaf(y) {
                let w = BinaryWord::from_index((x ^ y) as u64, d);
                out.add_cylinder(&w).unwrap();
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sumset_commutes_and_associates(
        seed in any::<u64>(),
        da in 0usize..=10, db in 0usize..=10, dc in 0usize..=10,
        density in 0.0f64..0.6,
    ) {
        let [a, b, c] = sets(seed, [da, db, dc], density);
        let ab = a.xor_sumset(&b).unwrap();
        prop_assert_eq!(&ab, &b.xor_sumset(&a).unwrap());
        prop_assert_eq!(
            ab.xor_sumset(&c).unwrap(),
            a.xor_sumset(&b.xor_sumset(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn translation_and_refinement_keep_measure(
        seed in any::<u64>(), d in 0usize..=12, extra in 0usize..=4, density in 0.0f64..1.0,
    ) {
        let [a, _, _] = sets(seed, [d, 0, 0], density);
        let w = BinaryWord::from_index(seed % (1u64 << d), d);
        prop_assert_eq!(a.translate(&w).unwrap().measure(), a.measure());
        let single = ClopenSet::from_words(d, [&w]).unwrap();
        prop_assert_eq!(a.xor_sumset(&single).unwrap().measure(), a.measure());
        prop_assert_eq!(a.refine(d + extra).unwrap().measure(), a.measure());
    }

    #[test]
    fn sumset_matches_pair_enumeration(
        seed in any::<u64>(), da in 0usize..=6, db in 0usize..=6, density in 0.0f64..0.5,
    ) {
        let [a, b, _] = sets(seed, [da, db, 0], density);
        prop_assert_eq!(a.xor_sumset(&b).unwrap(), sumset_by_pairs(&a, &b));
    }

    #[test]
    fn complement_measures_add_to_one(seed in any::<u64>(), d in 0usize..=12) {
        let [a, _, _] = sets(seed, [d, 0, 0], 0.5);
        let total = a.union(&a.complement()).unwrap();
        prop_assert!(total.is_full());
        prop_assert!(a.intersect(&a.complement()).unwrap().is_empty());
    }
}

/// `A + B = 2^d` exactly when every translate of `A` meets `B`.
fn duality_holds(a: &ClopenSet, b: &ClopenSet) -> bool {
    let d = a.depth();
    let full = a.xor_sumset(b).unwrap().is_full();
    let some_disjoint = (0..1u64 << d).any(|z| {
        a.translate(&BinaryWord::from_index(z, d))
            .unwrap()
            .is_disjoint(b)
            .unwrap()
    });
    full != some_disjoint
}

#[test]
fn cover_duality_all_pairs_to_depth_three() {
    for d in 0..=3usize {
        let n = 1usize << d;
        for am in 0..1u64 << n {
            for bm in 0..1u64 << n {
                let a = ClopenSet::from_leaves(d, cantor_star_core::BitVec::from_u64(am, n)).unwrap();
                let b = ClopenSet::from_leaves(d, cantor_star_core::BitVec::from_u64(bm, n)).unwrap();
                assert!(duality_holds(&a, &b), "d {d} a {am:x} b {bm:x}");
            }
        }
    }
}

#[test]
fn cover_duality_seeded_to_depth_six() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for d in 4..=6 {
        for i in 0..300 {
            let density = [0.05, 0.15, 0.3, 0.6][i % 4];
            let a = random_clopen(&mut rng, d, density).unwrap();
            let b = random_clopen(&mut rng, d, density).unwrap();
            assert!(duality_holds(&a, &b));
        }
    }
}
