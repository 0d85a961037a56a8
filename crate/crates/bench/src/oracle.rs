//! Brute-force reference answers, written straight from the definitions
//! with plain loops. Nothing here calls the algorithms it is used to check.

use cantor_star_core::{BinaryWord, ClopenSet, ClosedTree};

/// Mixed-radix group `Z_{m_0} × Z_{m_1} × …`, element index with the first
/// coordinate least significant.
pub struct PlainGroup {
    moduli: Vec<usize>,
    order: usize,
}

impl PlainGroup {
    pub fn new(moduli: &[usize]) -> Self {
        PlainGroup {
            moduli: moduli.to_vec(),
            order: moduli.iter().product(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add(&self, mut a: usize, mut b: usize) -> usize {
        let (mut out, mut place) = (0, 1);
        for &m in &self.moduli {
            out += ((a % m + b % m) % m) * place;
            a /= m;
            b /= m;
            place *= m;
        }
        out
    }

    /// `A + B = G` for subsets given as masks.
    pub fn covers(&self, a: u32, b: u32) -> bool {
        let mut hit = vec![false; self.order];
        for x in 0..self.order {
            for y in 0..self.order {
                if a >> x & 1 == 1 && b >> y & 1 == 1 {
                    hit[self.add(x, y)] = true;
                }
            }
        }
        hit.iter().all(|&h| h)
    }

    /// `cover[a][f]` for all pairs of subsets.
    pub fn cover_table(&self) -> Vec<Vec<bool>> {
        let n = 1u32 << self.order;
        (0..n).map(|a| (0..n).map(|f| self.covers(a, f)).collect()).collect()
    }
}

/// `F* = {A : A + F ≠ G for every F ∈ F}` from a precomputed cover table;
/// families are lists of subset masks.
pub fn star_by_definition(table: &[Vec<bool>], family: &[u32]) -> Vec<u32> {
    (0..table.len() as u32)
        .filter(|&a| family.iter().all(|&f| !table[a as usize][f as usize]))
        .collect()
}

/// `A ⊕ B` over all pairs of leaves.
pub fn xor_sumset(a: &ClopenSet, b: &ClopenSet) -> Vec<bool> {
    assert_eq!(a.depth(), b.depth());
    let n = 1usize << a.depth();
    let mut out = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            if a.contains_leaf(x) && b.contains_leaf(y) {
                out[x ^ y] = true;
            }
        }
    }
    out
}

/// Least `z` with `(X ⊕ z) ∩ C = ∅`, trying every translate.
pub fn least_disjoint_translate(x: &ClopenSet, c: &ClopenSet) -> Option<usize> {
    let n = 1usize << x.depth();
    (0..n).find(|&z| (0..n).all(|p| !(x.contains_leaf(p) && c.contains_leaf(p ^ z))))
}

fn leaf_range(prefix_index: usize, prefix_len: usize, depth: usize) -> std::ops::Range<usize> {
    let lo = prefix_index << (depth - prefix_len);
    lo..lo + (1 << (depth - prefix_len))
}

/// The cylinder of the word `(a, len)` holds no leaf of the tree.
fn dead(t: &ClosedTree, index: usize, len: usize) -> bool {
    leaf_range(index, len, t.depth()).all(|x| !t.leaves().get(x))
}

/// Least `k` with: every `α ∈ 2^m` has a dead extension of length `m + k`.
pub fn min_gap(t: &ClosedTree, m: usize) -> Option<usize> {
    (0..=t.depth() - m).find(|&k| {
        (0..1usize << m).all(|a| (0..1usize << k).any(|s| dead(t, (a << k) | s, m + k)))
    })
}

/// The definition of `k`-porous to depth, quantifier by quantifier.
pub fn is_porous(t: &ClosedTree, k: usize) -> bool {
    (0..=t.depth() - k).all(|m| {
        (0..1usize << m).all(|a| (0..1usize << k).any(|s| dead(t, (a << k) | s, m + k)))
    })
}

/// Every leaf `x ∈ [σ]` and `y' ∈ [y]` (words cut to the tree depth) has
/// `x ⊕ y'` outside the tree. For fixed `x` the points `x ⊕ y'` fill one
/// aligned block, so each `x` costs a single range test.
pub fn translate_avoids(t: &ClosedTree, sigma: &BinaryWord, y: &BinaryWord) -> bool {
    let d = t.depth();
    let s = sigma.prefix(d.min(sigma.len()));
    let yy = y.prefix(d.min(y.len()));
    let size = 1usize << (d - yy.len());
    let base = (yy.to_index() as usize) << (d - yy.len());
    leaf_range(s.to_index() as usize, s.len(), d).all(|x| {
        let lo = (x ^ base) & !(size - 1);
        t.leaves().range_is_zero(lo, lo + size)
    })
}

/// The word visits no leaf of the tree (checked at the tree depth).
pub fn word_avoids(t: &ClosedTree, w: &BinaryWord) -> bool {
    let d = t.depth();
    let p = w.prefix(d.min(w.len()));
    dead(t, p.to_index() as usize, p.len())
}

pub fn pow2_pairs_below(bound: usize) -> Vec<bool> {
    let mut z = vec![false; bound];
    let mut p = 1usize;
    while p < bound {
        z[p] = true;
        if p + 1 < bound {
            z[p + 1] = true;
        }
        p *= 2;
    }
    z
}

pub fn triangular_blocks_below(bound: usize) -> Vec<bool> {
    let mut z = vec![false; bound];
    let mut n = 1;
    while n * n < bound {
        z[n * n..(n * n + n).min(bound)].fill(true);
        n += 1;
    }
    z
}

pub fn ternary_blocks_below(bound: usize) -> Vec<bool> {
    let mut z = vec![false; bound];
    let mut p = 1usize;
    while p - 1 < bound {
        z[p - 1..(2 * p - 1).min(bound)].fill(true);
        p *= 3;
    }
    z
}

/// Mask membership table for a preset name.
pub fn mask_table(name: &str, bound: usize) -> Vec<bool> {
    match name {
        "pow2-pairs" => pow2_pairs_below(bound),
        "triangular-blocks" => triangular_blocks_below(bound),
        "ternary-blocks" => ternary_blocks_below(bound),
        _ => vec![false; bound],
    }
}

/// `w(i) = 0` at every masked coordinate.
pub fn respects_mask(table: &[bool], w: &BinaryWord) -> bool {
    (0..w.len()).all(|i| !(w.get(i) && table.get(i).copied().unwrap_or(false)))
}

/// Some `σ` in the list is a prefix of `x`.
pub fn hit(sigma: &[BinaryWord], x: &BinaryWord) -> bool {
    sigma
        .iter()
        .any(|s| s.len() <= x.len() && (0..s.len()).all(|i| s.get(i) == x.get(i)))
}

/// Every word of length `depth` vanishing on the mask.
pub fn mask_trace_words(table: &[bool], depth: usize) -> Vec<BinaryWord> {
    let free: Vec<usize> = (0..depth).filter(|&i| !table[i]).collect();
    (0..1u64 << free.len())
        .map(|bits| {
            let mut w = BinaryWord::zeros(depth);
            for (j, &i) in free.iter().enumerate() {
                w.set(i, bits >> j & 1 == 1);
            }
            w
        })
        .collect()
}
