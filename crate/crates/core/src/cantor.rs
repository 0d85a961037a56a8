//! Depth-bounded Cantor space: finite binary words, cylinders, and clopen
//! sets stored as bit vectors over the `2^d` leaves of depth `d`.
//!
//! A word `w` of length `d` is leaf number `Σ w(i)·2^(d-1-i)`, i.e. the word
//! read most-significant-bit first, so the children of node `v` are `2v`
//! and `2v+1`. The group operation is coordinatewise XOR.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bits::BitVec;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// Deepest clopen set we are willing to materialize (`2^30` bits = 128 MiB).
pub const MAX_DEPTH: usize = 30;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn new(bits: Vec<bool>) -> Self {
        BinaryWord { bits }
    }

    pub fn empty() -> Self {
        BinaryWord::default()
    }

    pub fn zeros(len: usize) -> Self {
        BinaryWord {
            bits: alloc::vec![false; len],
        }
    }

    pub fn ones(len: usize) -> Self {
        BinaryWord {
            bits: alloc::vec![true; len],
        }
    }

    /// The length-`len` word of leaf `index`.
    pub fn from_index(index: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        BinaryWord {
            bits: (0..len).map(|i| (index >> (len - 1 - i)) & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from(&mut self, other: &BinaryWord) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// `w↾n`; panics if `n > len`.
    pub fn prefix(&self, n: usize) -> BinaryWord {
        BinaryWord {
            bits: self.bits[..n].to_vec(),
        }
    }

    pub fn suffix_from(&self, n: usize) -> BinaryWord {
        BinaryWord {
            bits: self.bits[n..].to_vec(),
        }
    }

    /// Truncate or right-pad with zeros to exactly `len`.
    pub fn fit(&self, len: usize) -> BinaryWord {
        let mut bits = self.bits.clone();
        bits.resize(len, false);
        BinaryWord { bits }
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        self.len() <= other.len() && other.bits[..self.len()] == self.bits[..]
    }

    pub fn xor(&self, other: &BinaryWord) -> Result<BinaryWord> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(BinaryWord {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Leaf index, most-significant bit first; requires `len <= 64`.
    pub fn to_index(&self) -> u64 {
        debug_assert!(self.len() <= 64);
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(alloc::format!("bad bit {other:?} in word"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryWord::new)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.to_bit_string())
        }
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w\"{}\"", self.to_bit_string())
    }
}

/// A union of depth-`d` cylinders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClopenSet {
    depth: usize,
    leaves: BitVec,
}

fn check_depth(depth: usize) -> Result<()> {
    if depth > MAX_DEPTH {
        Err(Error::DepthTooLarge {
            depth,
            limit: MAX_DEPTH,
        })
    } else {
        Ok(())
    }
}

impl ClopenSet {
    pub fn empty(depth: usize) -> Result<Self> {
        check_depth(depth)?;
        Ok(ClopenSet {
            depth,
            leaves: BitVec::zeros(1 << depth),
        })
    }

    pub fn full(depth: usize) -> Result<Self> {
        check_depth(depth)?;
        Ok(ClopenSet {
            depth,
            leaves: BitVec::ones(1 << depth),
        })
    }

    pub fn from_leaves(depth: usize, leaves: BitVec) -> Result<Self> {
        check_depth(depth)?;
        if leaves.len() != 1 << depth {
            return Err(Error::LengthMismatch {
                expected: 1 << depth,
                found: leaves.len(),
            });
        }
        Ok(ClopenSet { depth, leaves })
    }

    /// Union of the cylinders of `words`, each at most `depth` long.
    pub fn from_words<'a>(
        depth: usize,
        words: impl IntoIterator<Item = &'a BinaryWord>,
    ) -> Result<Self> {
        let mut out = ClopenSet::empty(depth)?;
        for w in words {
            out.add_cylinder(w)?;
        }
        Ok(out)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn leaves(&self) -> &BitVec {
        &self.leaves
    }

    pub fn leaf_count(&self) -> u64 {
        self.leaves.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_zero()
    }

    pub fn is_full(&self) -> bool {
        self.leaves.is_full()
    }

    pub fn contains_leaf(&self, index: usize) -> bool {
        self.leaves.get(index)
    }

    pub fn leaf_words(&self) -> impl Iterator<Item = BinaryWord> + '_ {
        self.leaves
            .iter_ones()
            .map(|i| BinaryWord::from_index(i as u64, self.depth))
    }

    /// Whether the cylinder `[w]` meets the set. Words longer than the depth
    /// are judged by their depth-`d` prefix.
    pub fn meets_cylinder(&self, w: &BinaryWord) -> bool {
        if w.len() >= self.depth {
            self.leaves.get(w.prefix(self.depth).to_index() as usize)
        } else {
            let shift = self.depth - w.len();
            let lo = (w.to_index() as usize) << shift;
            !self.leaves.range_is_zero(lo, lo + (1 << shift))
        }
    }

    pub fn add_cylinder(&mut self, w: &BinaryWord) -> Result<()> {
        if w.len() > self.depth {
            return Err(Error::DepthTooSmall {
                depth: self.depth,
                requested: w.len(),
            });
        }
        let shift = self.depth - w.len();
        let lo = (w.to_index() as usize) << shift;
        self.leaves.set_range(lo, lo + (1 << shift));
        Ok(())
    }

    /// Same set at a finer depth.
    pub fn refine(&self, depth: usize) -> Result<ClopenSet> {
        if depth < self.depth {
            return Err(Error::DepthTooSmall {
                depth: self.depth,
                requested: depth,
            });
        }
        check_depth(depth)?;
        let shift = depth - self.depth;
        let mut leaves = self.leaves.clone();
        for _ in 0..shift {
            leaves = leaves.expand_pairs();
        }
        Ok(ClopenSet { depth, leaves })
    }

    pub fn complement(&self) -> ClopenSet {
        ClopenSet {
            depth: self.depth,
            leaves: self.leaves.not(),
        }
    }

    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet> {
        let (a, b) = self.aligned(other)?;
        Ok(ClopenSet {
            depth: a.depth,
            leaves: a.leaves.or(&b.leaves),
        })
    }

    pub fn intersect(&self, other: &ClopenSet) -> Result<ClopenSet> {
        let (a, b) = self.aligned(other)?;
        Ok(ClopenSet {
            depth: a.depth,
            leaves: a.leaves.and(&b.leaves),
        })
    }

    pub fn is_disjoint(&self, other: &ClopenSet) -> Result<bool> {
        let (a, b) = self.aligned(other)?;
        Ok(!a.leaves.intersects(&b.leaves))
    }

    /// `A + w`; requires `|w| = depth`.
    pub fn translate(&self, w: &BinaryWord) -> Result<ClopenSet> {
        if w.len() != self.depth {
            return Err(Error::LengthMismatch {
                expected: self.depth,
                found: w.len(),
            });
        }
        Ok(self.translate_index(w.to_index() as usize))
    }

    pub fn translate_index(&self, shift: usize) -> ClopenSet {
        let mut leaves = BitVec::zeros(self.leaves.len());
        for x in self.leaves.iter_ones() {
            leaves.set(x ^ shift, true);
        }
        ClopenSet {
            depth: self.depth,
            leaves,
        }
    }

    /// `A + B` under XOR, both refined to the larger depth.
    pub fn xor_sumset(&self, other: &ClopenSet) -> Result<ClopenSet> {
        let (a, b) = self.aligned(other)?;
        let depth = a.depth;
        let (na, nb) = (a.leaf_count(), b.leaf_count());
        let leaves = if na == 0 || nb == 0 {
            BitVec::zeros(1 << depth)
        } else if na.saturating_mul(nb) <= 1 << 22 || depth > 20 {
            pairwise_xor(&a.leaves, &b.leaves)
        } else {
            hadamard_xor(&a.leaves, &b.leaves, depth)
        };
        Ok(ClopenSet { depth, leaves })
    }

    /// Exact Lebesgue measure, `popcount / 2^depth`.
    pub fn measure(&self) -> Dyadic {
        Dyadic::new(self.leaf_count(), self.depth as u32)
    }

    fn aligned(&self, other: &ClopenSet) -> Result<(ClopenSet, ClopenSet)> {
        let depth = self.depth.max(other.depth);
        Ok((self.refine(depth)?, other.refine(depth)?))
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClopenSet(depth={}, {})", self.depth, self.leaves.to_hex())
    }
}

/// `[β]` at depth `d`.
pub fn cylinder(beta: &BinaryWord, depth: usize) -> Result<ClopenSet> {
    let mut out = ClopenSet::empty(depth)?;
    out.add_cylinder(beta)?;
    Ok(out)
}

fn pairwise_xor(a: &BitVec, b: &BitVec) -> BitVec {
    let mut out = BitVec::zeros(a.len());
    let (small, large) = if a.count_ones() <= b.count_ones() { (a, b) } else { (b, a) };
    let large_ones: Vec<usize> = large.iter_ones().collect();
    for x in small.iter_ones() {
        for &y in &large_ones {
            out.set(x ^ y, true);
        }
        if out.is_full() {
            break;
        }
    }
    out
}

/// Support of the XOR convolution, via the Walsh–Hadamard transform.
/// Exact in `i64` up to depth 20.
fn hadamard_xor(a: &BitVec, b: &BitVec, depth: usize) -> BitVec {
    let n = 1usize << depth;
    let mut fa: Vec<i64> = (0..n).map(|i| i64::from(a.get(i))).collect();
    let mut fb: Vec<i64> = (0..n).map(|i| i64::from(b.get(i))).collect();
    walsh_hadamard(&mut fa);
    walsh_hadamard(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y;
    }
    walsh_hadamard(&mut fa);
    BitVec::from_fn(n, |i| fa[i] > 0)
}

fn walsh_hadamard(v: &mut [i64]) {
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*x + *y, *x - *y);
                *x = s;
                *y = d;
            }
        }
        h *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn set_of(depth: usize, words: &[&str]) -> ClopenSet {
        let words: Vec<BinaryWord> = words.iter().map(|s| w(s)).collect();
        ClopenSet::from_words(depth, &words).unwrap()
    }

    #[test]
    fn word_basics() {
        let x = w("0110");
        assert_eq!(x.to_index(), 6);
        assert_eq!(BinaryWord::from_index(6, 4), x);
        assert_eq!(x.prefix(2), w("01"));
        assert!(w("01").is_prefix_of(&x));
        assert!(!w("1").is_prefix_of(&x));
        assert_eq!(x.xor(&w("1100")).unwrap(), w("1010"));
        assert!(x.xor(&w("1")).is_err());
        assert_eq!(w("").len(), 0);
        assert!("01a".parse::<BinaryWord>().is_err());
        assert_eq!(x.fit(6), w("011000"));
        assert_eq!(x.fit(2), w("01"));
    }

    #[test]
    fn cylinder_examples() {
        let all = cylinder(&BinaryWord::empty(), 3).unwrap();
        assert!(all.is_full());
        assert_eq!(all.measure(), Dyadic::one());
        let zero = cylinder(&w("0"), 1).unwrap();
        assert_eq!(zero.leaf_words().collect::<Vec<_>>(), [w("0")]);
        assert_eq!(zero.measure(), Dyadic::half_pow(1));
        let c = cylinder(&w("01"), 3).unwrap();
        assert_eq!(c.leaf_words().collect::<Vec<_>>(), [w("010"), w("011")]);
        assert_eq!(c.measure(), Dyadic::half_pow(2));
        assert!(cylinder(&w("0101"), 3).is_err());
    }

    #[test]
    fn xor_sumset_examples() {
        let a = cylinder(&w("0"), 1).unwrap();
        let b = cylinder(&w("1"), 1).unwrap();
        assert_eq!(a.xor_sumset(&b).unwrap(), b);
        let full = ClopenSet::full(4).unwrap();
        assert!(a.xor_sumset(&full).unwrap().is_full());
        let diag = set_of(2, &["00", "11"]);
        assert_eq!(diag.xor_sumset(&diag).unwrap(), diag);
        assert!(ClopenSet::empty(3)
            .unwrap()
            .xor_sumset(&full)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn hadamard_route_matches_pairwise() {
        let a = BitVec::from_fn(1 << 12, |i| (i * 2654435761usize) % 7 == 0);
        let b = BitVec::from_fn(1 << 12, |i| (i ^ (i >> 3)) % 13 == 1);
        assert_eq!(hadamard_xor(&a, &b, 12), pairwise_xor(&a, &b));
    }

    #[test]
    fn measure_examples() {
        assert_eq!(ClopenSet::full(5).unwrap().measure(), Dyadic::one());
        assert_eq!(cylinder(&w("1011"), 4).unwrap().measure(), Dyadic::half_pow(4));
        let a = set_of(4, &["0", "110"]);
        assert_eq!(
            a.complement().measure(),
            Dyadic::one().checked_sub(&a.measure()).unwrap()
        );
    }

    #[test]
    fn plumbing_examples() {
        let a = cylinder(&w("0"), 1).unwrap();
        let r = a.refine(3).unwrap();
        assert_eq!(r.measure(), Dyadic::half_pow(1));
        assert_eq!(r.leaf_count(), 4);
        assert!(a.refine(0).is_err());
        let b = set_of(3, &["01", "111"]);
        assert_eq!(b.translate(&w("000")).unwrap(), b);
        assert!(b.translate(&w("00")).is_err());
        assert!(b.intersect(&b.complement()).unwrap().is_empty());
        assert_eq!(b.union(&a).unwrap(), set_of(3, &["0", "111"]));
        assert_eq!(b.translate(&w("100")).unwrap(), set_of(3, &["11", "011"]));
    }

    #[test]
    fn cylinder_meeting() {
        let b = set_of(4, &["0110"]);
        assert!(b.meets_cylinder(&w("01")));
        assert!(!b.meets_cylinder(&w("00")));
        assert!(b.meets_cylinder(&w("011011")));
        assert!(!b.meets_cylinder(&w("011111")));
        assert!(b.meets_cylinder(&BinaryWord::empty()));
    }

    #[test]
    fn depth_limit() {
        assert!(matches!(
            ClopenSet::empty(MAX_DEPTH + 1),
            Err(Error::DepthTooLarge { .. })
        ));
    }
}
