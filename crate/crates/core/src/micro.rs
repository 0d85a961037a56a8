//! Microscopic covers and the explicit sets built from zero masks.

use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::cantor::{BinaryWord, ClopenSet, MAX_DEPTH};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::mask::{ternary_free_enum, triangular_h, ZeroMask};

/// Words `σ_1, σ_2, …` with `|σ_n| = k·n`; `words[n − 1]` is `σ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroCover {
    k: usize,
    words: Vec<BinaryWord>,
}

impl MicroCover {
    pub fn new(k: usize, words: Vec<BinaryWord>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        for (i, w) in words.iter().enumerate() {
            if w.len() != k * (i + 1) {
                return Err(Error::ScheduleMismatch {
                    index: i + 1,
                    expected: k * (i + 1),
                    found: w.len(),
                });
            }
        }
        Ok(MicroCover { k, words })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn words(&self) -> &[BinaryWord] {
        &self.words
    }

    /// `σ_n`, 1-based.
    pub fn word(&self, n: usize) -> Option<&BinaryWord> {
        n.checked_sub(1).and_then(|i| self.words.get(i))
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Indices `n` with `σ_n ⊆ y`.
    pub fn hits(&self, y: &BinaryWord) -> Vec<usize> {
        (1..=self.len())
            .filter(|&n| self.words[n - 1].is_prefix_of(y))
            .collect()
    }
}

/// `i_j(n) = 2^j·n − (2^(j−1) − 1)`; `i_j(n) − 1 = 2^(j−1)·(2n − 1)`, so the
/// maps for different `j` never collide.
pub fn micro_index(j: usize, n: usize) -> usize {
    debug_assert!(j >= 1 && n >= 1);
    (n << j) - ((1 << (j - 1)) - 1)
}

/// Confirms that `i_j(n)` for `j ≤ max_j`, `n ≤ max_n` are pairwise distinct.
pub fn check_index_maps(max_j: usize, max_n: usize) -> Result<()> {
    let top = micro_index(max_j, max_n);
    let mut seen = BitVec::zeros(top + 1);
    for j in 1..=max_j {
        for n in 1..=max_n {
            let index = micro_index(j, n);
            if seen.get(index) {
                return Err(Error::IndexCollision { index });
            }
            seen.set(index, true);
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Designation {
    pub index: usize,
    pub level: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refined {
    pub cover: MicroCover,
    pub designated: Vec<Designation>,
}

/// Merges covers of lengths `2^j·n·k` into one cover of lengths `k·n`.
///
/// `provider[j − 1][n − 1]` is `τ_n^(2^j)`. It lands at index `i = i_j(n)`,
/// cut to `k·i` bits. Indices no level reaches get `1^(k·i)`.
pub fn micro_refine(k: usize, provider: &[Vec<BinaryWord>]) -> Result<Refined> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut slots: Vec<Option<BinaryWord>> = Vec::new();
    let mut designated = Vec::new();
    for (jj, level) in provider.iter().enumerate() {
        let j = jj + 1;
        for (nn, tau) in level.iter().enumerate() {
            let n = nn + 1;
            let expected = (n << j) * k;
            if tau.len() != expected {
                return Err(Error::ScheduleMismatch {
                    index: n,
                    expected,
                    found: tau.len(),
                });
            }
            let index = micro_index(j, n);
            if slots.len() < index {
                slots.resize(index, None);
            }
            if slots[index - 1].is_some() {
                return Err(Error::IndexCollision { index });
            }
            slots[index - 1] = Some(tau.prefix(k * index));
            designated.push(Designation { index, level: j, n });
        }
    }
    let words = slots
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.unwrap_or_else(|| BinaryWord::ones(k * (i + 1))))
        .collect();
    designated.sort_by_key(|d| d.index);
    Ok(Refined {
        cover: MicroCover::new(k, words)?,
        designated,
    })
}

/// `{w ∈ 2^d : w(i) = 0 for every mask coordinate i < d}`.
pub fn mask_set_trace(mask: ZeroMask, depth: usize) -> Result<ClopenSet> {
    if depth > MAX_DEPTH {
        return Err(Error::DepthTooLarge {
            depth,
            limit: MAX_DEPTH,
        });
    }
    let free: u64 = (0..depth)
        .filter(|&i| !mask.contains(i))
        .map(|i| 1u64 << (depth - 1 - i))
        .sum();
    let mut leaves = BitVec::zeros(1 << depth);
    // walk the submasks of `free`
    let mut s = free;
    loop {
        leaves.set(s as usize, true);
        if s == 0 {
            break;
        }
        s = (s - 1) & free;
    }
    ClopenSet::from_leaves(depth, leaves)
}

/// `⋃_m [σ_m]` at depth `d`.
pub fn hit_set(sigma: &[BinaryWord], depth: usize) -> Result<ClopenSet> {
    ClopenSet::from_words(depth, sigma)
}

/// Diagonal position and cover-length factor of a preset: `(h(k), 3)` for
/// triangular blocks, `(k_n, 5)` for ternary blocks.
type PositionFn = fn(usize) -> Result<usize>;

fn diagonal_rule(mask: ZeroMask) -> Result<(PositionFn, usize)> {
    match mask {
        ZeroMask::TriangularBlocks => Ok((triangular_h, 3)),
        ZeroMask::TernaryBlocks => Ok((ternary_free_enum, 5)),
        other => Err(Error::UnknownPreset(other.name().into())),
    }
}

/// The diagonal word of length `d`: zero except at the diagonal positions
/// `p_n < d` (`h(n)` or `k_n`), where `z(p_n) = 1 − σ_n(p_n)`. `sigma[0]`
/// is `σ_1`, of length `3` (triangular) or `5` (ternary).
pub fn diagonal_z(mask: ZeroMask, sigma: &[BinaryWord], depth: usize) -> Result<BinaryWord> {
    let (position, factor) = diagonal_rule(mask)?;
    let mut z = BinaryWord::zeros(depth);
    for (i, s) in sigma.iter().enumerate() {
        let n = i + 1;
        if s.len() != factor * n {
            return Err(Error::ScheduleMismatch {
                index: n,
                expected: factor * n,
                found: s.len(),
            });
        }
        let p = position(n)?;
        if p >= s.len() {
            return Err(Error::InvalidParameter(alloc::format!(
                "diagonal position {p} lies outside sigma_{n}"
            )));
        }
        if p < depth {
            z.set(p, !s.get(p));
        }
    }
    Ok(z)
}

/// Interval partition `I_0, I_1, …` of an initial segment with block
/// families `S_n ⊆ 2^(I_n)`. Blocks are indexed by their bits read in
/// order, first coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallSetsCover {
    intervals: Vec<(usize, usize)>,
    families: Vec<BitVec>,
}

impl SmallSetsCover {
    /// `intervals` are `(start, len)`, consecutive from 0.
    pub fn new(intervals: Vec<(usize, usize)>, families: Vec<BitVec>) -> Result<Self> {
        if intervals.len() != families.len() {
            return Err(Error::LengthMismatch {
                expected: intervals.len(),
                found: families.len(),
            });
        }
        let mut next = 0;
        for (&(start, len), fam) in intervals.iter().zip(&families) {
            if start != next {
                return Err(Error::InvalidParameter(alloc::format!(
                    "interval starts at {start}, expected {next}"
                )));
            }
            if len > 24 || fam.len() != 1 << len {
                return Err(Error::InvalidParameter(alloc::format!(
                    "block family for an interval of length {len} has {} bits",
                    fam.len()
                )));
            }
            next = start + len;
        }
        Ok(SmallSetsCover {
            intervals,
            families,
        })
    }

    /// `I_n = [n(n−1), n(n+1) − 1]` for `n = 1..=N` with `N(N+1) = depth`,
    /// `S_n` the blocks vanishing on `[n², n² + n − 1]`.
    pub fn triangular(depth: usize) -> Result<Self> {
        let mut intervals = Vec::new();
        let mut families = Vec::new();
        let mut n = 1;
        while n * (n - 1) < depth {
            let len = 2 * n;
            // second half of the block is the masked part: low n bits zero
            families.push(BitVec::from_fn(1 << len, |b| b & ((1 << n) - 1) == 0));
            intervals.push((n * (n - 1), len));
            n += 1;
        }
        let end = intervals.last().map_or(0, |&(s, l)| s + l);
        if end != depth {
            return Err(Error::InvalidParameter(alloc::format!(
                "depth {depth} is not an interval boundary (next boundary {end})"
            )));
        }
        SmallSetsCover::new(intervals, families)
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn families(&self) -> &[BitVec] {
        &self.families
    }

    pub fn end(&self) -> usize {
        self.intervals.last().map_or(0, |&(s, l)| s + l)
    }

    /// `|S_n| / 2^|I_n| ≤ 1/2` for every `n`.
    pub fn ratio_bound_holds(&self) -> bool {
        self.families
            .iter()
            .all(|f| 2 * f.count_ones() <= f.len() as u64)
    }

    /// `w↾I_n ∈ S_n` for every `n ≥ from` with `I_n` inside `w`.
    pub fn contains(&self, w: &BinaryWord, from: usize) -> bool {
        self.intervals
            .iter()
            .zip(&self.families)
            .skip(from)
            .take_while(|&(&(s, l), _)| s + l <= w.len())
            .all(|(&(s, l), fam)| {
                let block = (s..s + l).fold(0usize, |acc, i| (acc << 1) | usize::from(w.get(i)));
                fam.get(block)
            })
    }

    /// `∏_{n ≥ from} |S_n| / 2^|I_n|`.
    pub fn tail_measure(&self, from: usize) -> Dyadic {
        self.families
            .iter()
            .skip(from)
            .fold(Dyadic::one(), |acc, f| {
                let len = f.len().trailing_zeros();
                &acc * &Dyadic::new(f.count_ones(), len)
            })
    }

    /// The constrained set as a clopen set at `depth`, which must be an
    /// interval boundary.
    pub fn to_clopen(&self, depth: usize, from: usize) -> Result<ClopenSet> {
        if !self.intervals.iter().any(|&(s, l)| s + l == depth) && depth != 0 {
            return Err(Error::InvalidParameter(alloc::format!(
                "depth {depth} is not an interval boundary"
            )));
        }
        let mut leaves = BitVec::zeros(1 << depth);
        for x in 0..1usize << depth {
            let w = BinaryWord::from_index(x as u64, depth);
            if self.contains(&w, from) {
                leaves.set(x, true);
            }
        }
        ClopenSet::from_leaves(depth, leaves)
    }
}
