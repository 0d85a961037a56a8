//! Sets of coordinates forced to zero, and the index arithmetic that goes
//! with them.
//!
//! * `pow2-pairs`: `{2^a, 2^a + 1 : a ≥ 0}` = 1, 2, 3, 4, 5, 8, 9, 16, 17, …
//! * `triangular-blocks`: `⋃_{n≥1} [n², n² + n − 1]` = 1, 4, 5, 9, 10, 11, …
//! * `ternary-blocks`: `⋃_{m≥0} [3^m − 1, 2·3^m − 2]` = 0, 2, 3, 4, 8..=16, …

use alloc::vec::Vec;

use crate::cantor::BinaryWord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroMask {
    Empty,
    Pow2Pairs,
    TriangularBlocks,
    TernaryBlocks,
}

impl ZeroMask {
    pub const PRESETS: [ZeroMask; 3] = [
        ZeroMask::Pow2Pairs,
        ZeroMask::TriangularBlocks,
        ZeroMask::TernaryBlocks,
    ];

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "empty" | "none" => Ok(ZeroMask::Empty),
            "pow2-pairs" => Ok(ZeroMask::Pow2Pairs),
            "triangular-blocks" => Ok(ZeroMask::TriangularBlocks),
            "ternary-blocks" => Ok(ZeroMask::TernaryBlocks),
            other => Err(Error::UnknownPreset(other.into())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ZeroMask::Empty => "empty",
            ZeroMask::Pow2Pairs => "pow2-pairs",
            ZeroMask::TriangularBlocks => "triangular-blocks",
            ZeroMask::TernaryBlocks => "ternary-blocks",
        }
    }

    pub fn contains(self, i: usize) -> bool {
        match self {
            ZeroMask::Empty => false,
            ZeroMask::Pow2Pairs => i.is_power_of_two() || (i >= 3 && (i - 1).is_power_of_two()),
            ZeroMask::TriangularBlocks => {
                let n = i.isqrt();
                n >= 1 && i < n * n + n
            }
            ZeroMask::TernaryBlocks => {
                let mut p = 1usize;
                while p - 1 <= i {
                    if i <= 2 * p - 2 {
                        return true;
                    }
                    p *= 3;
                }
                false
            }
        }
    }

    /// Mask positions in increasing order, without end.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mut next = 0usize;
        core::iter::from_fn(move || {
            if self == ZeroMask::Empty {
                return None;
            }
            while !self.contains(next) {
                next += 1;
            }
            next += 1;
            Some(next - 1)
        })
    }

    pub fn positions_below(self, bound: usize) -> Vec<usize> {
        (0..bound).filter(|&i| self.contains(i)).collect()
    }

    pub fn count_below(self, bound: usize) -> usize {
        (0..bound).filter(|&i| self.contains(i)).count()
    }

    pub fn is_free_run(self, lo: usize, len: usize) -> bool {
        (lo..lo + len).all(|i| !self.contains(i))
    }

    /// Least `p ≥ from` such that `[p, p + run)` avoids the mask and
    /// `p + run ≤ limit`.
    pub fn first_free_run(self, from: usize, run: usize, limit: usize) -> Result<usize> {
        let mut p = from;
        while p + run <= limit {
            match (p..p + run).rev().find(|&i| self.contains(i)) {
                None => return Ok(p),
                Some(bad) => p = bad + 1,
            }
        }
        Err(Error::MaskStarved { from, run, limit })
    }

    /// Rejects the first coordinate of `w` that is set on the mask.
    pub fn check_word(self, w: &BinaryWord) -> Result<()> {
        match (0..w.len()).find(|&i| w.get(i) && self.contains(i)) {
            Some(position) => Err(Error::MaskViolation { position }),
            None => Ok(()),
        }
    }

    /// Closed-form start of an escape block of length `k` placed at or after
    /// `from`:
    ///
    /// * pow2-pairs: `2^m + 2` for the least `m` with `k < 2^m − 2`, moved
    ///   up to later dyadic gaps if `from` is past it;
    /// * triangular-blocks: `k² + k`, the first coordinate of `J_{k+1}`;
    /// * ternary-blocks: `2·3^p − 1` for `k = 3^p`.
    ///
    /// The block is checked to be mask-free.
    pub fn closed_form_block_start(self, k: usize, from: usize) -> Result<usize> {
        let start = match self {
            ZeroMask::Empty => from,
            ZeroMask::Pow2Pairs => {
                let mut m = 0u32;
                while k + 2 >= 1 << m || (1usize << m) + 2 < from {
                    m += 1;
                }
                (1 << m) + 2
            }
            ZeroMask::TriangularBlocks => k * k + k,
            ZeroMask::TernaryBlocks => {
                let mut p = 1usize;
                while p < k {
                    p *= 3;
                }
                if p != k {
                    return Err(Error::InvalidParameter(alloc::format!(
                        "ternary block length {k} is not a power of 3"
                    )));
                }
                2 * p - 1
            }
        };
        if start < from {
            return Err(Error::InvalidParameter(alloc::format!(
                "block for k={k} starts at {start}, before position {from}"
            )));
        }
        if let Some(position) = (start..start + k).find(|&i| self.contains(i)) {
            return Err(Error::MaskViolation { position });
        }
        Ok(start)
    }
}

/// `h(k) = (j+1)² + (k − j(j+1)/2) − 1` with `j` maximal such that
/// `j(j+1)/2 < k`: the `k`-th triangular-blocks position (1-based).
pub fn triangular_h(k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidParameter("h(k) needs k >= 1".into()));
    }
    let mut j = 0;
    while (j + 1) * (j + 2) / 2 < k {
        j += 1;
    }
    Ok((j + 1) * (j + 1) + (k - j * (j + 1) / 2) - 1)
}

/// `k_n`, the `n`-th (1-based) coordinate outside the ternary-blocks mask.
///
/// The free coordinates form the blocks `[2·3^m − 1, 3^(m+1) − 2]` of size
/// `3^m`, so the block holding `k_n` is found from partial sums
/// `(3^m − 1)/2`.
pub fn ternary_free_enum(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidParameter("free_enum is 1-based".into()));
    }
    let mut p = 1usize;
    let mut before = 0usize;
    while before + p < n {
        before += p;
        p *= 3;
    }
    Ok(2 * p - 1 + (n - before - 1))
}

/// `|Z ∩ [0, b)|` for the ternary-blocks mask by the two-case count:
/// `(3^(k+1) − 1)/2` when `2·3^k − 1 ≤ b < 3^(k+1)`, and
/// `(3^k − 1)/2 + b − 3^k + 1` when `3^k ≤ b < 2·3^k − 1`.
pub fn ternary_mask_count(b: usize) -> usize {
    if b == 0 {
        return 0;
    }
    // largest k with 3^k ≤ b + 1 places b in one of the two ranges
    let mut p = 1usize;
    while 3 * p <= b + 1 {
        p *= 3;
    }
    if b >= 2 * p - 1 {
        (3 * p - 1) / 2
    } else {
        (p - 1) / 2 + (b + 1) - p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_listings() {
        let first = |m: ZeroMask, n| m.positions().take(n).collect::<Vec<_>>();
        assert_eq!(first(ZeroMask::Pow2Pairs, 9), [1, 2, 3, 4, 5, 8, 9, 16, 17]);
        assert_eq!(first(ZeroMask::TriangularBlocks, 7), [1, 4, 5, 9, 10, 11, 16]);
        let ternary: Vec<usize> = [0, 2, 3, 4]
            .into_iter()
            .chain(8..=16)
            .chain(26..=52)
            .collect();
        assert_eq!(ZeroMask::TernaryBlocks.positions_below(53), ternary);
        assert_eq!(ZeroMask::Empty.positions().next(), None);
        assert!(ZeroMask::from_name("fibonacci").is_err());
        for m in ZeroMask::PRESETS {
            assert_eq!(ZeroMask::from_name(m.name()).unwrap(), m);
        }
    }

    #[test]
    fn membership_matches_block_definitions() {
        let mut pow2 = alloc::vec![false; 5000];
        let mut tri = alloc::vec![false; 5000];
        let mut ter = alloc::vec![false; 5000];
        for a in 0..13 {
            for i in [1usize << a, (1 << a) + 1] {
                if i < 5000 {
                    pow2[i] = true;
                }
            }
        }
        for n in 1..80usize {
            for i in n * n..n * n + n {
                if i < 5000 {
                    tri[i] = true;
                }
            }
        }
        let mut p = 1usize;
        while p < 5000 {
            for i in p - 1..=(2 * p - 2).min(4999) {
                ter[i] = true;
            }
            p *= 3;
        }
        for i in 0..5000 {
            assert_eq!(ZeroMask::Pow2Pairs.contains(i), pow2[i], "{i}");
            assert_eq!(ZeroMask::TriangularBlocks.contains(i), tri[i], "{i}");
            assert_eq!(ZeroMask::TernaryBlocks.contains(i), ter[i], "{i}");
        }
    }

    #[test]
    fn h_examples() {
        let h: Vec<usize> = (1..=4).map(|k| triangular_h(k).unwrap()).collect();
        assert_eq!(h, [1, 4, 5, 9]);
        assert!(triangular_h(0).is_err());
    }

    #[test]
    fn free_enum_examples() {
        let k: Vec<usize> = (1..=5).map(|n| ternary_free_enum(n).unwrap()).collect();
        assert_eq!(k, [1, 5, 6, 7, 17]);
        assert!(ternary_free_enum(0).is_err());
        let scan: Vec<usize> = (0..400)
            .filter(|&i| !ZeroMask::TernaryBlocks.contains(i))
            .collect();
        for (n, &k) in scan.iter().enumerate() {
            assert_eq!(ternary_free_enum(n + 1).unwrap(), k);
        }
    }

    #[test]
    fn two_case_count_matches_scan() {
        for b in 0..3000 {
            assert_eq!(ternary_mask_count(b), ZeroMask::TernaryBlocks.count_below(b), "{b}");
        }
    }

    #[test]
    fn free_runs() {
        let m = ZeroMask::Pow2Pairs;
        assert_eq!(m.first_free_run(0, 2, 100).unwrap(), 6);
        assert_eq!(m.first_free_run(7, 3, 100).unwrap(), 10);
        assert!(matches!(
            m.first_free_run(0, 3, 8),
            Err(Error::MaskStarved { .. })
        ));
        assert_eq!(ZeroMask::Empty.first_free_run(3, 5, 8).unwrap(), 3);
        assert!(m.check_word(&"1000".parse().unwrap()).is_ok());
        assert_eq!(
            m.check_word(&"0010".parse().unwrap()),
            Err(Error::MaskViolation { position: 2 })
        );
    }

    #[test]
    fn closed_form_starts_are_mask_free() {
        for k in 1..40 {
            let s = ZeroMask::Pow2Pairs.closed_form_block_start(k, 0).unwrap();
            assert!(ZeroMask::Pow2Pairs.is_free_run(s, k));
            let s = ZeroMask::TriangularBlocks.closed_form_block_start(k, 0).unwrap();
            assert!(ZeroMask::TriangularBlocks.is_free_run(s, k));
        }
        for p in [1, 3, 9, 27, 81] {
            let s = ZeroMask::TernaryBlocks.closed_form_block_start(p, 0).unwrap();
            assert_eq!(s, 2 * p - 1);
            assert!(ZeroMask::TernaryBlocks.is_free_run(s, p));
        }
        assert!(ZeroMask::TernaryBlocks.closed_form_block_start(2, 0).is_err());
        assert!(ZeroMask::TriangularBlocks.closed_form_block_start(2, 7).is_err());
    }

    #[test]
    fn uncorrected_starts_land_on_the_mask() {
        // zero-padding by 2^m + 1 or by k² puts the first escape bit on a
        // forced-zero coordinate
        for k in 1..40usize {
            let m = (0..).find(|&m| k + 2 < 1usize << m).unwrap();
            assert!(ZeroMask::Pow2Pairs.contains((1 << m) + 1));
            assert!(ZeroMask::TriangularBlocks.contains(k * k));
        }
    }
}
