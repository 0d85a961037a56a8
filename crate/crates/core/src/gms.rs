//! Translating covers away from meager and porous sets at finite depth.
//!
//! A meager set is handed in as a list of nowhere dense trees `C_n`; a cover
//! is a list of words `σ_n`. The avoidance recursion builds one word `y`
//! with `([y] + [σ_n]) ∩ C_n = ∅` for every `n`.

use alloc::vec::Vec;

use crate::cantor::{cylinder, BinaryWord, ClopenSet};
use crate::error::{Error, Result};
use crate::tree::{check_extension_shape, is_k_porous_to_depth, nd_gap, ClosedTree};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cover {
    words: Vec<BinaryWord>,
}

impl Cover {
    pub fn new(words: Vec<BinaryWord>) -> Self {
        Cover { words }
    }

    pub fn words(&self) -> &[BinaryWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn schedule(&self) -> Vec<usize> {
        self.words.iter().map(BinaryWord::len).collect()
    }

    /// Fails on the first word whose length differs from `schedule`.
    pub fn check_schedule(&self, schedule: &[usize]) -> Result<()> {
        if self.len() != schedule.len() {
            return Err(Error::LengthMismatch {
                expected: schedule.len(),
                found: self.len(),
            });
        }
        for (index, (w, &expected)) in self.words.iter().zip(schedule).enumerate() {
            if w.len() != expected {
                return Err(Error::ScheduleMismatch {
                    index,
                    expected,
                    found: w.len(),
                });
            }
        }
        Ok(())
    }

    /// Union of the cylinders, at `depth`.
    pub fn covered_set(&self, depth: usize) -> Result<ClopenSet> {
        let mut out = ClopenSet::empty(depth)?;
        for w in &self.words {
            out.add_cylinder(&w.prefix(w.len().min(depth)))?;
        }
        Ok(out)
    }
}

/// Cumulative lengths: `k_0 = gap(C_0, 0)`, `k_n = k_{n−1} + gap(C_n, k_{n−1})`.
/// Empty trees contribute a zero gap at any level.
pub fn gms_schedule(trees: &[ClosedTree]) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(trees.len());
    let mut m = 0;
    for c in trees {
        if !c.is_empty() {
            if m >= c.depth() {
                return Err(Error::DepthTooSmall {
                    depth: c.depth(),
                    requested: m + 1,
                });
            }
            m += nd_gap(c, m)?;
        }
        out.push(m);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmsStep {
    pub n: usize,
    pub m: usize,
    pub gap: usize,
    pub sigma: BinaryWord,
    pub gamma: BinaryWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmsRun {
    pub schedule: Vec<usize>,
    pub steps: Vec<GmsStep>,
    pub y: BinaryWord,
}

/// `γ_n` from `γ_{n−1}` and `σ_n` by the gap lemma; `y = γ_{N−1}`.
pub fn gms_avoid(trees: &[ClosedTree], cover: &Cover) -> Result<GmsRun> {
    let schedule = gms_schedule(trees)?;
    cover.check_schedule(&schedule)?;
    let mut gamma = BinaryWord::empty();
    let mut steps = Vec::with_capacity(trees.len());
    for (n, (c, sigma)) in trees.iter().zip(cover.words()).enumerate() {
        let m = gamma.len();
        let gap = schedule[n] - m;
        if !c.is_empty() {
            gamma = xor_escape(c, m, gap, &gamma, sigma)?;
        }
        steps.push(GmsStep {
            n,
            m,
            gap,
            sigma: sigma.clone(),
            gamma: gamma.clone(),
        });
    }
    Ok(GmsRun {
        schedule,
        steps,
        y: gamma,
    })
}

/// `β ⊕ δ` for the least dead `δ` extending `α ⊕ β↾m`.
fn xor_escape(
    c: &ClosedTree,
    m: usize,
    k: usize,
    alpha: &BinaryWord,
    beta: &BinaryWord,
) -> Result<BinaryWord> {
    check_extension_shape(c, m, k, alpha, beta)?;
    let start = alpha.xor(&beta.prefix(m))?;
    let delta = c
        .least_dead_extension(&start, m + k)
        .ok_or(Error::GapTooSmall {
            given: k,
            required: k + 1,
        })?;
    beta.xor(&delta)
}

/// `([y] + [σ_n]) ∩ C_n = ∅` for every `n`, by set operations at each
/// tree's depth.
pub fn avoidance_holds(trees: &[ClosedTree], cover: &Cover, y: &BinaryWord) -> Result<bool> {
    for (c, sigma) in trees.iter().zip(cover.words()) {
        let d = c.depth();
        let moved = cylinder(&sigma.prefix(sigma.len().min(d)), d)?.translate(&y.fit(d))?;
        if !moved.is_disjoint(c.as_clopen())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `z` (by leaf index) with `(X + z) ∩ C = ∅`, or `None` when
/// `X + C` is everything.
pub fn smz_witness_translate(x: &ClopenSet, c: &ClosedTree) -> Result<Option<BinaryWord>> {
    let sum = x.xor_sumset(c.as_clopen())?;
    Ok(sum
        .leaves()
        .first_zero()
        .map(|z| BinaryWord::from_index(z as u64, sum.depth())))
}

/// `β ⊇ α` of length `m + k` with `([τ] + [β]) ∩ E = ∅`, for `E` that is
/// `k`-porous to its depth.
pub fn lemma_aa_beta(
    e: &ClosedTree,
    k: usize,
    alpha: &BinaryWord,
    tau: &BinaryWord,
) -> Result<BinaryWord> {
    if !e.is_empty() && !is_k_porous_to_depth(e, k)? {
        return Err(Error::NotPorous { k });
    }
    xor_escape(e, alpha.len(), k, alpha, tau)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MicroSchedule {
    /// `|σ_n| = (n + 1)·k` for `n ≥ 0`.
    SuccessorK,
    /// `|σ_n| = k·n` for `n ≥ 1`; the `n = 0` term is the empty word and is
    /// not passed in, so `words[i]` is `σ_{i+1}`.
    Kn,
}

impl MicroSchedule {
    pub fn first_index(self) -> usize {
        match self {
            MicroSchedule::SuccessorK => 0,
            MicroSchedule::Kn => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroStep {
    pub n: usize,
    pub m: usize,
    pub sigma: BinaryWord,
    pub alpha: BinaryWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroRun {
    pub steps: Vec<MicroStep>,
    pub y: BinaryWord,
}

/// Iterates the porous lemma along a cover whose `i`-th word has length
/// `(i + 1)·k`; step `i` extends `α_{i−1} ∈ 2^(ik)` to `α_i ∈ 2^((i+1)k)`.
pub fn micro_porous_avoid(
    e: &ClosedTree,
    k: usize,
    cover: &Cover,
    schedule: MicroSchedule,
) -> Result<MicroRun> {
    if k == 0 {
        return Err(Error::InvalidParameter("porosity constant must be positive".into()));
    }
    let lengths: Vec<usize> = (1..=cover.len()).map(|i| i * k).collect();
    cover.check_schedule(&lengths)?;
    if !e.is_empty() && !is_k_porous_to_depth(e, k)? {
        return Err(Error::NotPorous { k });
    }
    let mut alpha = BinaryWord::empty();
    let mut steps = Vec::with_capacity(cover.len());
    for (i, sigma) in cover.words().iter().enumerate() {
        let m = i * k;
        alpha = xor_escape(e, m, k, &alpha, sigma)?;
        steps.push(MicroStep {
            n: i + schedule.first_index(),
            m,
            sigma: sigma.clone(),
            alpha: alpha.clone(),
        });
    }
    Ok(MicroRun { steps, y: alpha })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn singleton_zero(depth: usize) -> ClosedTree {
        ClosedTree::from_word_fn(depth, |x| x.to_index() == 0).unwrap()
    }

    fn no_11(depth: usize) -> ClosedTree {
        ClosedTree::from_word_fn(depth, |x| !x.bits().windows(2).any(|p| p[0] && p[1])).unwrap()
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(gms_schedule(&[singleton_zero(4)]).unwrap(), [1]);
        assert_eq!(gms_schedule(&[singleton_zero(4), singleton_zero(4)]).unwrap(), [1, 2]);
        let e = ClosedTree::empty(3).unwrap();
        assert_eq!(gms_schedule(&[e.clone(), e]).unwrap(), [0, 0]);
        assert!(gms_schedule(&[ClosedTree::full(3).unwrap()]).is_err());
    }

    #[test]
    fn avoid_examples() {
        let trees = [singleton_zero(1)];
        let run = gms_avoid(&trees, &Cover::new(alloc::vec![w("0")])).unwrap();
        assert_eq!(run.y, w("1"));
        assert!(avoidance_holds(&trees, &Cover::new(alloc::vec![w("0")]), &run.y).unwrap());
        let e = ClosedTree::empty(4).unwrap();
        let cover = Cover::new(alloc::vec![w(""), w("")]);
        let run = gms_avoid(&[e.clone(), e], &cover).unwrap();
        assert_eq!(run.y, w(""));
        assert!(matches!(
            gms_avoid(&trees, &Cover::new(alloc::vec![w("01")])),
            Err(Error::ScheduleMismatch { .. })
        ));
    }

    #[test]
    fn avoid_with_layered_trees() {
        let trees = [singleton_zero(8), no_11(8), singleton_zero(8)];
        let schedule = gms_schedule(&trees).unwrap();
        assert!(schedule.windows(2).all(|p| p[0] < p[1]));
        for seed in 0..64u64 {
            let words = schedule
                .iter()
                .enumerate()
                .map(|(i, &len)| BinaryWord::from_index(seed.wrapping_mul(37 + i as u64) % (1 << len), len))
                .collect();
            let cover = Cover::new(words);
            let run = gms_avoid(&trees, &cover).unwrap();
            assert!(avoidance_holds(&trees, &cover, &run.y).unwrap());
            for pair in run.steps.windows(2) {
                assert!(pair[0].gamma.is_prefix_of(&pair[1].gamma));
            }
        }
    }

    #[test]
    fn smz_examples() {
        let c = singleton_zero(3);
        assert_eq!(
            smz_witness_translate(&ClopenSet::empty(3).unwrap(), &c).unwrap(),
            Some(w("000"))
        );
        assert_eq!(smz_witness_translate(&ClopenSet::full(3).unwrap(), &c).unwrap(), None);
        let x = cylinder(&w("1"), 3).unwrap();
        let z = smz_witness_translate(&x, &c).unwrap().unwrap();
        assert_eq!(z, w("000"));
        assert!(x.translate(&z).unwrap().is_disjoint(c.as_clopen()).unwrap());
    }

    #[test]
    fn aa_examples() {
        let e = ClosedTree::empty(6).unwrap();
        assert_eq!(lemma_aa_beta(&e, 2, &w("1"), &w("000")).unwrap(), w("100"));
        assert_eq!(lemma_aa_beta(&e, 2, &w("1"), &w("011")).unwrap(), w("111"));
        let t = no_11(3);
        let beta = lemma_aa_beta(&t, 2, &w("0"), &w("000")).unwrap();
        assert!(w("0").is_prefix_of(&beta));
        let sum = cylinder(&beta, 3)
            .unwrap()
            .xor_sumset(&cylinder(&w("000"), 3).unwrap())
            .unwrap();
        assert!(sum.is_disjoint(t.as_clopen()).unwrap());
        assert_eq!(beta, w("011"));
        assert!(matches!(
            lemma_aa_beta(&t, 1, &w("0"), &w("00")),
            Err(Error::NotPorous { k: 1 })
        ));
    }

    #[test]
    fn micro_examples() {
        let e = ClosedTree::empty(6).unwrap();
        let zeros = Cover::new((1..=3).map(|i| BinaryWord::zeros(2 * i)).collect());
        let run = micro_porous_avoid(&e, 2, &zeros, MicroSchedule::SuccessorK).unwrap();
        assert_eq!(run.y, BinaryWord::zeros(6));

        let t = no_11(6);
        let run = micro_porous_avoid(&t, 2, &zeros, MicroSchedule::SuccessorK).unwrap();
        assert!(avoidance_holds(&[t.clone(), t.clone(), t.clone()], &zeros, &run.y).unwrap());

        let s = singleton_zero(4);
        let ones = Cover::new((1..=4).map(BinaryWord::zeros).collect());
        let run = micro_porous_avoid(&s, 1, &ones, MicroSchedule::Kn).unwrap();
        assert_eq!(run.steps[0].n, 1);
        assert!(!s.is_alive(&run.y));
        assert!(matches!(
            micro_porous_avoid(&t, 2, &ones, MicroSchedule::SuccessorK),
            Err(Error::ScheduleMismatch { .. })
        ));
    }
}
