//! The star operation `F* = {A : A + F ≠ G for all F ∈ F}` and the bounded
//! hat operation, computed by brute force over finite groups, together with
//! exhaustive checkers for the laws they satisfy.
//!
//! Families over an enumerable group (order at most [`MAX_STAR_ORDER`]) are
//! handled internally as [`FamilyMask`]s: bit vectors indexed by the subset
//! mask, so `F*` becomes a single pass over all `2^order` candidates.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement, GroupSubset, SetFamily};

/// Largest order for which `star` enumerates every subset.
pub const MAX_STAR_ORDER: usize = 20;
/// Largest order for which the full cover table `A + F = G` is precomputed.
pub const COVER_TABLE_ORDER: usize = 8;
/// Largest order for which every family `A` is searched in the fixed-point check.
pub const FIXED_POINT_ORDER: usize = 4;

/// A family as a bit vector over subset masks: bit `A` set iff `A` is a member.
pub type FamilyMask = BitVec;

/// Precomputed arithmetic for families over one enumerable group.
pub struct StarAlgebra {
    group: FiniteAbelianGroup,
    order: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    full: u32,
    /// `covers[A]` has bit `F` set iff `A + F = G`.
    covers: Option<Vec<BitVec>>,
}

impl StarAlgebra {
    pub fn new(group: &FiniteAbelianGroup) -> Result<Self> {
        let order = group.order();
        if order > MAX_STAR_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                limit: MAX_STAR_ORDER,
            });
        }
        let full = (1u32 << order) - 1;
        let mut algebra = StarAlgebra {
            group: group.clone(),
            order,
            add: group.addition_table(),
            neg: group.elements().map(|x| group.neg(x).index() as u32).collect(),
            full,
            covers: None,
        };
        if order <= COVER_TABLE_ORDER {
            algebra.covers = Some(algebra.build_cover_table());
        }
        Ok(algebra)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Number of subsets, `2^order`.
    pub fn subset_count(&self) -> usize {
        1 << self.order
    }

    pub fn full_mask(&self) -> u32 {
        self.full
    }

    pub fn empty_family(&self) -> FamilyMask {
        BitVec::zeros(self.subset_count())
    }

    pub fn power_set(&self) -> FamilyMask {
        BitVec::ones(self.subset_count())
    }

    pub fn translate_mask(&self, mask: u32, y: usize) -> u32 {
        let row = &self.add[y * self.order..(y + 1) * self.order];
        let mut out = 0;
        let mut rest = mask;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << row[x];
        }
        out
    }

    pub fn sumset_mask(&self, a: u32, b: u32) -> u32 {
        let mut out = 0;
        let mut rest = a;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.translate_mask(b, x);
        }
        out
    }

    pub fn is_cover_mask(&self, a: u32, b: u32) -> bool {
        match &self.covers {
            Some(table) => table[a as usize].get(b as usize),
            None => self.sumset_mask(a, b) == self.full,
        }
    }

    pub fn to_mask(&self, family: &SetFamily) -> Result<FamilyMask> {
        if family.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = self.empty_family();
        for m in family.members() {
            out.set(m.mask() as usize, true);
        }
        Ok(out)
    }

    pub fn to_family(&self, mask: &FamilyMask) -> SetFamily {
        let members = mask
            .iter_ones()
            .map(|a| GroupSubset::from_mask(&self.group, a as u64).expect("order <= 20"))
            .collect();
        SetFamily::new(&self.group, members).expect("members share the group")
    }

    /// `F*` for a family given as a mask.
    pub fn star(&self, family: &FamilyMask) -> FamilyMask {
        match &self.covers {
            Some(table) => BitVec::from_fn(self.subset_count(), |a| !table[a].intersects(family)),
            None => {
                let mut out = self.power_set();
                for f in family.iter_ones() {
                    out.and_assign(&self.star_of_single(f as u32));
                    if out.is_zero() {
                        break;
                    }
                }
                out
            }
        }
    }

    /// `{F}* = {A : A ⊆ z - F^c for some z}`, the down-closure of the
    /// translates of the reflected complement.
    fn star_of_single(&self, f: u32) -> FamilyMask {
        let complement = self.reflect_mask(self.full & !f);
        let mut out = self.empty_family();
        for y in 0..self.order {
            out.set(self.translate_mask(complement, y) as usize, true);
        }
        down_closure(&mut out, self.order);
        out
    }

    pub fn reflect_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        let mut rest = mask;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << self.neg[x];
        }
        out
    }

    /// Least `z` with `(z - A) ∩ F = ∅`, the least point missed by `A + F`.
    pub fn uncovered_point_mask(&self, a: u32, f: u32) -> Option<usize> {
        let neg_a = self.reflect_mask(a);
        (0..self.order).find(|&z| self.translate_mask(neg_a, z) & f == 0)
    }

    pub fn check_laws(&self, f: &FamilyMask, g: &FamilyMask) -> LawReport {
        let fs = self.star(f);
        let gs = self.star(g);
        let fss = self.star(&fs);
        let fsss = self.star(&fss);
        let mut entries = Vec::with_capacity(6);

        let g_in_fs = g.is_subset_of(&fs);
        let f_in_gs = f.is_subset_of(&gs);
        entries.push(LawEntry::new(Law::Symmetry, g_in_fs == f_in_gs, None));

        entries.push(LawEntry::new(
            Law::Inflation,
            f.is_subset_of(&fss),
            f.and_not(&fss).first_one(),
        ));

        let antitone_violation = if g.is_subset_of(f) {
            fs.and_not(&gs).first_one()
        } else {
            None
        };
        entries.push(LawEntry::new(
            Law::Antitone,
            antitone_violation.is_none(),
            antitone_violation,
        ));

        entries.push(LawEntry::new(
            Law::TripleStar,
            fs == fsss,
            fs.or(&fsss).and_not(&fs.and(&fsss)).first_one(),
        ));

        let down = self.downward_violation(&fs);
        entries.push(LawEntry::new(Law::DownwardClosed, down.is_none(), down));
        let shift = self.translation_violation(&fs);
        entries.push(LawEntry::new(Law::TranslationInvariant, shift.is_none(), shift));

        LawReport { entries }
    }

    /// `G ⊆ F ⟹ F* ⊆ G*` for every `G` obtained by dropping one member.
    pub fn antitone_under_removal(&self, f: &FamilyMask) -> Option<usize> {
        let fs = self.star(f);
        for member in f.iter_ones() {
            let mut g = f.clone();
            g.set(member, false);
            if !fs.is_subset_of(&self.star(&g)) {
                return Some(member);
            }
        }
        None
    }

    fn downward_violation(&self, family: &FamilyMask) -> Option<usize> {
        family.iter_ones().find(|&a| {
            let mut rest = a;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if !family.get(a & !bit) {
                    return true;
                }
            }
            false
        })
    }

    fn translation_violation(&self, family: &FamilyMask) -> Option<usize> {
        family.iter_ones().find(|&a| {
            (0..self.order).any(|y| !family.get(self.translate_mask(a as u32, y) as usize))
        })
    }

    pub fn lemma_ccc(&self, f: &FamilyMask) -> CccOutcome {
        let fs = self.star(f);
        let mut lhs = true;
        for a in f.not().iter_ones() {
            let mut extended = f.clone();
            extended.set(a, true);
            if self.star(&extended) == fs {
                lhs = false;
                break;
            }
        }
        let rhs = *f == self.star(&fs);
        CccOutcome { lhs, rhs }
    }

    /// Every family of the form `A*`, as a bit vector over family masks.
    /// Requires order at most [`FIXED_POINT_ORDER`].
    pub fn star_image(&self) -> Result<BitVec> {
        self.check_fixed_point_order()?;
        let families = 1usize << self.subset_count();
        let mut image = BitVec::zeros(families);
        for a in 0..families {
            let star = self.star(&BitVec::from_u64(a as u64, self.subset_count()));
            image.set(star.to_u64() as usize, true);
        }
        Ok(image)
    }

    pub fn fixed_point(&self, f: &FamilyMask) -> Result<FixedPointOutcome> {
        self.check_fixed_point_order()?;
        let fs = self.star(f);
        let lhs = *f == self.star(&fs);
        let witness = if lhs {
            Some(fs)
        } else {
            let families = 1usize << self.subset_count();
            (0..families)
                .map(|a| BitVec::from_u64(a as u64, self.subset_count()))
                .find(|a| self.star(a) == *f)
        };
        Ok(FixedPointOutcome {
            lhs,
            rhs: witness.is_some(),
            witness,
        })
    }

    fn check_fixed_point_order(&self) -> Result<()> {
        if self.order > FIXED_POINT_ORDER {
            Err(Error::OrderTooLarge {
                order: self.order,
                limit: FIXED_POINT_ORDER,
            })
        } else {
            Ok(())
        }
    }

    /// `{A : ∀F ∃T, |T| ≤ t, A ⊆ F^c + T}`.
    pub fn hat(&self, family: &FamilyMask, t: usize) -> FamilyMask {
        let size = t.min(self.order);
        let mut out = self.power_set();
        for f in family.iter_ones() {
            let complement = self.full & !(f as u32);
            let translates: Vec<u32> = (0..self.order)
                .map(|y| self.translate_mask(complement, y))
                .collect();
            let mut covered = self.empty_family();
            for_each_combination(self.order, size, |ts| {
                let mut union = 0u32;
                let mut rest = ts;
                while rest != 0 {
                    union |= translates[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                covered.set(union as usize, true);
            });
            down_closure(&mut covered, self.order);
            out.and_assign(&covered);
        }
        out
    }

    fn build_cover_table(&self) -> Vec<BitVec> {
        let n = self.subset_count();
        let shifted: Vec<Vec<u32>> = (0..self.order)
            .map(|x| (0..n as u32).map(|f| self.translate_mask(f, x)).collect())
            .collect();
        (0..n)
            .map(|a| {
                BitVec::from_fn(n, |f| {
                    let mut sum = 0;
                    let mut rest = a;
                    while rest != 0 {
                        sum |= shifted[rest.trailing_zeros() as usize][f];
                        rest &= rest - 1;
                    }
                    sum == self.full
                })
            })
            .collect()
    }
}

/// Close a family mask over `2^nbits` subsets under taking subsets.
fn down_closure(family: &mut BitVec, nbits: usize) {
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    let len = family.len();
    let mut words: Vec<u64> = family.words().to_vec();
    for i in 0..nbits {
        if i < 6 {
            let s = 1 << i;
            for w in &mut words {
                // positions with bit i set push down to bit i clear
                *w |= (*w >> s) & LOW[i];
            }
        } else {
            let stride = 1 << (i - 6);
            for wi in 0..words.len() {
                if wi & stride != 0 {
                    let v = words[wi];
                    words[wi ^ stride] |= v;
                }
            }
        }
    }
    let mut out = BitVec::zeros(len);
    for (wi, w) in words.iter().enumerate() {
        let mut rest = *w;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let i = wi * 64 + b;
            if i < len {
                out.set(i, true);
            }
        }
    }
    *family = out;
}

/// Calls `f` with every `k`-element subset of `0..n` as a bit mask.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(u32)) {
    if k == 0 {
        f(0);
        return;
    }
    if k > n {
        return;
    }
    let mut c: u32 = (1 << k) - 1;
    let limit: u64 = 1 << n;
    while u64::from(c) < limit {
        f(c);
        let lowest = c & c.wrapping_neg();
        let ripple = c + lowest;
        c = (((ripple ^ c) >> 2) / lowest) | ripple;
        if ripple == 0 {
            break;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// `G ⊆ F* ⟺ F ⊆ G*`
    Symmetry,
    /// `F ⊆ F**`
    Inflation,
    /// `G ⊆ F ⟹ F* ⊆ G*`
    Antitone,
    /// `F* = F***`
    TripleStar,
    DownwardClosed,
    TranslationInvariant,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Symmetry => "symmetry",
            Law::Inflation => "inflation",
            Law::Antitone => "antitone",
            Law::TripleStar => "triple_star",
            Law::DownwardClosed => "downward_closed",
            Law::TranslationInvariant => "translation_invariant",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawEntry {
    pub law: Law,
    pub pass: bool,
    /// Subset mask witnessing the failure, when one is pinned down.
    pub counterexample: Option<usize>,
}

impl LawEntry {
    fn new(law: Law, pass: bool, counterexample: Option<usize>) -> Self {
        LawEntry {
            law,
            pass,
            counterexample: if pass { None } else { counterexample },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub entries: Vec<LawEntry>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

/// Both sides of the criterion `(∀A ∉ F) (F ∪ {A})* ≠ F*` versus `F = F**`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CccOutcome {
    pub lhs: bool,
    pub rhs: bool,
}

impl CccOutcome {
    pub fn agree(self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointOutcome {
    /// `F = F**`
    pub lhs: bool,
    /// `F = A*` for some family `A`
    pub rhs: bool,
    pub witness: Option<FamilyMask>,
}

impl FixedPointOutcome {
    pub fn agree(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn star(family: &SetFamily) -> Result<SetFamily> {
    let algebra = StarAlgebra::new(family.group())?;
    let mask = algebra.to_mask(family)?;
    Ok(algebra.to_family(&algebra.star(&mask)))
}

/// Whether `A ∈ F*`; when it is, for every member `F` the least `z` with
/// `(z - A) ∩ F = ∅`.
pub fn star_member(family: &SetFamily, a: &GroupSubset) -> Result<Option<Vec<GroupElement>>> {
    if a.group() != family.group() {
        return Err(Error::GroupMismatch);
    }
    let mut witnesses = Vec::with_capacity(family.len());
    for f in family.members() {
        match crate::group::uncovered_point(a, f)? {
            Some(y) => witnesses.push(y),
            None => return Ok(None),
        }
    }
    Ok(Some(witnesses))
}

pub fn check_star_laws(f: &SetFamily, g: &SetFamily) -> Result<LawReport> {
    if f.group() != g.group() {
        return Err(Error::GroupMismatch);
    }
    let algebra = StarAlgebra::new(f.group())?;
    Ok(algebra.check_laws(&algebra.to_mask(f)?, &algebra.to_mask(g)?))
}

pub fn check_lemma_ccc(f: &SetFamily) -> Result<CccOutcome> {
    let algebra = StarAlgebra::new(f.group())?;
    Ok(algebra.lemma_ccc(&algebra.to_mask(f)?))
}

pub fn check_fixed_point_characterization(f: &SetFamily) -> Result<FixedPointOutcome> {
    let algebra = StarAlgebra::new(f.group())?;
    algebra.fixed_point(&algebra.to_mask(f)?)
}

/// All subsets of the evens together with all subsets of the odds, over `Z_{2m}`.
pub fn parity_family(m: usize) -> Result<SetFamily> {
    if m == 0 {
        return Err(Error::InvalidParameter("parity family needs m >= 1".into()));
    }
    let group = FiniteAbelianGroup::cyclic(2 * m)?;
    if group.order() > MAX_STAR_ORDER {
        return Err(Error::OrderTooLarge {
            order: group.order(),
            limit: MAX_STAR_ORDER,
        });
    }
    let mut members = Vec::with_capacity(1 << (m + 1));
    for parity in 0..2 {
        for choice in 0u64..(1 << m) {
            let mut mask = 0u64;
            for i in 0..m {
                if choice >> i & 1 == 1 {
                    mask |= 1 << (2 * i + parity);
                }
            }
            members.push(GroupSubset::from_mask(&group, mask)?);
        }
    }
    SetFamily::new(&group, members)
}

pub fn hat_t(family: &SetFamily, t: usize) -> Result<SetFamily> {
    if t == 0 {
        return Err(Error::InvalidParameter("hat needs t >= 1".into()));
    }
    let algebra = StarAlgebra::new(family.group())?;
    if t > algebra.order {
        return Err(Error::InvalidParameter(alloc::format!(
            "t = {t} exceeds the group order {}",
            algebra.order
        )));
    }
    let mask = algebra.to_mask(family)?;
    Ok(algebra.to_family(&algebra.hat(&mask, t)))
}

/// Some `I ∈ 𝓘` and `J ∈ 𝓙` with `I ∪ J = G`.
pub fn are_orthogonal(i: &SetFamily, j: &SetFamily) -> Result<bool> {
    if i.group() != j.group() {
        return Err(Error::GroupMismatch);
    }
    for a in i.members() {
        for b in j.members() {
            if a.union(b)?.is_full() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Largest number of lattice points `ksigma_hat_witness` will enumerate.
pub const MAX_WINDOW_POINTS: u64 = 1 << 24;

/// Finite window check that the complement of a box, shifted by `0` and by
/// `b(n) = 2 f(n) + 1`, covers every point of `[-W, W]^d`.
pub fn ksigma_hat_witness(bounds: &[i64], window: i64) -> Result<bool> {
    if bounds.is_empty() {
        return Err(Error::InvalidParameter("need at least one coordinate".into()));
    }
    if let Some(&bad) = bounds.iter().find(|&&f| f < 1) {
        return Err(Error::InvalidParameter(alloc::format!(
            "box bound {bad} must be positive"
        )));
    }
    let needed = bounds.iter().map(|&f| 3 * f + 1).max().unwrap_or(0);
    if window < needed {
        return Err(Error::WindowTooSmall { window, needed });
    }
    let side = (2 * window + 1) as u64;
    let points = (0..bounds.len()).try_fold(1u64, |acc, _| acc.checked_mul(side));
    if points.is_none_or(|p| p > MAX_WINDOW_POINTS) {
        return Err(Error::InvalidParameter("window has too many points".into()));
    }

    let in_box = |x: &[i64]| x.iter().zip(bounds).all(|(&v, &f)| v.abs() < f);
    let in_window = |x: &[i64]| x.iter().all(|v| v.abs() <= window);
    let shift: Vec<i64> = bounds.iter().map(|&f| 2 * f + 1).collect();

    let mut x = vec![-window; bounds.len()];
    let mut back = vec![0i64; bounds.len()];
    loop {
        let covered = if !in_box(&x) {
            true
        } else {
            for (slot, (&v, &s)) in back.iter_mut().zip(x.iter().zip(&shift)) {
                *slot = v - s;
            }
            in_window(&back) && !in_box(&back)
        };
        if !covered {
            return Ok(false);
        }
        // odometer step over the window
        let mut i = 0;
        loop {
            if i == x.len() {
                return Ok(true);
            }
            if x[i] < window {
                x[i] += 1;
                break;
            }
            x[i] = -window;
            i += 1;
        }
    }
}

/// Display helper for a family mask as hex subset strings.
pub fn family_hexes(algebra: &StarAlgebra, family: &FamilyMask) -> Vec<String> {
    algebra
        .to_family(family)
        .members()
        .iter()
        .map(GroupSubset::to_hex)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn fam(g: &FiniteAbelianGroup, masks: &[u64]) -> SetFamily {
        SetFamily::from_masks(g, masks).unwrap()
    }

    /// Direct definition: every candidate against every member via sumsets.
    fn star_oracle(f: &SetFamily) -> SetFamily {
        let g = f.group();
        let members = (0u64..1 << g.order())
            .map(|a| GroupSubset::from_mask(g, a).unwrap())
            .filter(|a| {
                f.members()
                    .iter()
                    .all(|m| !crate::group::sumset(a, m).unwrap().is_full())
            })
            .collect();
        SetFamily::new(g, members).unwrap()
    }

    #[test]
    fn star_examples() {
        let z2 = z(2);
        assert_eq!(star(&fam(&z2, &[0b01])).unwrap(), fam(&z2, &[0, 0b01, 0b10]));
        for g in [z(3), FiniteAbelianGroup::parse("2x2").unwrap(), z(5)] {
            let all: Vec<u64> = (0..1 << g.order()).collect();
            assert_eq!(star(&fam(&g, &[0])).unwrap(), fam(&g, &all));
            assert_eq!(star(&SetFamily::empty(&g)).unwrap(), fam(&g, &all));
            let full = (1u64 << g.order()) - 1;
            assert_eq!(star(&fam(&g, &[0b1, full])).unwrap(), fam(&g, &[0]));
        }
    }

    #[test]
    fn star_matches_definition_with_and_without_cover_table() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for order in [3usize, 6, 9, 10] {
            let g = z(order);
            for _ in 0..6 {
                let count = rng.gen_range(0..5);
                let masks: Vec<u64> = (0..count).map(|_| rng.gen_range(0..1u64 << order)).collect();
                let f = fam(&g, &masks);
                assert_eq!(star(&f).unwrap(), star_oracle(&f), "order {order} {masks:?}");
            }
        }
    }

    #[test]
    fn star_member_witnesses() {
        let z4 = z(4);
        let f = fam(&z4, &[0b0101]);
        let a = GroupSubset::from_indices(&z4, &[0]).unwrap();
        assert_eq!(star_member(&f, &a).unwrap(), Some(vec![z4.element(1).unwrap()]));
        assert!(star_member(&f, &GroupSubset::empty(&z4)).unwrap().is_some());
        let z2 = z(2);
        assert_eq!(star_member(&fam(&z2, &[0b01]), &GroupSubset::full(&z2)).unwrap(), None);
    }

    #[test]
    fn laws_hold_for_every_family_over_z3() {
        let g = z(3);
        let algebra = StarAlgebra::new(&g).unwrap();
        for f in 0u64..256 {
            let f = BitVec::from_u64(f, 8);
            let report = algebra.check_laws(&f, &f);
            assert!(report.all_pass(), "{f:?} {report:?}");
            assert!(algebra.lemma_ccc(&f).agree());
            assert!(algebra.fixed_point(&f).unwrap().agree());
        }
    }

    #[test]
    fn empty_family_is_degenerate_but_lawful() {
        let g = z(3);
        let algebra = StarAlgebra::new(&g).unwrap();
        let empty = algebra.empty_family();
        assert_eq!(algebra.star(&empty), algebra.power_set());
        assert_eq!(algebra.star(&algebra.power_set()), BitVec::from_u64(1, 8));
        assert!(algebra.check_laws(&empty, &empty).all_pass());
        assert!(algebra.lemma_ccc(&empty).agree());
    }

    #[test]
    fn power_set_ccc_is_vacuous_on_the_left() {
        let g = z(2);
        let algebra = StarAlgebra::new(&g).unwrap();
        let outcome = algebra.lemma_ccc(&algebra.power_set());
        assert!(outcome.lhs);
        // P(G)** = {∅}* = P(G)
        assert!(outcome.rhs);
    }

    #[test]
    fn laws_over_klein_group_random_pairs() {
        use rand::{Rng, SeedableRng};
        let g = FiniteAbelianGroup::parse("2x2").unwrap();
        let algebra = StarAlgebra::new(&g).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let f = BitVec::from_u64(rng.gen_range(0..1 << 16), 16);
            let h = BitVec::from_u64(rng.gen_range(0..1 << 16), 16);
            assert!(algebra.check_laws(&f, &h).all_pass());
        }
    }

    #[test]
    fn fixed_point_rejects_large_groups() {
        let f = SetFamily::empty(&z(5));
        assert!(matches!(
            check_fixed_point_characterization(&f),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(matches!(
            star(&SetFamily::empty(&z(21))),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn fixed_point_of_a_star_is_witnessed() {
        let g = z(4);
        let a = fam(&g, &[0b0011, 0b0101]);
        let f = star(&a).unwrap();
        let outcome = check_fixed_point_characterization(&f).unwrap();
        assert!(outcome.lhs && outcome.rhs);
        let not_closed = fam(&g, &[0b0011]);
        let outcome = check_fixed_point_characterization(&not_closed).unwrap();
        assert!(!outcome.lhs && !outcome.rhs && outcome.witness.is_none());
    }

    #[test]
    fn parity_families_are_self_dual() {
        assert_eq!(parity_family(1).unwrap(), fam(&z(2), &[0, 0b01, 0b10]));
        let p2 = parity_family(2).unwrap();
        assert_eq!(p2, fam(&z(4), &[0, 0b0001, 0b0100, 0b0101, 0b0010, 0b1000, 0b1010]));
        for m in 1..=4 {
            let p = parity_family(m).unwrap();
            assert_eq!(star(&p).unwrap(), p, "m = {m}");
            for a in p.members() {
                let sum = crate::group::sumset(a, a).unwrap();
                assert!(sum.elements().all(|x| x.index() % 2 == 0));
            }
        }
        assert!(parity_family(0).is_err());
    }

    #[test]
    fn hat_examples() {
        let z4 = z(4);
        let all: Vec<u64> = (0..16).collect();
        let f = fam(&z4, &[0b0011, 0b0110]);
        assert_eq!(hat_t(&f, 4).unwrap(), fam(&z4, &all));
        assert_eq!(hat_t(&fam(&z4, &[0b1111]), 1).unwrap(), fam(&z4, &[0]));
        assert_eq!(hat_t(&fam(&z4, &[0b1111]), 3).unwrap(), fam(&z4, &[0]));
        // F = {0,1}: the translates of {2,3} and their subsets
        let h = hat_t(&fam(&z4, &[0b0011]), 1).unwrap();
        let expected = fam(
            &z4,
            &[0, 0b0001, 0b0010, 0b0100, 0b1000, 0b1100, 0b1001, 0b0011, 0b0110],
        );
        assert_eq!(h, expected);
        assert!(hat_t(&f, 0).is_err());
        assert!(hat_t(&f, 5).is_err());
    }

    #[test]
    fn hat_contains_star() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for spec in ["3", "4", "5", "2x2", "2x2x2", "6", "7"] {
            let g = FiniteAbelianGroup::parse(spec).unwrap();
            let algebra = StarAlgebra::new(&g).unwrap();
            let order = g.order();
            for _ in 0..50 {
                let mut f = BitVec::from_fn(algebra.subset_count(), |_| rng.gen_bool(0.05));
                // A* ⊆ A-hat needs -F^c to be a translate of F^c; closing the
                // family under reflection provides that in every group.
                for m in f.clone().iter_ones() {
                    f.set(algebra.reflect_mask(m as u32) as usize, true);
                }
                for t in 1..=order {
                    assert!(algebra.star(&f).is_subset_of(&algebra.hat(&f, t)), "{spec}");
                }
            }
        }
    }

    #[test]
    fn hat_can_miss_star_without_reflection_symmetry() {
        // F = {0,1,3} in Z_6: {1,2,4} = -F^c lies in {F}*, but no translate
        // of F^c = {2,4,5} contains it.
        let z6 = z(6);
        let algebra = StarAlgebra::new(&z6).unwrap();
        let f = BitVec::from_fn(64, |m| m == 0b001011);
        let star = algebra.star(&f);
        let hat = algebra.hat(&f, 1);
        assert!(!star.is_subset_of(&hat));
    }

    #[test]
    fn orthogonality() {
        let z4 = z(4);
        assert!(are_orthogonal(&fam(&z4, &[0b0101]), &fam(&z4, &[0b1010])).unwrap());
        assert!(!are_orthogonal(&fam(&z4, &[0]), &fam(&z4, &[0b0111, 0b1011])).unwrap());
        assert!(are_orthogonal(&fam(&z4, &[0]), &fam(&z4, &[0b1111])).unwrap());
    }

    #[test]
    fn ksigma_window_examples() {
        assert!(ksigma_hat_witness(&[2], 7).unwrap());
        assert!(ksigma_hat_witness(&[1, 1], 4).unwrap());
        assert!(ksigma_hat_witness(&[1, 2, 1], 7).unwrap());
        assert!(matches!(ksigma_hat_witness(&[0], 7), Err(Error::InvalidParameter(_))));
        assert_eq!(
            ksigma_hat_witness(&[2], 6),
            Err(Error::WindowTooSmall { window: 6, needed: 7 })
        );
    }

    #[test]
    fn combinations_are_enumerated_once() {
        let mut seen = Vec::new();
        for_each_combination(5, 2, |c| seen.push(c));
        assert_eq!(seen.len(), 10);
        assert!(seen.iter().all(|c| c.count_ones() == 2));
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 10);
        let mut full = 0;
        for_each_combination(20, 20, |_| full += 1);
        assert_eq!(full, 1);
    }

    #[test]
    fn down_closure_matches_naive() {
        let family = BitVec::from_fn(256, |a| a == 0b1011_0001 || a == 0b0100_0110);
        let mut closed = family.clone();
        down_closure(&mut closed, 8);
        for a in 0..256usize {
            let expected = family.iter_ones().any(|f| a & !f == 0);
            assert_eq!(closed.get(a), expected, "{a:08b}");
        }
    }
}
