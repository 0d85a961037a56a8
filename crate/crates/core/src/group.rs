//! Finite abelian groups as products of cyclic groups, their subsets as
//! dense bit vectors, and Minkowski sums.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Largest group order accepted by the constructor.
pub const MAX_ORDER: usize = 1 << 24;

/// `Z_{m_0} x Z_{m_1} x ...`; element indices are mixed-radix with the
/// first modulus as the least significant digit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    moduli: Vec<usize>,
    order: usize,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("no moduli".into()));
        }
        let mut order = 1usize;
        for &m in &moduli {
            if m < 2 {
                return Err(Error::InvalidGroup(alloc::format!("modulus {m} < 2")));
            }
            order = order
                .checked_mul(m)
                .filter(|&o| o <= MAX_ORDER)
                .ok_or_else(|| Error::InvalidGroup("order too large".into()))?;
        }
        Ok(FiniteAbelianGroup { moduli, order })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        FiniteAbelianGroup::new(alloc::vec![n])
    }

    /// Parses `"4"` or `"2x2x3"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let moduli = spec
            .split(['x', 'X', '*'])
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(alloc::format!("bad modulus {part:?} in {spec:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteAbelianGroup::new(moduli)
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(0)
    }

    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index < self.order {
            Ok(GroupElement(index))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    pub fn digits(&self, x: GroupElement) -> Vec<usize> {
        let mut rest = x.0;
        self.moduli
            .iter()
            .map(|&m| {
                let d = rest % m;
                rest /= m;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[usize]) -> Result<GroupElement> {
        if digits.len() != self.moduli.len() {
            return Err(Error::LengthMismatch {
                expected: self.moduli.len(),
                found: digits.len(),
            });
        }
        let mut index = 0;
        for (&d, &m) in digits.iter().zip(&self.moduli).rev() {
            if d >= m {
                return Err(Error::InvalidParameter(alloc::format!("digit {d} >= modulus {m}")));
            }
            index = index * m + d;
        }
        Ok(GroupElement(index))
    }

    pub fn add(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let (mut x, mut y) = (a.0, b.0);
        let (mut index, mut place) = (0, 1);
        for &m in &self.moduli {
            index += ((x % m + y % m) % m) * place;
            place *= m;
            x /= m;
            y /= m;
        }
        GroupElement(index)
    }

    pub fn neg(&self, a: GroupElement) -> GroupElement {
        let mut x = a.0;
        let (mut index, mut place) = (0, 1);
        for &m in &self.moduli {
            index += ((m - x % m) % m) * place;
            place *= m;
            x /= m;
        }
        GroupElement(index)
    }

    /// `table[a * order + b] = a + b`.
    pub fn addition_table(&self) -> Vec<u32> {
        let n = self.order;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.add(GroupElement(a), GroupElement(b)).0 as u32);
            }
        }
        table
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| alloc::format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(usize);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    group: FiniteAbelianGroup,
    bits: BitVec,
}

impl GroupSubset {
    pub fn empty(group: &FiniteAbelianGroup) -> Self {
        GroupSubset {
            group: group.clone(),
            bits: BitVec::zeros(group.order),
        }
    }

    pub fn full(group: &FiniteAbelianGroup) -> Self {
        GroupSubset {
            group: group.clone(),
            bits: BitVec::ones(group.order),
        }
    }

    pub fn from_bits(group: &FiniteAbelianGroup, bits: BitVec) -> Result<Self> {
        if bits.len() != group.order {
            return Err(Error::LengthMismatch {
                expected: group.order,
                found: bits.len(),
            });
        }
        Ok(GroupSubset {
            group: group.clone(),
            bits,
        })
    }

    pub fn from_indices(group: &FiniteAbelianGroup, indices: &[usize]) -> Result<Self> {
        let mut bits = BitVec::zeros(group.order);
        for &i in indices {
            group.element(i)?;
            bits.set(i, true);
        }
        Ok(GroupSubset {
            group: group.clone(),
            bits,
        })
    }

    /// Subset whose membership bits are the low `order` bits of `mask`.
    pub fn from_mask(group: &FiniteAbelianGroup, mask: u64) -> Result<Self> {
        if group.order > 64 {
            return Err(Error::OrderTooLarge {
                order: group.order,
                limit: 64,
            });
        }
        Ok(GroupSubset {
            group: group.clone(),
            bits: BitVec::from_u64(mask, group.order),
        })
    }

    pub fn from_hex(group: &FiniteAbelianGroup, hex: &str) -> Result<Self> {
        GroupSubset::from_bits(group, BitVec::from_hex(hex, group.order)?)
    }

    pub fn to_hex(&self) -> String {
        self.bits.to_hex()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    /// Membership bits as an integer; only meaningful for order <= 64.
    pub fn mask(&self) -> u64 {
        self.bits.to_u64()
    }

    pub fn contains(&self, x: GroupElement) -> bool {
        self.bits.get(x.0)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.bits.iter_ones().map(GroupElement)
    }

    pub fn complement(&self) -> GroupSubset {
        GroupSubset {
            group: self.group.clone(),
            bits: self.bits.not(),
        }
    }

    pub fn union(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.check_same_group(other)?;
        Ok(GroupSubset {
            group: self.group.clone(),
            bits: self.bits.or(&other.bits),
        })
    }

    pub fn is_disjoint(&self, other: &GroupSubset) -> Result<bool> {
        self.check_same_group(other)?;
        Ok(!self.bits.intersects(&other.bits))
    }

    pub fn is_subset_of(&self, other: &GroupSubset) -> Result<bool> {
        self.check_same_group(other)?;
        Ok(self.bits.is_subset_of(&other.bits))
    }

    fn check_same_group(&self, other: &GroupSubset) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.iter_ones()).finish()
    }
}

/// `A + B = {a + b : a in A, b in B}`.
pub fn sumset(a: &GroupSubset, b: &GroupSubset) -> Result<GroupSubset> {
    a.check_same_group(b)?;
    let group = &a.group;
    let mut out = BitVec::zeros(group.order);
    let b_elems: Vec<GroupElement> = b.elements().collect();
    for x in a.elements() {
        for &y in &b_elems {
            out.set(group.add(x, y).0, true);
        }
    }
    Ok(GroupSubset {
        group: group.clone(),
        bits: out,
    })
}

/// `A + y`.
pub fn translate(a: &GroupSubset, y: GroupElement) -> Result<GroupSubset> {
    a.group.element(y.0)?;
    let mut out = BitVec::zeros(a.group.order);
    for x in a.elements() {
        out.set(a.group.add(x, y).0, true);
    }
    Ok(GroupSubset {
        group: a.group.clone(),
        bits: out,
    })
}

/// `A + B = G`, computed from the sumset.
pub fn is_cover(a: &GroupSubset, b: &GroupSubset) -> Result<bool> {
    Ok(sumset(a, b)?.is_full())
}

/// `-A = {-a : a in A}`.
pub fn reflect(a: &GroupSubset) -> GroupSubset {
    let mut out = BitVec::zeros(a.group.order);
    for x in a.elements() {
        out.set(a.group.neg(x).0, true);
    }
    GroupSubset {
        group: a.group.clone(),
        bits: out,
    }
}

/// Least `z` with `(z - A) ∩ B = ∅`, i.e. the least point missed by `A + B`;
/// `None` exactly when `A + B = G`.
///
/// In a group of exponent two `z - A = A + z`, so this is the least `y`
/// with `(A + y) ∩ B = ∅`. In general the unreflected form is not
/// equivalent to `A + B ≠ G` (it already fails in `Z_6`).
pub fn uncovered_point(a: &GroupSubset, b: &GroupSubset) -> Result<Option<GroupElement>> {
    a.check_same_group(b)?;
    let neg_a = reflect(a);
    for z in a.group.elements() {
        if translate(&neg_a, z)?.is_disjoint(b)? {
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// Least `y` with `(A + y) ∩ B = ∅`, with no reflection.
pub fn disjoint_translate(a: &GroupSubset, b: &GroupSubset) -> Result<Option<GroupElement>> {
    a.check_same_group(b)?;
    for y in a.group.elements() {
        if translate(a, y)?.is_disjoint(b)? {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// `A + B = G`, computed through the missed-point witness instead of the sumset.
pub fn is_cover_by_witness(a: &GroupSubset, b: &GroupSubset) -> Result<bool> {
    Ok(uncovered_point(a, b)?.is_none())
}

/// A duplicate-free family of subsets of one group, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    group: FiniteAbelianGroup,
    members: Vec<GroupSubset>,
}

impl SetFamily {
    pub fn empty(group: &FiniteAbelianGroup) -> Self {
        SetFamily {
            group: group.clone(),
            members: Vec::new(),
        }
    }

    pub fn new(group: &FiniteAbelianGroup, members: Vec<GroupSubset>) -> Result<Self> {
        if members.iter().any(|m| m.group != *group) {
            return Err(Error::GroupMismatch);
        }
        let mut members = members;
        members.sort_by(|a, b| a.bits.cmp(&b.bits));
        members.dedup();
        Ok(SetFamily {
            group: group.clone(),
            members,
        })
    }

    pub fn from_masks(group: &FiniteAbelianGroup, masks: &[u64]) -> Result<Self> {
        let members = masks
            .iter()
            .map(|&m| GroupSubset::from_mask(group, m))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(group, members)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn members(&self) -> &[GroupSubset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: &GroupSubset) -> bool {
        self.members
            .binary_search_by(|m| m.bits.cmp(&a.bits))
            .is_ok()
    }

    pub fn with_member(&self, a: GroupSubset) -> Result<SetFamily> {
        let mut members = self.members.clone();
        members.push(a);
        SetFamily::new(&self.group, members)
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.members).finish()
    }
}
