//! Ground sets, bit-mask subsets and families of subsets.
//!
//! Every structure in the crate lives over a [`GroundSet`] of at most
//! [`GroundSet::MAX`] labelled elements. Element `i` of the ground set is bit
//! `i` of a [`Subset`] mask, so all subset arithmetic is word arithmetic.
//! [`SetFamily`] keeps its members sorted by mask value, which makes every
//! derived listing (and therefore every serialized witness) byte-stable.

use std::collections::HashSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered universe of distinct labelled elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    /// Largest supported ground set; subsets fit in one machine word and the
    /// power set fits in memory.
    pub const MAX: usize = 16;

    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > Self::MAX {
            return Err(Error::GroundTooLarge {
                size: labels.len(),
                max: Self::MAX,
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// Ground set `{a, b, c, ...}` of size `n`.
    pub fn letters(n: usize) -> Result<Self> {
        if n > Self::MAX {
            return Err(Error::GroundTooLarge {
                size: n,
                max: Self::MAX,
            });
        }
        Self::new((0..n).map(|i| char::from(b'a' + i as u8).to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The whole ground set as a subset.
    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Number of subsets of the ground set.
    pub fn power_set_size(&self) -> usize {
        1usize << self.len()
    }

    /// All subsets in ascending mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..(1u32 << self.len())).map(Subset)
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.0 & !self.full().0 == 0
    }

    pub fn check(&self, s: Subset) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                mask: s.0,
                size: self.len(),
            })
        }
    }

    /// Symmetric difference of two subsets, both validated against this ground set.
    pub fn sym_diff(&self, a: Subset, b: Subset) -> Result<Subset> {
        self.check(a)?;
        self.check(b)?;
        Ok(a ^ b)
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset(self.full().0 & !s.0)
    }

    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        labels.iter().try_fold(Subset::EMPTY, |acc, l| {
            let l = l.as_ref();
            self.index_of(l)
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        })
    }

    pub fn labels_of(&self, s: Subset) -> Vec<String> {
        s.elements().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a,b}` style rendering.
    pub fn render(&self, s: Subset) -> String {
        let parts: Vec<&str> = s.elements().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Ground set of the kept elements, in their original order.
    pub fn restrict(&self, keep: Subset) -> GroundSet {
        Self {
            labels: keep.elements().map(|i| self.labels[i].clone()).collect(),
        }
    }

    /// Concatenation of two ground sets with disjoint labels.
    pub fn disjoint_union(&self, other: &GroundSet) -> Result<GroundSet> {
        Self::new(self.labels.iter().chain(other.labels.iter()).cloned())
    }

    pub fn ensure_same(&self, other: &GroundSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                left: self.labels.to_vec(),
                right: other.labels.to_vec(),
            })
        }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// Bit mask over ground-set indices.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 31);
        Self((1u32 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        Self(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Self::EMPTY, Self::with)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    /// `self Δ {i}`.
    pub fn toggle(self, i: usize) -> Self {
        Self(self.0 ^ 1 << i)
    }

    pub fn minus(self, other: Subset) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Element indices in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Packs the bits selected by `keep` into the low bits, preserving order.
    pub fn compress(self, keep: Subset) -> Subset {
        let mut out = 0;
        for (j, i) in keep.elements().enumerate() {
            if self.contains(i) {
                out |= 1 << j;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`]: spreads low bits over the positions in `keep`.
    pub fn expand(self, keep: Subset) -> Subset {
        let mut out = 0;
        for (j, i) in keep.elements().enumerate() {
            if self.contains(j) {
                out |= 1 << i;
            }
        }
        Subset(out)
    }

    /// All subsets of `self`, ascending by mask.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur | !mask).wrapping_add(1) & mask)
            };
            Some(Subset(cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Deduplicated family of subsets of a ground set, sorted by mask value.
#[derive(Clone)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<Subset>,
    index: Vec<u64>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = Subset>>(ground: GroundSet, members: I) -> Result<Self> {
        let mut members: Vec<Subset> = members.into_iter().collect();
        for &m in &members {
            ground.check(m)?;
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self::from_sorted(ground, members))
    }

    pub fn empty(ground: GroundSet) -> Self {
        Self::from_sorted(ground, Vec::new())
    }

    /// Family whose members are the set bits of `code`: subset with mask `m`
    /// is present iff bit `m` of `code` is set. Requires `ground.len() <= 6`.
    pub fn from_code(ground: GroundSet, code: u64) -> Self {
        debug_assert!(ground.len() <= 6);
        let mut members = Vec::with_capacity(code.count_ones() as usize);
        let mut c = code;
        while c != 0 {
            members.push(Subset(c.trailing_zeros()));
            c &= c - 1;
        }
        Self::from_sorted(ground, members)
    }

    /// Inverse of [`SetFamily::from_code`]; `None` above six elements.
    pub fn code(&self) -> Option<u64> {
        (self.ground.len() <= 6).then(|| self.members.iter().fold(0u64, |c, m| c | 1 << m.0))
    }

    pub(crate) fn from_sorted(ground: GroundSet, members: Vec<Subset>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let words = ground.power_set_size().div_ceil(64);
        let mut index = vec![0u64; words];
        for m in &members {
            index[(m.0 >> 6) as usize] |= 1 << (m.0 & 63);
        }
        Self {
            ground,
            members,
            index,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.index
            .get((s.0 >> 6) as usize)
            .is_some_and(|w| w >> (s.0 & 63) & 1 == 1)
    }

    pub fn filter<P: FnMut(Subset) -> bool>(&self, mut keep: P) -> SetFamily {
        let members = self.members.iter().copied().filter(|&s| keep(s)).collect();
        Self::from_sorted(self.ground.clone(), members)
    }

    /// Family of all subsets of the ground set satisfying `pred`.
    pub fn from_predicate<P: FnMut(Subset) -> bool>(ground: GroundSet, mut pred: P) -> SetFamily {
        let members = ground.subsets().filter(|&s| pred(s)).collect();
        Self::from_sorted(ground, members)
    }

    pub fn union(&self, other: &SetFamily) -> Result<SetFamily> {
        self.ground.ensure_same(&other.ground)?;
        let mut members: Vec<Subset> = self.iter().chain(other.iter()).collect();
        members.sort_unstable();
        members.dedup();
        Ok(Self::from_sorted(self.ground.clone(), members))
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.ground == other.ground && self.iter().all(|s| other.contains(s))
    }

    pub fn min_size(&self) -> Option<usize> {
        self.iter().map(Subset::len).min()
    }

    pub fn max_size(&self) -> Option<usize> {
        self.iter().map(Subset::len).max()
    }

    pub fn of_size(&self, k: usize) -> SetFamily {
        self.filter(|s| s.len() == k)
    }

    /// Members mapped through `f` (duplicates merged), over a new ground set.
    pub fn map_into<F: FnMut(Subset) -> Subset>(
        &self,
        ground: GroundSet,
        f: F,
    ) -> Result<SetFamily> {
        Self::new(ground, self.iter().map(f))
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.iter().map(|s| self.ground.render(s)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily{:?} {}", self.ground, self.render())
    }
}

/// Members containing no other member as a proper subset.
pub fn minimal_members(fam: &SetFamily) -> SetFamily {
    fam.filter(|s| !fam.iter().any(|t| t.is_proper_subset_of(s)))
}

/// Members contained in no other member as a proper subset.
pub fn maximal_members(fam: &SetFamily) -> SetFamily {
    fam.filter(|s| !fam.iter().any(|t| s.is_proper_subset_of(t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> GroundSet {
        GroundSet::letters(5).unwrap()
    }

    fn fam(g: &GroundSet, sets: &[&[&str]]) -> SetFamily {
        SetFamily::new(g.clone(), sets.iter().map(|s| g.subset(s).unwrap())).unwrap()
    }

    #[test]
    fn sym_diff_examples() {
        let g = abc();
        let s = |l: &[&str]| g.subset(l).unwrap();
        assert_eq!(
            g.sym_diff(s(&["a", "b"]), s(&["b", "c"])).unwrap(),
            s(&["a", "c"])
        );
        let x = s(&["a", "c", "e"]);
        assert_eq!(g.sym_diff(x, x).unwrap(), Subset::EMPTY);
        assert_eq!(
            g.sym_diff(s(&["a", "d", "e"]), s(&["b"])).unwrap(),
            s(&["a", "b", "d", "e"])
        );
    }

    #[test]
    fn sym_diff_rejects_foreign_masks() {
        let g = GroundSet::letters(3).unwrap();
        assert!(matches!(
            g.sym_diff(Subset::from_mask(0b1000), Subset::EMPTY),
            Err(Error::SubsetOutOfRange { .. })
        ));
    }

    #[test]
    fn sym_diff_group_laws_exhaustive() {
        for n in 0..=4usize {
            let g = GroundSet::letters(n).unwrap();
            for a in g.subsets() {
                assert_eq!(g.sym_diff(a, Subset::EMPTY).unwrap(), a);
                assert_eq!(g.sym_diff(a, a).unwrap(), Subset::EMPTY);
                for b in g.subsets() {
                    let ab = g.sym_diff(a, b).unwrap();
                    assert_eq!(ab, g.sym_diff(b, a).unwrap());
                    assert_eq!(ab, a.minus(b) | b.minus(a));
                    for c in g.subsets() {
                        assert_eq!(
                            g.sym_diff(ab, c).unwrap(),
                            g.sym_diff(a, g.sym_diff(b, c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ground_set_rejects_duplicates_and_oversize() {
        assert!(matches!(
            GroundSet::new(["x", "y", "x"]),
            Err(Error::DuplicateLabel(l)) if l == "x"
        ));
        assert!(matches!(
            GroundSet::letters(17),
            Err(Error::GroundTooLarge { size: 17, .. })
        ));
        assert_eq!(GroundSet::letters(16).unwrap().len(), 16);
    }

    #[test]
    fn families_are_canonical() {
        let g = abc();
        let f = fam(&g, &[&["c"], &["a", "b"], &["a"], &["c"]]);
        assert_eq!(f.len(), 3);
        let masks: Vec<u32> = f.iter().map(Subset::mask).collect();
        assert_eq!(masks, vec![0b001, 0b011, 0b100]);
        assert!(f.contains(g.subset(&["a", "b"]).unwrap()));
        assert!(!f.contains(g.subset(&["b"]).unwrap()));
    }

    #[test]
    fn minimal_and_maximal_members() {
        let g = abc();
        let f = fam(&g, &[&["a"], &["a", "b"], &["c"]]);
        assert_eq!(minimal_members(&f), fam(&g, &[&["a"], &["c"]]));
        assert_eq!(maximal_members(&f), fam(&g, &[&["a", "b"], &["c"]]));

        let empty = SetFamily::empty(g.clone());
        assert!(minimal_members(&empty).is_empty());
        let single = fam(&g, &[&["b", "d"]]);
        assert_eq!(maximal_members(&single), single);
    }

    #[test]
    fn maximal_members_of_k_plus_minus_one_family() {
        let g = GroundSet::letters(4).unwrap();
        let f = SetFamily::from_predicate(g.clone(), |s| s.len() == 1 || s.len() == 3);
        let top = SetFamily::from_predicate(g, |s| s.len() == 3);
        assert_eq!(maximal_members(&f), top);
    }

    #[test]
    fn minimal_dependents_of_u23() {
        // Oracle: enumerate subsets, keep the ones with more than two elements
        // (not independent in U_{2,3}), then filter minimal by hand.
        let g = GroundSet::new(["1", "2", "3"]).unwrap();
        let dependents = SetFamily::from_predicate(g.clone(), |s| s.len() > 2);
        assert_eq!(
            minimal_members(&dependents),
            SetFamily::new(g.clone(), [g.full()]).unwrap()
        );
    }

    #[test]
    fn compress_expand_round_trip() {
        let keep = Subset::from_mask(0b10110);
        for s in keep.subsets() {
            assert_eq!(s.compress(keep).expand(keep), s);
        }
        assert_eq!(
            Subset::from_mask(0b10100).compress(keep),
            Subset::from_mask(0b110)
        );
        assert_eq!(keep.subsets().count(), 8);
    }

    #[test]
    fn family_codes_round_trip() {
        let g = GroundSet::letters(3).unwrap();
        for code in [0u64, 1, 0b1010_0110, u8::MAX as u64] {
            assert_eq!(SetFamily::from_code(g.clone(), code).code(), Some(code));
        }
    }
}
