//! Matroids given by their bases.
//!
//! A [`Matroid`] can only be built through [`Matroid::from_bases`] (or a
//! constructor that goes through it), which certifies the basis exchange
//! axiom. Independence and spanning lookups are answered from dense tables
//! over the power set, computed once on first use.

use std::fmt;
use std::sync::OnceLock;

use crate::axiom::basis_exchange_violation;
use crate::error::{Error, Result};
use crate::sets::{GroundSet, SetFamily, Subset};

#[derive(Clone)]
pub struct Matroid {
    bases: SetFamily,
    rank: usize,
    tables: OnceLock<Tables>,
    circuits: OnceLock<SetFamily>,
}

#[derive(Clone)]
struct Tables {
    independent: Bitmap,
    spanning: Bitmap,
}

#[derive(Clone)]
struct Bitmap(Vec<u64>);

impl Bitmap {
    fn new(bits: usize) -> Self {
        Bitmap(vec![0; bits.div_ceil(64)])
    }

    fn get(&self, i: u32) -> bool {
        self.0[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    fn set(&mut self, i: u32) {
        self.0[(i >> 6) as usize] |= 1 << (i & 63);
    }
}

impl Matroid {
    /// Certifies `bases` under the basis exchange axiom.
    pub fn from_bases(bases: SetFamily) -> Result<Matroid> {
        if bases.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if let Some(v) = basis_exchange_violation(&bases) {
            return Err(Error::Violation {
                detail: v.describe(bases.ground()),
                violation: v,
            });
        }
        let rank = bases.members()[0].len();
        if bases.iter().any(|b| b.len() != rank) {
            return Err(Error::Internal(format!(
                "family passed basis exchange but is not equicardinal: {}",
                bases.render()
            )));
        }
        Ok(Matroid {
            bases,
            rank,
            tables: OnceLock::new(),
            circuits: OnceLock::new(),
        })
    }

    /// `U_{k,n}`: every `k`-subset of the ground set is a basis.
    pub fn uniform(k: usize, ground: GroundSet) -> Result<Matroid> {
        if k > ground.len() {
            return Err(Error::RankOutOfRange {
                rank: k,
                size: ground.len(),
            });
        }
        Self::from_bases(SetFamily::from_predicate(ground, |s| s.len() == k))
    }

    pub fn ground(&self) -> &GroundSet {
        self.bases.ground()
    }

    pub fn bases(&self) -> &SetFamily {
        &self.bases
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.bases.contains(s)
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.ground().contains(s) && self.tables().independent.get(s.mask())
    }

    pub fn is_spanning(&self, s: Subset) -> bool {
        self.ground().contains(s) && self.tables().spanning.get(s.mask())
    }

    /// Size of the largest independent subset of `s`.
    pub fn rank_of(&self, s: Subset) -> usize {
        self.bases.iter().map(|b| (b & s).len()).max().unwrap_or(0)
    }

    pub fn is_uniform(&self) -> bool {
        self.bases.len() == binomial(self.ground().len(), self.rank)
    }

    /// Elements in no basis.
    pub fn loops(&self) -> Subset {
        let covered = self.bases.iter().fold(Subset::EMPTY, |acc, b| acc | b);
        self.ground().complement(covered)
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> Subset {
        self.bases
            .iter()
            .fold(self.ground().full(), |acc, b| acc & b)
    }

    fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| {
            let n = self.ground().len();
            let size = 1u32 << n;
            let mut independent = Bitmap::new(size as usize);
            let mut spanning = Bitmap::new(size as usize);
            // Subsets of bases: sweep downwards, a set is independent if it is a
            // basis or one more element keeps it independent.
            for m in (0..size).rev() {
                let s = Subset::from_mask(m);
                if self.bases.contains(s)
                    || (0..n).any(|i| !s.contains(i) && independent.get(m | 1 << i))
                {
                    independent.set(m);
                }
            }
            for m in 0..size {
                let s = Subset::from_mask(m);
                if self.bases.contains(s) || s.elements().any(|i| spanning.get(m & !(1 << i))) {
                    spanning.set(m);
                }
            }
            Tables {
                independent,
                spanning,
            }
        })
    }

    pub fn independents(&self) -> SetFamily {
        SetFamily::from_predicate(self.ground().clone(), |s| self.is_independent(s))
    }

    pub fn spanning_sets(&self) -> SetFamily {
        SetFamily::from_predicate(self.ground().clone(), |s| self.is_spanning(s))
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> &SetFamily {
        self.circuits.get_or_init(|| {
            // Independence is closed under subsets, so a dependent set is
            // minimal exactly when each single-element deletion is independent.
            SetFamily::from_predicate(self.ground().clone(), |s| {
                !self.is_independent(s) && s.elements().all(|i| self.is_independent(s.without(i)))
            })
        })
    }

    /// True iff `s` is the union of the circuits it contains (the empty set is).
    pub fn is_union_of_circuits(&self, s: Subset) -> bool {
        let covered = self
            .circuits()
            .iter()
            .filter(|c| c.is_subset_of(s))
            .fold(Subset::EMPTY, |acc, c| acc | c);
        covered == s
    }

    pub fn dual(&self) -> Matroid {
        let g = self.ground();
        let bases = SetFamily::new(g.clone(), self.bases.iter().map(|b| g.complement(b)))
            .expect("complements stay inside the ground set");
        Matroid {
            rank: g.len() - self.rank,
            bases,
            tables: OnceLock::new(),
            circuits: OnceLock::new(),
        }
    }

    /// `M ∖ X` on the ground set `E ∖ X`.
    pub fn delete(&self, x: Subset) -> Result<Matroid> {
        let g = self.ground();
        g.check(x)?;
        let keep = g.complement(x);
        let best = self
            .bases
            .iter()
            .map(|b| b.minus(x).len())
            .max()
            .unwrap_or(0);
        let bases = SetFamily::new(
            g.restrict(keep),
            self.bases
                .iter()
                .filter(|b| b.minus(x).len() == best)
                .map(|b| b.compress(keep)),
        )?;
        Self::from_bases(bases)
    }

    /// `M / X = (M* ∖ X)*` on the ground set `E ∖ X`.
    pub fn contract(&self, x: Subset) -> Result<Matroid> {
        Ok(self.dual().delete(x)?.dual())
    }

    /// `M ⊕ N` on the concatenated ground set (labels must be disjoint).
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let ground = self
            .ground()
            .disjoint_union(other.ground())
            .map_err(|e| match e {
                Error::DuplicateLabel(l) => {
                    Error::Precondition(format!("ground sets overlap on {l:?}"))
                }
                e => e,
            })?;
        let shift = self.ground().len();
        let bases = self.bases.iter().flat_map(|b1| {
            other
                .bases
                .iter()
                .map(move |b2| b1 | Subset::from_mask(b2.mask() << shift))
        });
        Self::from_bases(SetFamily::new(ground, bases)?)
    }
}

/// `q` is a quotient of `m` iff every circuit of `m` is a union of circuits of `q`.
pub fn is_quotient(q: &Matroid, m: &Matroid) -> Result<bool> {
    q.ground().ensure_same(m.ground())?;
    Ok(m.circuits().iter().all(|c| q.is_union_of_circuits(c)))
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matroid(rank {}, ground {:?}, bases {})",
            self.rank,
            self.ground(),
            self.bases.render()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g123() -> GroundSet {
        GroundSet::new(["1", "2", "3"]).unwrap()
    }

    fn fam(g: &GroundSet, sets: &[&[&str]]) -> SetFamily {
        SetFamily::new(g.clone(), sets.iter().map(|s| g.subset(s).unwrap())).unwrap()
    }

    #[test]
    fn check_basis_axiom_examples() {
        let g = GroundSet::letters(3).unwrap();
        let m = Matroid::from_bases(fam(&g, &[&["a"], &["b"]])).unwrap();
        assert_eq!(m.rank(), 1);
        match Matroid::from_bases(fam(&g, &[&["a"], &["b", "c"]])) {
            Err(Error::Violation { violation, detail }) => {
                assert_eq!(violation.first, g.subset(&["b", "c"]).unwrap());
                assert_eq!(violation.second, g.subset(&["a"]).unwrap());
                assert_eq!(violation.pivot, 1);
                assert!(detail.contains("pivot=b"));
            }
            other => panic!("expected violation, got {other:?}"),
        }
        let u23 = Matroid::from_bases(fam(&g123(), &[&["1", "2"], &["1", "3"], &["2", "3"]]));
        assert!(u23.is_ok());
        assert!(matches!(
            Matroid::from_bases(SetFamily::empty(g)),
            Err(Error::EmptyFamily)
        ));
    }

    #[test]
    fn uniform_examples() {
        let g6 = GroundSet::new(["1", "2", "3", "a", "b", "c"]).unwrap();
        let u0 = Matroid::uniform(0, g6.clone()).unwrap();
        assert_eq!(u0.bases().members(), &[Subset::EMPTY]);
        assert_eq!(Matroid::uniform(5, g6.clone()).unwrap().bases().len(), 6);
        assert_eq!(Matroid::uniform(2, g123()).unwrap().bases().len(), 3);
        assert!(matches!(
            Matroid::uniform(7, g6),
            Err(Error::RankOutOfRange { rank: 7, size: 6 })
        ));
    }

    #[test]
    fn direct_sum_of_two_triangles() {
        let left = Matroid::uniform(2, g123()).unwrap();
        let right = Matroid::uniform(2, GroundSet::new(["a", "b", "c"]).unwrap()).unwrap();
        let sum = left.direct_sum(&right).unwrap();
        assert_eq!(sum.bases().len(), 9);
        assert_eq!(sum.rank(), 4);
        assert!(sum.bases().iter().all(|b| b.len() == 4));
        let g = sum.ground().clone();
        let expected = fam(&g, &[&["1", "2", "3"], &["a", "b", "c"]]);
        assert_eq!(sum.circuits(), &expected);
        assert!(sum.is_union_of_circuits(g.full()));

        let zero = Matroid::uniform(0, GroundSet::new(["z"]).unwrap()).unwrap();
        let bigger = left.direct_sum(&zero).unwrap();
        assert_eq!(bigger.ground().len(), 4);
        assert_eq!(
            bigger.bases().iter().collect::<Vec<_>>(),
            left.bases().iter().collect::<Vec<_>>()
        );
        assert!(matches!(
            left.direct_sum(&left),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn independents_and_spanning_counts() {
        let g2 = GroundSet::letters(2).unwrap();
        let u12 = Matroid::uniform(1, g2.clone()).unwrap();
        assert_eq!(u12.independents(), fam(&g2, &[&[], &["a"], &["b"]]));
        let u23 = Matroid::uniform(2, g123()).unwrap();
        assert_eq!(u23.independents().len(), 7);
        assert_eq!(u23.spanning_sets().len(), 4);
        assert!(u23.bases().iter().all(|b| u23.is_independent(b)));
        let zero = Matroid::uniform(0, g123()).unwrap();
        assert_eq!(zero.spanning_sets().len(), 8);
        assert!(u23.is_spanning(u23.ground().full()));
    }

    #[test]
    fn circuit_examples() {
        let u23 = Matroid::uniform(2, g123()).unwrap();
        assert_eq!(u23.circuits().members(), &[u23.ground().full()]);
        let free = Matroid::uniform(3, g123()).unwrap();
        assert!(free.circuits().is_empty());
        let g6 = GroundSet::letters(6).unwrap();
        let u56 = Matroid::uniform(5, g6.clone()).unwrap();
        assert_eq!(u56.circuits().members(), &[g6.full()]);
        assert!(u56.is_union_of_circuits(Subset::EMPTY));
    }

    #[test]
    fn duality() {
        let g6 = GroundSet::letters(6).unwrap();
        let u56 = Matroid::uniform(5, g6.clone()).unwrap();
        assert_eq!(u56.dual(), Matroid::uniform(1, g6).unwrap());
        assert_eq!(u56.dual().dual(), u56);
    }

    #[test]
    fn minors() {
        let g = GroundSet::letters(4).unwrap();
        let m = Matroid::uniform(2, g.clone()).unwrap();
        assert_eq!(m.delete(Subset::EMPTY).unwrap(), m);
        assert_eq!(m.contract(Subset::EMPTY).unwrap(), m);
        let x = g.subset(&["d"]).unwrap();
        let gd = GroundSet::letters(3).unwrap();
        assert_eq!(
            m.delete(x).unwrap(),
            Matroid::uniform(2, gd.clone()).unwrap()
        );
        assert_eq!(m.contract(x).unwrap(), Matroid::uniform(1, gd).unwrap());
        assert!(m.delete(Subset::from_mask(1 << 5)).is_err());
    }

    #[test]
    fn quotients() {
        let g = GroundSet::new(["1", "2", "3", "a", "b", "c"]).unwrap();
        let u56 = Matroid::uniform(5, g.clone()).unwrap();
        let blocks = Matroid::uniform(2, g123())
            .unwrap()
            .direct_sum(&Matroid::uniform(2, GroundSet::new(["a", "b", "c"]).unwrap()).unwrap())
            .unwrap();
        assert!(is_quotient(&u56, &u56).unwrap());
        assert!(is_quotient(&blocks, &u56).unwrap());
        assert!(!is_quotient(&u56, &blocks).unwrap());
        let other = Matroid::uniform(1, g123()).unwrap();
        assert!(matches!(
            is_quotient(&other, &u56),
            Err(Error::GroundMismatch { .. })
        ));
    }

    #[test]
    fn loops_and_coloops() {
        let g = GroundSet::letters(3).unwrap();
        let m = Matroid::from_bases(fam(&g, &[&["a", "b"]])).unwrap();
        assert_eq!(m.loops(), g.subset(&["c"]).unwrap());
        assert_eq!(m.coloops(), g.subset(&["a", "b"]).unwrap());
        assert_eq!(m.circuits(), &fam(&g, &[&["c"]]));
        assert!(!m.is_uniform());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
