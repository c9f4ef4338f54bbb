//! Raw exchange-axiom checks over set families, with replayable witnesses.
//!
//! Pairs are scanned with the partner set `second` in the outer loop and
//! `first` in the inner loop, both ascending by mask, then pivots ascending.
//! The first failure found is the reported witness.

use serde::{Deserialize, Serialize};

use crate::sets::{GroundSet, SetFamily, Subset};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// Basis exchange: `y` ranges over `second ∖ first`.
    #[serde(rename = "MB")]
    BasisExchange,
    /// Symmetric exchange: `y` ranges over `first Δ second`, `y = x` allowed.
    #[serde(rename = "DF")]
    SymmetricExchange,
}

/// A triple `(first, second, pivot)` at which an exchange axiom has no partner.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeViolation {
    pub first: Subset,
    pub second: Subset,
    pub pivot: usize,
    pub axiom: Axiom,
}

impl ExchangeViolation {
    /// Sets the axiom allows as exchange results for this triple.
    pub fn candidates(&self) -> Vec<Subset> {
        let x = Subset::singleton(self.pivot);
        let (pivots, partners) = match self.axiom {
            Axiom::BasisExchange => (self.first.minus(self.second), self.second.minus(self.first)),
            Axiom::SymmetricExchange => {
                let d = self.first ^ self.second;
                (d, d)
            }
        };
        if !x.is_subset_of(pivots) {
            return Vec::new();
        }
        partners
            .elements()
            .map(|y| {
                if y == self.pivot {
                    self.first ^ x
                } else {
                    self.first ^ x ^ Subset::singleton(y)
                }
            })
            .collect()
    }

    /// True when the triple is a genuine failure of the axiom in `fam`.
    pub fn replays_in(&self, fam: &SetFamily) -> bool {
        let pivot_ok = match self.axiom {
            Axiom::BasisExchange => self.first.minus(self.second).contains(self.pivot),
            Axiom::SymmetricExchange => (self.first ^ self.second).contains(self.pivot),
        };
        pivot_ok
            && fam.contains(self.first)
            && fam.contains(self.second)
            && !self.candidates().into_iter().any(|c| fam.contains(c))
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        let (name, range) = match self.axiom {
            Axiom::BasisExchange => ("basis exchange (MB)", "second \u{2216} first"),
            Axiom::SymmetricExchange => ("symmetric exchange (\u{394}F)", "first \u{394} second"),
        };
        format!(
            "{name} fails: first={}, second={}, pivot={} has no partner y in {range}",
            ground.render(self.first),
            ground.render(self.second),
            ground.label(self.pivot)
        )
    }
}

pub fn basis_exchange_violation(fam: &SetFamily) -> Option<ExchangeViolation> {
    for &second in fam.members() {
        for &first in fam.members() {
            let partners = second.minus(first);
            for x in first.minus(second).elements() {
                let base = first.without(x);
                if !partners.elements().any(|y| fam.contains(base.with(y))) {
                    return Some(ExchangeViolation {
                        first,
                        second,
                        pivot: x,
                        axiom: Axiom::BasisExchange,
                    });
                }
            }
        }
    }
    None
}

pub fn symmetric_exchange_violation(fam: &SetFamily) -> Option<ExchangeViolation> {
    for &second in fam.members() {
        for &first in fam.members() {
            let d = first ^ second;
            for x in d.elements() {
                let base = first.toggle(x);
                // y = x gives `base` itself; toggling y again undoes it, so
                // handle that partner separately.
                let found = fam.contains(base)
                    || d.without(x)
                        .elements()
                        .any(|y| fam.contains(base.toggle(y)));
                if !found {
                    return Some(ExchangeViolation {
                        first,
                        second,
                        pivot: x,
                        axiom: Axiom::SymmetricExchange,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(g: &GroundSet, sets: &[&[&str]]) -> SetFamily {
        SetFamily::new(g.clone(), sets.iter().map(|s| g.subset(s).unwrap())).unwrap()
    }

    #[test]
    fn basis_exchange_witness_is_canonical() {
        let g = GroundSet::letters(3).unwrap();
        let f = fam(&g, &[&["a"], &["b", "c"]]);
        let v = basis_exchange_violation(&f).unwrap();
        assert_eq!(v.first, g.subset(&["b", "c"]).unwrap());
        assert_eq!(v.second, g.subset(&["a"]).unwrap());
        assert_eq!(g.label(v.pivot), "b");
        assert!(v.replays_in(&f));
        assert!(v.describe(&g).contains("first={b,c}"));
    }

    #[test]
    fn symmetric_exchange_accepts_two_element_families() {
        let g = GroundSet::letters(2).unwrap();
        assert!(symmetric_exchange_violation(&fam(&g, &[&[], &["a", "b"]])).is_none());
        assert!(
            symmetric_exchange_violation(&fam(&g, &[&["a", "b"], &["a"], &["b"], &[]])).is_none()
        );
    }

    #[test]
    fn symmetric_exchange_rejects_gap_of_three() {
        let g = GroundSet::letters(3).unwrap();
        let f = fam(&g, &[&[], &["a", "b", "c"]]);
        let v = symmetric_exchange_violation(&f).unwrap();
        assert!(v.replays_in(&f));
        assert_eq!(v.axiom, Axiom::SymmetricExchange);
    }

    #[test]
    fn replay_rejects_tampered_witness() {
        let g = GroundSet::letters(3).unwrap();
        let f = fam(&g, &[&["a"], &["b", "c"]]);
        let mut v = basis_exchange_violation(&f).unwrap();
        v.pivot = g.index_of("a").unwrap();
        assert!(!v.replays_in(&f));
    }
}
