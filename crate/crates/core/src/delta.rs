//! Δ-matroids: certification, upper and lower matroids, duality, minors,
//! the sandwich construction for matroid pairs, and maximal feasible families.

use std::fmt;

use crate::axiom::{symmetric_exchange_violation, ExchangeViolation};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::parallel;
use crate::sets::{GroundSet, SetFamily, Subset};

/// A feasible family certified under the symmetric exchange axiom.
#[derive(Clone)]
pub struct DeltaMatroid {
    feasibles: SetFamily,
    upper: Matroid,
    lower: Matroid,
}

impl DeltaMatroid {
    pub fn from_feasibles(feasibles: SetFamily) -> Result<DeltaMatroid> {
        if feasibles.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if let Some(v) = symmetric_exchange_violation(&feasibles) {
            return Err(violation_error(v, feasibles.ground()));
        }
        let (upper, lower) = extremal_matroids(&feasibles)?;
        Ok(DeltaMatroid {
            feasibles,
            upper,
            lower,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        self.feasibles.ground()
    }

    pub fn feasibles(&self) -> &SetFamily {
        &self.feasibles
    }

    /// Matroid whose bases are the largest feasible sets.
    pub fn upper(&self) -> &Matroid {
        &self.upper
    }

    /// Matroid whose bases are the smallest feasible sets.
    pub fn lower(&self) -> &Matroid {
        &self.lower
    }

    pub fn is_feasible(&self, s: Subset) -> bool {
        self.feasibles.contains(s)
    }

    /// `D*`: every feasible set replaced by its complement.
    pub fn complement_dual(&self) -> Result<DeltaMatroid> {
        Self::from_feasibles(complement_family(&self.feasibles))
    }

    /// `D ∖ X` with feasible sets `{F ∖ X}` over `E ∖ X`. `X` must lie inside
    /// some feasible set.
    pub fn delete(&self, x: Subset, strictness: Strictness) -> Result<MinorOutcome> {
        let g = self.ground();
        g.check(x)?;
        if !self.feasibles.iter().any(|f| x.is_subset_of(f)) {
            return Err(Error::Precondition(format!(
                "{} is contained in no feasible set",
                g.render(x)
            )));
        }
        let keep = g.complement(x);
        let family = self
            .feasibles
            .map_into(g.restrict(keep), |f| f.minus(x).compress(keep))?;
        MinorOutcome::certify(family, strictness)
    }

    /// `D / X = (D* ∖ X)*`. The inner deletion needs `X` inside some feasible
    /// set of `D*`, that is, disjoint from some feasible set of `D`.
    pub fn contract(&self, x: Subset, strictness: Strictness) -> Result<MinorOutcome> {
        match self.complement_dual()?.delete(x, strictness)? {
            MinorOutcome::Certified(d) => {
                Ok(MinorOutcome::Certified(Box::new(d.complement_dual()?)))
            }
            MinorOutcome::Uncertified { family, .. } => {
                MinorOutcome::certify(complement_family(&family), strictness)
            }
        }
    }

    /// Restriction to `c` under one of two readings.
    pub fn restrict(&self, c: Subset, variant: RestrictionVariant) -> Result<MinorOutcome> {
        let g = self.ground();
        g.check(c)?;
        match variant {
            RestrictionVariant::Subfamily => {
                let family = SetFamily::new(
                    g.restrict(c),
                    self.feasibles
                        .iter()
                        .filter(|f| f.is_subset_of(c))
                        .map(|f| f.compress(c)),
                )?;
                if family.is_empty() {
                    return Err(Error::Precondition(format!(
                        "no feasible set lies inside {}",
                        g.render(c)
                    )));
                }
                MinorOutcome::certify(family, Strictness::Lenient)
            }
            RestrictionVariant::DeleteComplement => {
                self.delete(g.complement(c), Strictness::Lenient)
            }
        }
    }
}

impl PartialEq for DeltaMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.feasibles == other.feasibles
    }
}

impl Eq for DeltaMatroid {}

impl fmt::Debug for DeltaMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DeltaMatroid{:?} {}",
            self.ground(),
            self.feasibles.render()
        )
    }
}

fn violation_error(v: ExchangeViolation, ground: &GroundSet) -> Error {
    Error::Violation {
        detail: v.describe(ground),
        violation: v,
    }
}

fn complement_family(fam: &SetFamily) -> SetFamily {
    let g = fam.ground();
    fam.map_into(g.clone(), |f| g.complement(f))
        .expect("complements stay inside the ground set")
}

/// Upper and lower matroids of a family already known to satisfy (ΔF).
fn extremal_matroids(feasibles: &SetFamily) -> Result<(Matroid, Matroid)> {
    let certify = |k: usize, which: &str| {
        Matroid::from_bases(feasibles.of_size(k)).map_err(|e| {
            Error::Internal(format!(
                "{which} matroid of a \u{394}-matroid failed certification: {e}"
            ))
        })
    };
    let hi = feasibles.max_size().ok_or(Error::EmptyFamily)?;
    let lo = feasibles.min_size().ok_or(Error::EmptyFamily)?;
    Ok((certify(hi, "upper")?, certify(lo, "lower")?))
}

/// Whether a minor that fails re-certification is an error or reported.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    Lenient,
}

#[derive(Clone, Debug)]
pub enum MinorOutcome {
    Certified(Box<DeltaMatroid>),
    /// Lenient mode only: the family and the exchange failure it contains.
    Uncertified {
        family: SetFamily,
        violation: ExchangeViolation,
    },
}

impl MinorOutcome {
    fn certify(family: SetFamily, strictness: Strictness) -> Result<MinorOutcome> {
        match symmetric_exchange_violation(&family) {
            None => Ok(MinorOutcome::Certified(Box::new(
                DeltaMatroid::from_feasibles(family)?,
            ))),
            Some(v) if strictness == Strictness::Strict => Err(violation_error(v, family.ground())),
            Some(violation) => Ok(MinorOutcome::Uncertified { family, violation }),
        }
    }

    pub fn family(&self) -> &SetFamily {
        match self {
            MinorOutcome::Certified(d) => d.feasibles(),
            MinorOutcome::Uncertified { family, .. } => family,
        }
    }

    pub fn certified(self) -> Option<DeltaMatroid> {
        match self {
            MinorOutcome::Certified(d) => Some(*d),
            MinorOutcome::Uncertified { .. } => None,
        }
    }
}

/// The two readings of "restriction of `D` to `C`".
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RestrictionVariant {
    /// Feasible sets contained in `C`.
    Subfamily,
    /// `D ∖ (E ∖ C)`, feasible sets `{F ∩ C}`.
    DeleteComplement,
}

/// Outcome of testing whether two matroids can be the upper and lower
/// matroids of one Δ-matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairabilityReport {
    pub pairable: bool,
    /// First circuit of the upper candidate (by mask) that is not a union of
    /// lower circuits.
    pub offending_circuit: Option<Subset>,
}

/// All sets independent in `upper` and spanning in `lower`.
pub fn construct_sandwich(upper: &Matroid, lower: &Matroid) -> Result<SetFamily> {
    upper.ground().ensure_same(lower.ground())?;
    Ok(SetFamily::from_predicate(upper.ground().clone(), |s| {
        upper.is_independent(s) && lower.is_spanning(s)
    }))
}

pub fn is_pairable(upper: &Matroid, lower: &Matroid) -> Result<PairabilityReport> {
    upper.ground().ensure_same(lower.ground())?;
    let offending_circuit = upper
        .circuits()
        .iter()
        .find(|&c| !lower.is_union_of_circuits(c));
    Ok(PairabilityReport {
        pairable: offending_circuit.is_none(),
        offending_circuit,
    })
}

/// The sandwich Δ-matroid realizing a pairable `(upper, lower)`.
pub fn realize_pair(upper: &Matroid, lower: &Matroid) -> Result<DeltaMatroid> {
    let report = is_pairable(upper, lower)?;
    if let Some(c) = report.offending_circuit {
        return Err(Error::Precondition(format!(
            "circuit {} of the upper matroid is not a union of lower circuits",
            upper.ground().render(c)
        )));
    }
    DeltaMatroid::from_feasibles(construct_sandwich(upper, lower)?)
}

/// A matroid read as a Δ-matroid through its bases, independent sets and
/// spanning sets.
#[derive(Clone, Debug)]
pub struct BouchetTriple {
    pub bases: DeltaMatroid,
    pub independents: DeltaMatroid,
    pub spanning: DeltaMatroid,
}

pub fn bouchet_triple(m: &Matroid) -> Result<BouchetTriple> {
    Ok(BouchetTriple {
        bases: DeltaMatroid::from_feasibles(m.bases().clone())?,
        independents: DeltaMatroid::from_feasibles(m.independents())?,
        spanning: DeltaMatroid::from_feasibles(m.spanning_sets())?,
    })
}

/// Which extremal matroid is required to be uniform.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FmaxVariant {
    /// Upper matroid is `U_{r,n}`; keeps the lower matroid.
    UpperUniform,
    /// Lower matroid is `U_{r,n}`; keeps the upper matroid.
    LowerUniform,
}

impl FmaxVariant {
    pub fn applies_to(self, d: &DeltaMatroid) -> bool {
        match self {
            FmaxVariant::UpperUniform => d.upper().is_uniform(),
            FmaxVariant::LowerUniform => d.lower().is_uniform(),
        }
    }
}

/// Maximal feasible family with the same extremal matroids as `d`.
pub fn fmax_family(d: &DeltaMatroid, variant: FmaxVariant) -> Result<SetFamily> {
    if !variant.applies_to(d) {
        let which = match variant {
            FmaxVariant::UpperUniform => "upper",
            FmaxVariant::LowerUniform => "lower",
        };
        return Err(Error::Precondition(format!(
            "{which} matroid is not uniform"
        )));
    }
    let (upper, lower) = (d.upper(), d.lower());
    let (ru, rl) = (upper.rank(), lower.rank());
    let family = SetFamily::from_predicate(d.ground().clone(), |a| {
        let k = a.len();
        lower.is_basis(a)
            || match variant {
                FmaxVariant::UpperUniform => rl < k && k <= ru && lower.is_spanning(a),
                FmaxVariant::LowerUniform => {
                    (rl <= k && k < ru && upper.is_independent(a)) || upper.is_basis(a)
                }
            }
    });
    Ok(family)
}

/// [`fmax_family`] certified as a Δ-matroid.
pub fn fmax(d: &DeltaMatroid, variant: FmaxVariant) -> Result<DeltaMatroid> {
    DeltaMatroid::from_feasibles(fmax_family(d, variant)?)
}

/// A set whose addition to `d` keeps (ΔF) and both extremal matroids, if any.
/// `None` means `d` is maximal under single-set augmentation.
pub fn augmentation_witness(d: &DeltaMatroid) -> Option<Subset> {
    let g = d.ground();
    g.subsets().filter(|&a| !d.is_feasible(a)).find(|&a| {
        let grown = d
            .feasibles()
            .union(&SetFamily::new(g.clone(), [a]).expect("subset of ground"))
            .expect("same ground");
        match DeltaMatroid::from_feasibles(grown) {
            Ok(bigger) => bigger.upper() == d.upper() && bigger.lower() == d.lower(),
            Err(_) => false,
        }
    })
}

/// Largest ground set for exhaustive family enumeration.
pub const EXHAUSTIVE_MAX: usize = 4;

/// Every nonempty family over `ground` satisfying (ΔF), ordered by family code.
pub fn enumerate_delta_matroids(ground: &GroundSet, workers: usize) -> Result<Vec<DeltaMatroid>> {
    let n = ground.len();
    if n > EXHAUSTIVE_MAX {
        return Err(Error::TooLarge {
            n,
            max: EXHAUSTIVE_MAX,
        });
    }
    let end = 1u64 << (1u32 << n);
    let found = parallel::ordered_range_filter_map(workers, 1, end, |code| {
        let fam = SetFamily::from_code(ground.clone(), code);
        if symmetric_exchange_violation(&fam).is_some() {
            return None;
        }
        Some(DeltaMatroid::from_feasibles(fam))
    });
    found.into_iter().collect()
}
