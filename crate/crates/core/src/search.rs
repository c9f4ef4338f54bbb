//! Exhaustive enumeration over small ground sets, theorem checks over the
//! enumerated universes, and the search for matroid pairs that satisfy the
//! basis-level conditions but are not the extremal matroids of any Δ-matroid.
//!
//! Every universe is processed in canonical order (family code ascending)
//! and merged in that order, so reports do not depend on the worker count.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::axiom::{
    basis_exchange_violation, symmetric_exchange_violation, Axiom, ExchangeViolation,
};
use crate::delta::{
    augmentation_witness, construct_sandwich, enumerate_delta_matroids, fmax, is_pairable,
    DeltaMatroid, FmaxVariant, MinorOutcome, RestrictionVariant, Strictness, EXHAUSTIVE_MAX,
};
use crate::error::{Error, Result};
use crate::graph::{cycle_matroid, Multigraph};
use crate::io::{family_labels, DeltaFile, GraphFile, MatroidFile, ViolationFile};
use crate::matroid::Matroid;
use crate::parallel;
use crate::sets::{GroundSet, SetFamily, Subset};

/// Largest ground set for [`enumerate_matroids`] and [`find_unpairable_pair`].
pub const SEARCH_MAX: usize = 5;

/// Witnesses kept per report; the first ones in canonical order.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub property_id: String,
    pub universe_size: u64,
    pub holds: bool,
    pub witnesses: Vec<Value>,
    /// Wall-clock time; left out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Every matroid on `ground`, ordered by family code. Bases are equicardinal,
/// so each rank layer is searched separately.
pub fn enumerate_matroids(ground: &GroundSet, workers: usize) -> Result<Vec<Matroid>> {
    let n = ground.len();
    if n > SEARCH_MAX {
        return Err(Error::TooLarge { n, max: SEARCH_MAX });
    }
    let mut found: Vec<(u64, Matroid)> = Vec::new();
    for rank in 0..=n {
        let layer: Vec<Subset> = ground.subsets().filter(|s| s.len() == rank).collect();
        let end = 1u64 << layer.len();
        let hits = parallel::ordered_range_filter_map(workers, 1, end, |pick| {
            let members = Subset::from_mask(pick as u32)
                .elements()
                .map(|i| layer[i])
                .collect::<Vec<_>>();
            let fam = SetFamily::from_sorted(ground.clone(), members);
            basis_exchange_violation(&fam).is_none().then(|| {
                let code = fam.code().expect("n <= 6");
                Matroid::from_bases(fam).map(|m| (code, m))
            })
        });
        for hit in hits {
            found.push(hit?);
        }
    }
    found.sort_by_key(|(code, _)| *code);
    Ok(found.into_iter().map(|(_, m)| m).collect())
}

/// Theorems checked exhaustively by [`verify_property`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    MbEquicardinal,
    IndependentsAreDelta,
    SpanningAreDelta,
    Uplow,
    NecessityCircuitUnion,
    SufficiencySandwich,
    DualExchange,
    FmaxMaximal,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::MbEquicardinal,
        Property::IndependentsAreDelta,
        Property::SpanningAreDelta,
        Property::Uplow,
        Property::NecessityCircuitUnion,
        Property::SufficiencySandwich,
        Property::DualExchange,
        Property::FmaxMaximal,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Property::MbEquicardinal => "mb-equicardinal",
            Property::IndependentsAreDelta => "independents-are-delta",
            Property::SpanningAreDelta => "spanning-are-delta",
            Property::Uplow => "uplow",
            Property::NecessityCircuitUnion => "necessity-circuit-union",
            Property::SufficiencySandwich => "sufficiency-sandwich",
            Property::DualExchange => "dual-exchange",
            Property::FmaxMaximal => "fmax-maximal",
        }
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn check_exhaustive(n: usize) -> Result<GroundSet> {
    if n > EXHAUSTIVE_MAX {
        return Err(Error::TooLarge {
            n,
            max: EXHAUSTIVE_MAX,
        });
    }
    GroundSet::letters(n)
}

fn report(prop: &str, universe: u64, mut witnesses: Vec<Value>, start: Instant) -> SearchReport {
    witnesses.truncate(MAX_WITNESSES);
    SearchReport {
        property_id: prop.to_string(),
        universe_size: universe,
        holds: witnesses.is_empty(),
        witnesses,
        elapsed: start.elapsed(),
    }
}

fn matroid_json(m: &Matroid) -> Value {
    serde_json::to_value(MatroidFile::from_matroid(m)).expect("plain data serializes")
}

fn delta_json(fam: &SetFamily) -> Value {
    serde_json::to_value(DeltaFile::from_family(fam)).expect("plain data serializes")
}

/// Runs one registered theorem over the full universe on `n` elements.
pub fn verify_property(prop: Property, n: usize, workers: usize) -> Result<SearchReport> {
    let start = Instant::now();
    let ground = check_exhaustive(n)?;
    let id = prop.id();
    let (universe, witnesses) = match prop {
        Property::MbEquicardinal => {
            let end = 1u64 << (1u32 << n);
            let w = parallel::ordered_range_filter_map(workers, 1, end, |code| {
                let fam = SetFamily::from_code(ground.clone(), code);
                let sizes_differ = fam.min_size() != fam.max_size();
                (sizes_differ && basis_exchange_violation(&fam).is_none())
                    .then(|| json!({ "family": family_labels(&fam) }))
            });
            (end - 1, w)
        }
        Property::IndependentsAreDelta | Property::SpanningAreDelta => {
            let matroids = enumerate_matroids(&ground, workers)?;
            let w = parallel::ordered_filter_map(workers, &matroids, |m| {
                let check = if prop == Property::IndependentsAreDelta {
                    check_independents_view(m)
                } else {
                    check_spanning_view(m)
                };
                check
                    .err()
                    .map(|reason| json!({ "matroid": matroid_json(m), "reason": reason }))
            });
            (matroids.len() as u64, w)
        }
        Property::Uplow
        | Property::NecessityCircuitUnion
        | Property::DualExchange
        | Property::FmaxMaximal => {
            let deltas = enumerate_delta_matroids(&ground, workers)?;
            let w = parallel::ordered_filter_map(workers, &deltas, |d| {
                let check = match prop {
                    Property::Uplow => check_uplow(d),
                    Property::NecessityCircuitUnion => check_necessity(d),
                    Property::DualExchange => check_dual_exchange(d),
                    _ => check_fmax(d),
                };
                check
                    .err()
                    .map(|reason| json!({ "delta": delta_json(d.feasibles()), "reason": reason }))
            });
            (deltas.len() as u64, w)
        }
        Property::SufficiencySandwich => {
            let matroids = enumerate_matroids(&ground, workers)?;
            let pairs: Vec<(usize, usize)> = (0..matroids.len())
                .flat_map(|i| (0..matroids.len()).map(move |j| (i, j)))
                .collect();
            let w = parallel::ordered_filter_map(workers, &pairs, |&(i, j)| {
                let (mu, ml) = (&matroids[i], &matroids[j]);
                check_round_trip(mu, ml).err().map(|reason| {
                    json!({ "upper": matroid_json(mu), "lower": matroid_json(ml), "reason": reason })
                })
            });
            (pairs.len() as u64, w)
        }
    };
    Ok(report(id, universe, witnesses, start))
}

pub fn verify_property_by_id(id: &str, n: usize, workers: usize) -> Result<SearchReport> {
    verify_property(id.parse()?, n, workers)
}

type Check = std::result::Result<(), String>;

fn check_independents_view(m: &Matroid) -> Check {
    let d = DeltaMatroid::from_feasibles(m.independents()).map_err(|e| e.to_string())?;
    if d.upper() != m {
        return Err("upper matroid differs from the matroid".into());
    }
    if d.lower().rank() != 0 {
        return Err(format!("lower matroid has rank {}", d.lower().rank()));
    }
    Ok(())
}

fn check_spanning_view(m: &Matroid) -> Check {
    let d = DeltaMatroid::from_feasibles(m.spanning_sets()).map_err(|e| e.to_string())?;
    if d.lower() != m {
        return Err("lower matroid differs from the matroid".into());
    }
    if d.upper().rank() != m.ground().len() {
        return Err(format!("upper matroid has rank {}", d.upper().rank()));
    }
    Ok(())
}

/// Every feasible set contains a lower basis and lies in an upper basis,
/// checked directly against the basis lists.
fn check_uplow(d: &DeltaMatroid) -> Check {
    let g = d.ground();
    for f in d.feasibles().iter() {
        if !d.lower().bases().iter().any(|l| l.is_subset_of(f)) {
            return Err(format!("{} contains no lower basis", g.render(f)));
        }
        if !d.upper().bases().iter().any(|u| f.is_subset_of(u)) {
            return Err(format!("{} lies in no upper basis", g.render(f)));
        }
    }
    Ok(())
}

fn check_necessity(d: &DeltaMatroid) -> Check {
    let r = is_pairable(d.upper(), d.lower()).map_err(|e| e.to_string())?;
    match r.offending_circuit {
        None => Ok(()),
        Some(c) => Err(format!(
            "upper circuit {} is not a union of lower circuits",
            d.ground().render(c)
        )),
    }
}

fn check_dual_exchange(d: &DeltaMatroid) -> Check {
    let dual = d.complement_dual().map_err(|e| e.to_string())?;
    if dual.upper() != &d.lower().dual() {
        return Err("upper(D*) != lower(D)*".into());
    }
    if dual.lower() != &d.upper().dual() {
        return Err("lower(D*) != upper(D)*".into());
    }
    Ok(())
}

fn check_fmax(d: &DeltaMatroid) -> Check {
    for variant in [FmaxVariant::UpperUniform, FmaxVariant::LowerUniform] {
        if !variant.applies_to(d) {
            continue;
        }
        let max = fmax(d, variant).map_err(|e| format!("{variant:?}: {e}"))?;
        if !d.feasibles().is_subfamily_of(max.feasibles()) {
            return Err(format!("{variant:?}: maximal family misses a feasible set"));
        }
        if max.upper() != d.upper() || max.lower() != d.lower() {
            return Err(format!("{variant:?}: extremal matroids changed"));
        }
        if let Some(a) = augmentation_witness(&max) {
            return Err(format!(
                "{variant:?}: {} can still be added",
                d.ground().render(a)
            ));
        }
    }
    Ok(())
}

/// Pairable pairs are realized by the sandwich family; unpairable pairs have
/// no realization among the constrained candidate families.
fn check_round_trip(mu: &Matroid, ml: &Matroid) -> Check {
    let report = is_pairable(mu, ml).map_err(|e| e.to_string())?;
    if report.pairable {
        if !ml.bases().iter().all(|b| mu.is_independent(b))
            || !mu.bases().iter().all(|b| ml.is_spanning(b))
        {
            return Err("pairable but a basis-level condition fails".into());
        }
        let fam = construct_sandwich(mu, ml).map_err(|e| e.to_string())?;
        let d = DeltaMatroid::from_feasibles(fam).map_err(|e| e.to_string())?;
        if d.upper() != mu || d.lower() != ml {
            return Err("sandwich realizes different extremal matroids".into());
        }
        Ok(())
    } else {
        let search = exhaust_realizations(mu, ml).map_err(|e| e.to_string())?;
        match search.realization {
            None => Ok(()),
            Some(f) => Err(format!("unpairable yet realized by {}", f.render())),
        }
    }
}

/// Result of searching all candidate Δ-matroids for a matroid pair.
#[derive(Clone, Debug)]
pub struct RealizationSearch {
    pub candidates: u64,
    pub realization: Option<SetFamily>,
}

/// Calls `visit` on every realization of `(upper, lower)`: families that
/// contain all bases of both matroids, otherwise only sets independent in
/// `upper` and spanning in `lower` strictly between the two ranks, satisfy
/// (ΔF) and have exactly these extremal matroids. Stops when `visit` returns
/// false; returns the number of candidate families examined.
fn for_each_realization<F>(upper: &Matroid, lower: &Matroid, mut visit: F) -> Result<u64>
where
    F: FnMut(SetFamily) -> bool,
{
    let allowed = construct_sandwich(upper, lower)?;
    let required = upper.bases().union(lower.bases())?;
    if !required.is_subfamily_of(&allowed) {
        return Ok(0);
    }
    let (ru, rl) = (upper.rank(), lower.rank());
    let free: Vec<Subset> = allowed
        .iter()
        .filter(|s| !required.contains(*s) && rl < s.len() && s.len() < ru)
        .collect();
    if free.len() > 24 {
        return Err(Error::TooLarge {
            n: free.len(),
            max: 24,
        });
    }
    let ground = upper.ground().clone();
    let total = 1u64 << free.len();
    for pick in 0..total {
        let extra = Subset::from_mask(pick as u32).elements().map(|i| free[i]);
        let fam = SetFamily::new(ground.clone(), required.iter().chain(extra))?;
        if symmetric_exchange_violation(&fam).is_none()
            && &fam.of_size(ru) == upper.bases()
            && &fam.of_size(rl) == lower.bases()
            && fam.max_size() == Some(ru)
            && fam.min_size() == Some(rl)
            && !visit(fam)
        {
            return Ok(pick + 1);
        }
    }
    Ok(total)
}

/// Searches the candidate families of [`for_each_realization`] for one
/// realization of the pair.
pub fn exhaust_realizations(upper: &Matroid, lower: &Matroid) -> Result<RealizationSearch> {
    let mut realization = None;
    let candidates = for_each_realization(upper, lower, |fam| {
        realization = Some(fam);
        false
    })?;
    Ok(RealizationSearch {
        candidates,
        realization,
    })
}

/// Every Δ-matroid with upper matroid `upper` and lower matroid `lower`.
pub fn all_realizations(upper: &Matroid, lower: &Matroid) -> Result<Vec<SetFamily>> {
    let mut out = Vec::new();
    for_each_realization(upper, lower, |fam| {
        out.push(fam);
        true
    })?;
    Ok(out)
}

/// An exchange failure forced by the bases alone: `first` and `second` are
/// bases of the pair, and every exchange result at `pivot` falls outside
/// the allowed sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeReplay {
    pub violation: ExchangeViolation,
    /// Each rejected exchange result with the reason it is not allowed.
    pub rejected: Vec<(Subset, String)>,
}

/// Looks for `(first, second, pivot)` among required sets, upper bases first
/// against lower bases, with no exchange partner inside the sandwich family.
pub fn exchange_replay(upper: &Matroid, lower: &Matroid) -> Result<Option<ExchangeReplay>> {
    let allowed = construct_sandwich(upper, lower)?;
    let required = upper.bases().union(lower.bases())?;
    let mut pairs: Vec<(Subset, Subset)> = upper
        .bases()
        .iter()
        .flat_map(|f1| lower.bases().iter().map(move |f2| (f1, f2)))
        .collect();
    pairs.extend(
        required
            .iter()
            .flat_map(|f1| required.iter().map(move |f2| (f1, f2))),
    );
    for (first, second) in pairs {
        for pivot in (first ^ second).elements() {
            let violation = ExchangeViolation {
                first,
                second,
                pivot,
                axiom: Axiom::SymmetricExchange,
            };
            let candidates = violation.candidates();
            if candidates.iter().all(|&c| !allowed.contains(c)) {
                let g = upper.ground();
                let rejected = candidates
                    .into_iter()
                    .map(|c| {
                        let reason = if !upper.is_independent(c) {
                            "not independent in the upper matroid"
                        } else {
                            "not spanning in the lower matroid"
                        };
                        (c, format!("{} {reason}", g.render(c)))
                    })
                    .collect();
                return Ok(Some(ExchangeReplay {
                    violation,
                    rejected,
                }));
            }
        }
    }
    Ok(None)
}

/// Multigraphs with `m` labelled edges up to vertex relabelling: each edge
/// may use at most one vertex not seen before. Isolated vertices are omitted.
pub fn edge_labelled_multigraphs(m: usize) -> Vec<Multigraph> {
    fn grow(m: usize, used: usize, pairs: &mut Vec<(usize, usize)>, out: &mut Vec<Multigraph>) {
        if pairs.len() == m {
            out.push(Multigraph::from_pairs(used, pairs).expect("generated graphs are valid"));
            return;
        }
        for u in 0..=used {
            let after_u = used + usize::from(u == used);
            for v in u..=after_u {
                let after_v = after_u + usize::from(v == after_u);
                pairs.push((u, v));
                grow(m, after_v, pairs, out);
                pairs.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(m, 0, &mut Vec::new(), &mut out);
    out
}

/// Distinct cycle matroids on `m` labelled edges, ordered by family code,
/// each with the first graph that realizes it.
pub fn graphic_matroids(m: usize, workers: usize) -> Result<Vec<(Matroid, Multigraph)>> {
    if m > SEARCH_MAX {
        return Err(Error::TooLarge {
            n: m,
            max: SEARCH_MAX,
        });
    }
    let graphs = edge_labelled_multigraphs(m);
    let matroids = parallel::ordered_filter_map(workers, &graphs, |g| Some(cycle_matroid(g)));
    let mut seen: HashMap<u64, (Matroid, Multigraph)> = HashMap::new();
    for (g, mat) in graphs.into_iter().zip(matroids) {
        let mat = mat?;
        let code = mat.bases().code().expect("n <= 6");
        seen.entry(code).or_insert((mat, g));
    }
    let mut out: Vec<(u64, (Matroid, Multigraph))> = seen.into_iter().collect();
    out.sort_by_key(|(code, _)| *code);
    Ok(out.into_iter().map(|(_, v)| v).collect())
}

struct Candidate {
    upper: usize,
    lower: usize,
    offending: Subset,
    replay: Option<ExchangeReplay>,
}

/// Pairs meeting both basis-level conditions yet failing pairability, in
/// canonical pair order.
fn unpairable_candidates(matroids: &[Matroid], workers: usize) -> Result<Vec<Candidate>> {
    let idx: Vec<usize> = (0..matroids.len()).collect();
    let rows = parallel::ordered_filter_map(workers, &idx, |&i| {
        let mu = &matroids[i];
        let row: Result<Vec<Candidate>> = (0..matroids.len())
            .filter_map(|j| {
                let ml = &matroids[j];
                let basis_level = ml.bases().iter().all(|b| mu.is_independent(b))
                    && mu.bases().iter().all(|b| ml.is_spanning(b));
                if !basis_level {
                    return None;
                }
                let report = match is_pairable(mu, ml) {
                    Ok(r) => r,
                    Err(e) => return Some(Err(e)),
                };
                let offending = report.offending_circuit?;
                Some(exchange_replay(mu, ml).map(|replay| Candidate {
                    upper: i,
                    lower: j,
                    offending,
                    replay,
                }))
            })
            .collect();
        Some(row)
    });
    let mut out = Vec::new();
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}

/// Searches for `(upper, lower)` with every lower basis independent in upper
/// and every upper basis spanning in lower that are still not the extremal
/// matroids of any Δ-matroid. Graphic pairs are searched first, then all
/// matroid pairs. The chosen witness minimizes the offending circuit size,
/// then prefers a replayable exchange failure, then a rank gap of at least
/// two (so sets strictly between the ranks exist and the confirmation has
/// something to search), then canonical order.
pub fn find_unpairable_pair(n: usize, workers: usize) -> Result<SearchReport> {
    let start = Instant::now();
    if n > SEARCH_MAX {
        return Err(Error::TooLarge { n, max: SEARCH_MAX });
    }
    let ground = GroundSet::letters(n)?;
    let graphic = graphic_matroids(n, workers)?;
    let graphic_matroids: Vec<Matroid> = graphic.iter().map(|(m, _)| m.clone()).collect();
    let mut universe = (graphic_matroids.len() as u64).pow(2);
    let mut source = "graphic";
    let mut pool = graphic_matroids;
    let mut candidates = unpairable_candidates(&pool, workers)?;
    if candidates.is_empty() {
        source = "matroid";
        pool = enumerate_matroids(&ground, workers)?;
        universe += (pool.len() as u64).pow(2);
        candidates = unpairable_candidates(&pool, workers)?;
    }
    let total = candidates.len();
    let best = candidates
        .into_iter()
        .enumerate()
        .min_by_key(|(order, c)| {
            let gap = pool[c.upper].rank().saturating_sub(pool[c.lower].rank());
            (c.offending.len(), c.replay.is_none(), gap < 2, *order)
        })
        .map(|(_, c)| c);
    let Some(best) = best else {
        return Ok(SearchReport {
            property_id: "unpairable".into(),
            universe_size: universe,
            holds: false,
            witnesses: Vec::new(),
            elapsed: start.elapsed(),
        });
    };
    let (mu, ml) = (&pool[best.upper], &pool[best.lower]);
    let search = exhaust_realizations(mu, ml)?;
    let mut witness = json!({
        "source": source,
        "upper": matroid_json(mu),
        "lower": matroid_json(ml),
        "upper_rank": mu.rank(),
        "lower_rank": ml.rank(),
        "offending_circuit": ground.labels_of(best.offending),
        "matching_pairs": total,
        "realizations_checked": search.candidates,
        "realization": search.realization.as_ref().map(delta_json),
    });
    if source == "graphic" {
        witness["upper_graph"] =
            serde_json::to_value(GraphFile::from_graph(&graphic[best.upper].1))?;
        witness["lower_graph"] =
            serde_json::to_value(GraphFile::from_graph(&graphic[best.lower].1))?;
    }
    if let Some(replay) = &best.replay {
        witness["replay"] = json!({
            "violation": ViolationFile::new(&replay.violation, &ground),
            "rejected": replay.rejected.iter().map(|(_, why)| why.clone()).collect::<Vec<_>>(),
        });
    }
    Ok(SearchReport {
        property_id: "unpairable".into(),
        universe_size: universe,
        holds: search.realization.is_none(),
        witnesses: vec![witness],
        elapsed: start.elapsed(),
    })
}

/// How the verbatim Δ-matroid deletion and contraction behave over every
/// Δ-matroid on `n` elements and every admissible nonempty `X`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MinorStudy {
    pub delta_matroids: u64,
    pub deletions: u64,
    pub deletions_certified: u64,
    pub contractions: u64,
    pub contractions_certified: u64,
    pub first_failure: Option<Value>,
}

pub fn study_minors(n: usize, workers: usize) -> Result<MinorStudy> {
    let ground = check_exhaustive(n)?;
    let deltas = enumerate_delta_matroids(&ground, workers)?;
    let rows = parallel::ordered_filter_map(workers, &deltas, |d| {
        let mut row = MinorStudy {
            delta_matroids: 1,
            ..MinorStudy::default()
        };
        for x in ground.subsets().skip(1) {
            for contract in [false, true] {
                let outcome = if contract {
                    d.contract(x, Strictness::Lenient)
                } else {
                    d.delete(x, Strictness::Lenient)
                };
                let Ok(outcome) = outcome else { continue };
                let ok = matches!(outcome, MinorOutcome::Certified(_));
                if contract {
                    row.contractions += 1;
                    row.contractions_certified += u64::from(ok);
                } else {
                    row.deletions += 1;
                    row.deletions_certified += u64::from(ok);
                }
                if !ok && row.first_failure.is_none() {
                    row.first_failure = Some(json!({
                        "delta": delta_json(d.feasibles()),
                        "operation": if contract { "contract" } else { "delete" },
                        "x": ground.labels_of(x),
                        "result": delta_json(outcome.family()),
                    }));
                }
            }
        }
        Some(row)
    });
    Ok(rows.into_iter().fold(MinorStudy::default(), |mut acc, r| {
        acc.delta_matroids += r.delta_matroids;
        acc.deletions += r.deletions;
        acc.deletions_certified += r.deletions_certified;
        acc.contractions += r.contractions;
        acc.contractions_certified += r.contractions_certified;
        if acc.first_failure.is_none() {
            acc.first_failure = r.first_failure;
        }
        acc
    }))
}

/// Tallies for one reading of "restriction to an upper circuit `C`".
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RestrictionTally {
    /// Circuits where the restriction is defined.
    pub applicable: u64,
    /// Restrictions satisfying (ΔF).
    pub certified: u64,
    /// Certified restrictions whose upper matroid is the single circuit `C`.
    pub upper_is_circuit: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RestrictionStudy {
    pub upper_circuits: u64,
    pub subfamily: RestrictionTally,
    pub delete_complement: RestrictionTally,
}

/// For every Δ-matroid on `n` elements and every circuit `C` of its upper
/// matroid, evaluates both restriction readings.
pub fn study_restrictions(n: usize, workers: usize) -> Result<RestrictionStudy> {
    let ground = check_exhaustive(n)?;
    let deltas = enumerate_delta_matroids(&ground, workers)?;
    let rows = parallel::ordered_filter_map(workers, &deltas, |d| {
        let mut row = RestrictionStudy::default();
        for c in d.upper().circuits().iter() {
            row.upper_circuits += 1;
            let single = Matroid::uniform(c.len() - 1, ground.restrict(c)).ok();
            for (variant, tally) in [
                (RestrictionVariant::Subfamily, &mut row.subfamily),
                (
                    RestrictionVariant::DeleteComplement,
                    &mut row.delete_complement,
                ),
            ] {
                let Ok(outcome) = d.restrict(c, variant) else {
                    continue;
                };
                tally.applicable += 1;
                if let MinorOutcome::Certified(r) = outcome {
                    tally.certified += 1;
                    if Some(r.upper()) == single.as_ref() {
                        tally.upper_is_circuit += 1;
                    }
                }
            }
        }
        Some(row)
    });
    let add = |a: &mut RestrictionTally, b: &RestrictionTally| {
        a.applicable += b.applicable;
        a.certified += b.certified;
        a.upper_is_circuit += b.upper_is_circuit;
    };
    Ok(rows.iter().fold(RestrictionStudy::default(), |mut acc, r| {
        acc.upper_circuits += r.upper_circuits;
        add(&mut acc.subfamily, &r.subfamily);
        add(&mut acc.delete_complement, &r.delete_complement);
        acc
    }))
}

/// Whether the realizations of each pairable pair have a unique
/// inclusion-minimal and a unique inclusion-maximal member.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct UniquenessStudy {
    pub pairable_pairs: u64,
    pub realizations: u64,
    pub most_realizations: u64,
    pub unique_maximal: u64,
    /// Pairs whose only maximal realization is the sandwich family.
    pub maximal_is_sandwich: u64,
    pub unique_minimal: u64,
    /// First pair, in canonical order, with several minimal realizations.
    pub first_several_minimal: Option<Value>,
}

fn extremal_members(fams: &[SetFamily], minimal: bool) -> Vec<&SetFamily> {
    fams.iter()
        .filter(|f| {
            !fams.iter().any(|g| {
                g != *f
                    && if minimal {
                        g.is_subfamily_of(f)
                    } else {
                        f.is_subfamily_of(g)
                    }
            })
        })
        .collect()
}

pub fn study_uniqueness(n: usize, workers: usize) -> Result<UniquenessStudy> {
    let ground = check_exhaustive(n)?;
    let matroids = enumerate_matroids(&ground, workers)?;
    let pairs: Vec<(usize, usize)> = (0..matroids.len())
        .flat_map(|i| (0..matroids.len()).map(move |j| (i, j)))
        .collect();
    let rows = parallel::ordered_filter_map(workers, &pairs, |&(i, j)| {
        let (mu, ml) = (&matroids[i], &matroids[j]);
        match is_pairable(mu, ml) {
            Ok(r) if !r.pairable => return None,
            Err(e) => return Some(Err(e)),
            Ok(_) => {}
        }
        let run = || -> Result<UniquenessStudy> {
            let fams = all_realizations(mu, ml)?;
            let maximal = extremal_members(&fams, false);
            let minimal = extremal_members(&fams, true);
            let sandwich = construct_sandwich(mu, ml)?;
            Ok(UniquenessStudy {
                pairable_pairs: 1,
                realizations: fams.len() as u64,
                most_realizations: fams.len() as u64,
                unique_maximal: u64::from(maximal.len() == 1),
                maximal_is_sandwich: u64::from(maximal == [&sandwich]),
                unique_minimal: u64::from(minimal.len() == 1),
                first_several_minimal: (minimal.len() > 1).then(|| {
                    json!({
                        "upper": matroid_json(mu),
                        "lower": matroid_json(ml),
                        "minimal": minimal.iter().map(|f| delta_json(f)).collect::<Vec<_>>(),
                    })
                }),
            })
        };
        Some(run())
    });
    let mut acc = UniquenessStudy::default();
    for row in rows {
        let r = row?;
        acc.pairable_pairs += r.pairable_pairs;
        acc.realizations += r.realizations;
        acc.most_realizations = acc.most_realizations.max(r.most_realizations);
        acc.unique_maximal += r.unique_maximal;
        acc.maximal_is_sandwich += r.maximal_is_sandwich;
        acc.unique_minimal += r.unique_minimal;
        if acc.first_several_minimal.is_none() {
            acc.first_several_minimal = r.first_several_minimal;
        }
    }
    Ok(acc)
}
