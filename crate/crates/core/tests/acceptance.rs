//! Acceptance suite. Runs without the libtest harness so each criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any criterion fails.
//!
//!     cargo test -p dmat-core --test acceptance

use std::process::ExitCode;

use serde_json::{json, Value};

use dmat::axiom::symmetric_exchange_violation;
use dmat::delta::{augmentation_witness, construct_sandwich, fmax, is_pairable, FmaxVariant};
use dmat::graph::{check_rigidity, corpus};
use dmat::io::{MatroidFile, ViolationFile};
use dmat::search::{find_unpairable_pair, verify_property, Property};
use dmat::{DeltaMatroid, GroundSet, Matroid, SetFamily, Subset};

type Outcome = Result<Value, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn property(p: Property, n: usize, workers: usize) -> Outcome {
    let r = verify_property(p, n, workers).map_err(|e| e.to_string())?;
    ensure(r.holds, format!("{p} fails: {}", r.to_json()))?;
    Ok(serde_json::to_value(&r).unwrap())
}

/// Every (ΔF) family on four elements: sandwiched feasibles and pairable
/// extremal matroids. The (ΔF) count is recomputed here from raw codes.
fn criterion_1(workers: usize) -> Outcome {
    let g = GroundSet::letters(4).unwrap();
    let delta_count = (1u64..1 << 16)
        .filter(|&code| {
            symmetric_exchange_violation(&SetFamily::from_code(g.clone(), code)).is_none()
        })
        .count() as u64;
    let uplow = property(Property::Uplow, 4, workers)?;
    let necessity = property(Property::NecessityCircuitUnion, 4, workers)?;
    ensure(
        uplow["universe_size"] == json!(delta_count),
        format!(
            "universe {} vs {delta_count} raw (ΔF) families",
            uplow["universe_size"]
        ),
    )?;
    Ok(
        json!({ "families": 65535, "delta_families": delta_count, "uplow": uplow, "necessity": necessity }),
    )
}

fn criterion_2(workers: usize) -> Outcome {
    property(Property::SufficiencySandwich, 4, workers)
}

fn criterion_3(workers: usize) -> Outcome {
    Ok(json!({
        "independents": property(Property::IndependentsAreDelta, 4, workers)?,
        "spanning": property(Property::SpanningAreDelta, 4, workers)?,
    }))
}

fn by_size(n: usize, sizes: &[usize]) -> SetFamily {
    SetFamily::from_predicate(GroundSet::letters(n).unwrap(), |s| sizes.contains(&s.len()))
}

fn certify(fam: SetFamily) -> Result<DeltaMatroid, String> {
    DeltaMatroid::from_feasibles(fam).map_err(|e| e.to_string())
}

fn criterion_4(_workers: usize) -> Outcome {
    // (a) sizes k-1 and k+1, k = 2, four elements.
    let g4 = GroundSet::letters(4).unwrap();
    let d = certify(by_size(4, &[1, 3]))?;
    ensure(
        d.upper() == &Matroid::uniform(3, g4.clone()).unwrap(),
        "(a) upper is not U(3,4)",
    )?;
    ensure(
        d.lower() == &Matroid::uniform(1, g4.clone()).unwrap(),
        "(a) lower is not U(1,4)",
    )?;

    // (b) U(5,6) over U(2,3) + U(2,3).
    let g6 = GroundSet::letters(6).unwrap();
    let left = GroundSet::new(["a", "b", "c"]).unwrap();
    let right = GroundSet::new(["d", "e", "f"]).unwrap();
    let mu = Matroid::uniform(5, g6).unwrap();
    let ml = Matroid::uniform(2, left)
        .unwrap()
        .direct_sum(&Matroid::uniform(2, right).unwrap())
        .map_err(|e| e.to_string())?;
    let pair = is_pairable(&mu, &ml).map_err(|e| e.to_string())?;
    ensure(pair.pairable, "(b) pair is not pairable")?;
    let sandwich = certify(construct_sandwich(&mu, &ml).map_err(|e| e.to_string())?)?;
    ensure(
        sandwich.upper() == &mu && sandwich.lower() == &ml,
        "(b) sandwich changes extremes",
    )?;

    // (c) two families with the same extremal matroids.
    let full = certify(by_size(2, &[0, 1, 2]))?;
    let ends = certify(by_size(2, &[0, 2]))?;
    ensure(
        full.upper() == ends.upper() && full.lower() == ends.lower(),
        "(c) extremal matroids differ",
    )?;

    // (d) the four-element maximal family.
    let base = certify(by_size(4, &[1, 2, 4]))?;
    let max = fmax(&base, FmaxVariant::UpperUniform).map_err(|e| e.to_string())?;
    ensure(
        max.feasibles() == &by_size(4, &[1, 2, 3, 4]),
        "(d) maximal family is not sizes 1..4",
    )?;
    ensure(
        max.upper() == base.upper() && max.lower() == base.lower(),
        "(d) extremes changed",
    )?;
    ensure(
        augmentation_witness(&max).is_none(),
        "(d) a set can still be added",
    )?;
    // Independently: adding any missing set breaks (ΔF) or an extremal matroid.
    for s in g4.subsets().filter(|&s| !max.is_feasible(s)) {
        let bigger = SetFamily::new(g4.clone(), max.feasibles().iter().chain([s])).unwrap();
        if let Ok(d2) = DeltaMatroid::from_feasibles(bigger) {
            ensure(
                d2.upper() != max.upper() || d2.lower() != max.lower(),
                format!("(d) {} extends the maximal family", g4.render(s)),
            )?;
        }
    }
    Ok(json!({ "a": true, "b": true, "c": true, "d": max.feasibles().len() }))
}

fn criterion_5(_workers: usize) -> Outcome {
    let mut rows = Vec::new();
    for (name, g) in corpus() {
        ensure(
            g.edges().len() <= 8,
            format!("{name} has more than 8 edges"),
        )?;
        let r = check_rigidity(&g).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.holds(), format!("{name}: {r:?}"))?;
        rows.push(json!({ "graph": name, "report": r }));
    }
    Ok(Value::Array(rows))
}

fn labels_to_subset(g: &GroundSet, v: &Value) -> Result<Subset, String> {
    let labels: Vec<String> = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    g.subset(&labels).map_err(|e| e.to_string())
}

/// Re-derives every claim of the reported witness from its serialized form.
fn criterion_6(workers: usize) -> Outcome {
    let r = find_unpairable_pair(5, workers).map_err(|e| e.to_string())?;
    ensure(r.holds, "no unpairable pair found")?;
    let w = r.witnesses.first().ok_or("holds without a witness")?;
    let load = |key: &str| -> Result<Matroid, String> {
        let file: MatroidFile =
            serde_json::from_value(w[key].clone()).map_err(|e| e.to_string())?;
        file.to_matroid().map_err(|e| e.to_string())
    };
    let (mu, ml) = (load("upper")?, load("lower")?);
    let g = mu.ground().clone();
    ensure(
        ml.bases().iter().all(|b| mu.is_independent(b)),
        "a lower basis is dependent in the upper matroid",
    )?;
    ensure(
        mu.bases().iter().all(|b| ml.is_spanning(b)),
        "an upper basis does not span the lower matroid",
    )?;
    let circuit = labels_to_subset(&g, &w["offending_circuit"])?;
    ensure(circuit.len() == 2, "offending circuit is not a 2-circuit")?;
    ensure(
        mu.circuits().contains(circuit),
        "offending set is not an upper circuit",
    )?;
    ensure(
        !ml.is_union_of_circuits(circuit),
        "offending circuit is a union of lower circuits",
    )?;
    ensure(!is_pairable(&mu, &ml).unwrap().pairable, "pair is pairable")?;

    // Exchange failure: two bases of the pair and a pivot whose every
    // exchange result is dependent in upper or non-spanning in lower.
    let v: ViolationFile =
        serde_json::from_value(w["replay"]["violation"].clone()).map_err(|e| e.to_string())?;
    let first = g.subset(&v.first).map_err(|e| e.to_string())?;
    let second = g.subset(&v.second).map_err(|e| e.to_string())?;
    let pivot = g.index_of(&v.pivot).ok_or("unknown pivot")?;
    let is_basis = |s: Subset| mu.is_basis(s) || ml.is_basis(s);
    ensure(
        is_basis(first) && is_basis(second),
        "replay sets are not bases of the pair",
    )?;
    ensure(
        (first ^ second).contains(pivot),
        "pivot outside the symmetric difference",
    )?;
    for y in (first ^ second).elements() {
        let mut result = first.toggle(pivot);
        if y != pivot {
            result = result.toggle(y);
        }
        ensure(
            !(mu.is_independent(result) && ml.is_spanning(result)),
            format!("{} is a valid exchange", g.render(result)),
        )?;
    }
    ensure(w["realization"].is_null(), "a realization was found")?;
    Ok(serde_json::to_value(&r).unwrap())
}

type Criterion = (&'static str, fn(usize) -> Outcome);

const CRITERIA: [Criterion; 6] = [
    ("axiom exhaustives, n = 4", criterion_1),
    ("pair round trip, n = 4", criterion_2),
    ("independent and spanning families", criterion_3),
    ("worked examples", criterion_4),
    ("rigidity corpus", criterion_5),
    ("unpairable pair, n = 5", criterion_6),
];

fn run_all(workers: usize) -> Vec<Outcome> {
    CRITERIA.iter().map(|(_, f)| f(workers)).collect()
}

fn serialize(outcomes: &[Outcome]) -> String {
    let values: Vec<Value> = outcomes
        .iter()
        .map(|o| match o {
            Ok(v) => json!({ "pass": v }),
            Err(e) => json!({ "fail": e }),
        })
        .collect();
    serde_json::to_string(&values).unwrap()
}

fn main() -> ExitCode {
    let single = run_all(1);
    let mut all_pass = true;
    for (i, ((name, _), outcome)) in CRITERIA.iter().zip(&single).enumerate() {
        let verdict = match outcome {
            Ok(_) => "PASS".to_string(),
            Err(e) => {
                all_pass = false;
                format!("FAIL ({e})")
            }
        };
        println!("criterion {}: {name}: {verdict}", i + 1);
    }
    let eight = run_all(8);
    let (a, b) = (serialize(&single), serialize(&eight));
    if a == b {
        println!(
            "criterion 7: determinism, 1 vs 8 workers: PASS ({} bytes)",
            a.len()
        );
    } else {
        all_pass = false;
        println!("criterion 7: determinism, 1 vs 8 workers: FAIL");
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
