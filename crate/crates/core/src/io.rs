//! JSON file formats. Sets are written as label lists in ground order and
//! families in ascending mask order, so writing is deterministic and loading
//! a written file reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::axiom::{Axiom, ExchangeViolation};
use crate::delta::{DeltaMatroid, PairabilityReport};
use crate::error::Result;
use crate::graph::Multigraph;
use crate::matroid::Matroid;
use crate::sets::{GroundSet, SetFamily, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidFile {
    pub ground: Vec<String>,
    pub bases: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaFile {
    pub ground: Vec<String>,
    pub feasibles: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeFile {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationFile {
    pub axiom: Axiom,
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub pivot: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairabilityFile {
    pub pairable: bool,
    pub offending_circuit: Option<Vec<String>>,
}

pub fn family_labels(fam: &SetFamily) -> Vec<Vec<String>> {
    fam.iter().map(|s| fam.ground().labels_of(s)).collect()
}

pub fn family_from_labels(ground: &GroundSet, sets: &[Vec<String>]) -> Result<SetFamily> {
    let members = sets
        .iter()
        .map(|s| ground.subset(s))
        .collect::<Result<Vec<Subset>>>()?;
    SetFamily::new(ground.clone(), members)
}

impl MatroidFile {
    pub fn from_matroid(m: &Matroid) -> Self {
        Self {
            ground: m.ground().labels().to_vec(),
            bases: family_labels(m.bases()),
        }
    }

    pub fn family(&self) -> Result<SetFamily> {
        family_from_labels(&GroundSet::new(self.ground.iter().cloned())?, &self.bases)
    }

    /// Certifies the bases; non-matroids are rejected with the witness.
    pub fn to_matroid(&self) -> Result<Matroid> {
        Matroid::from_bases(self.family()?)
    }
}

impl DeltaFile {
    pub fn from_family(fam: &SetFamily) -> Self {
        Self {
            ground: fam.ground().labels().to_vec(),
            feasibles: family_labels(fam),
        }
    }

    pub fn from_delta(d: &DeltaMatroid) -> Self {
        Self::from_family(d.feasibles())
    }

    pub fn family(&self) -> Result<SetFamily> {
        family_from_labels(
            &GroundSet::new(self.ground.iter().cloned())?,
            &self.feasibles,
        )
    }

    pub fn to_delta(&self) -> Result<DeltaMatroid> {
        DeltaMatroid::from_feasibles(self.family()?)
    }
}

impl GraphFile {
    pub fn from_graph(g: &Multigraph) -> Self {
        let v = g.vertices();
        Self {
            vertices: v.to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeFile {
                    id: e.id.clone(),
                    ends: [v[e.ends.0].clone(), v[e.ends.1].clone()],
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Multigraph> {
        Multigraph::new(
            self.vertices.iter().cloned(),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.ends[0].clone(), e.ends[1].clone())),
        )
    }
}

impl ViolationFile {
    pub fn new(v: &ExchangeViolation, ground: &GroundSet) -> Self {
        Self {
            axiom: v.axiom,
            first: ground.labels_of(v.first),
            second: ground.labels_of(v.second),
            pivot: ground.label(v.pivot).to_string(),
        }
    }
}

impl PairabilityFile {
    pub fn new(r: &PairabilityReport, ground: &GroundSet) -> Self {
        Self {
            pairable: r.pairable,
            offending_circuit: r.offending_circuit.map(|c| ground.labels_of(c)),
        }
    }
}

pub fn read_matroid(json: &str) -> Result<Matroid> {
    serde_json::from_str::<MatroidFile>(json)?.to_matroid()
}

pub fn read_delta(json: &str) -> Result<DeltaMatroid> {
    serde_json::from_str::<DeltaFile>(json)?.to_delta()
}

pub fn read_graph(json: &str) -> Result<Multigraph> {
    serde_json::from_str::<GraphFile>(json)?.to_graph()
}

pub fn write_matroid(m: &Matroid) -> String {
    serde_json::to_string(&MatroidFile::from_matroid(m)).expect("plain data serializes")
}

pub fn write_delta(d: &DeltaMatroid) -> String {
    serde_json::to_string(&DeltaFile::from_delta(d)).expect("plain data serializes")
}

pub fn write_graph(g: &Multigraph) -> String {
    serde_json::to_string(&GraphFile::from_graph(g)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::corpus;

    #[test]
    fn matroid_file_round_trip() {
        let m = Matroid::uniform(2, GroundSet::letters(4).unwrap()).unwrap();
        let text = write_matroid(&m);
        assert!(text.starts_with(r#"{"ground":["a","b","c","d"],"bases":[["a","b"],["a","c"]"#));
        let back = read_matroid(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(write_matroid(&back), text);
    }

    #[test]
    fn rejected_matroid_names_the_witness() {
        let text = r#"{"ground":["a","b","c"],"bases":[["a"],["b","c"]]}"#;
        match read_matroid(text) {
            Err(e @ Error::Violation { .. }) => assert!(e.to_string().contains("pivot=b")),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(read_matroid("{"), Err(Error::Json(_))));
        assert!(matches!(
            read_delta(r#"{"ground":["a"],"feasibles":[["z"]]}"#),
            Err(Error::UnknownLabel(_))
        ));
        assert!(matches!(
            read_delta(r#"{"ground":["a","a"],"feasibles":[[]]}"#),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn unordered_input_is_canonicalized() {
        let d = read_delta(r#"{"ground":["a","b"],"feasibles":[["b","a"],[]]}"#).unwrap();
        assert_eq!(
            write_delta(&d),
            r#"{"ground":["a","b"],"feasibles":[[],["a","b"]]}"#
        );
    }

    #[test]
    fn graph_files_round_trip() {
        for (_, g) in corpus() {
            let text = write_graph(&g);
            let back = read_graph(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(write_graph(&back), text);
        }
    }
}
