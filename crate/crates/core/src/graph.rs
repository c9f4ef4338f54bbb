//! Multigraphs and the matroids they carry on their edge sets: the cycle
//! matroid, the 2-dimensional generic rigidity matroid ((2,3)-sparsity),
//! the rigidity Δ-matroid and the cone construction.

use std::collections::HashSet;

use serde::Serialize;

use crate::delta::DeltaMatroid;
use crate::error::{Error, Result};
use crate::matroid::{is_quotient, Matroid};
use crate::sets::{GroundSet, SetFamily, Subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
}

/// Labelled vertices and labelled edges; loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// Vertex masks are `u64`.
pub const MAX_VERTICES: usize = 64;

impl Multigraph {
    /// `edges` are `(id, end, end)` triples naming vertices by label.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.len() > MAX_VERTICES {
            return Err(Error::Graph(format!(
                "{} vertices, at most {MAX_VERTICES} supported",
                vertices.len()
            )));
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::Graph(format!("duplicate vertex {v:?}")));
            }
        }
        let lookup = |v: &str| {
            vertices
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::Graph(format!("edge endpoint {v:?} is not a vertex")))
        };
        let mut ids = HashSet::new();
        let mut out = Vec::new();
        for (id, u, v) in edges {
            let (id, u, v): (String, String, String) = (id.into(), u.into(), v.into());
            if !ids.insert(id.clone()) {
                return Err(Error::Graph(format!("duplicate edge {id:?}")));
            }
            out.push(Edge {
                ends: (lookup(&u)?, lookup(&v)?),
                id,
            });
        }
        Ok(Self {
            vertices,
            edges: out,
        })
    }

    /// Vertices `1..=n`, edges labelled `a, b, c, ...` in order.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let label = |i: usize| (i + 1).to_string();
        Self::new(
            (0..n).map(label),
            pairs
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| (char::from(b'a' + k as u8).to_string(), label(u), label(v))),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge labels as a matroid ground set.
    pub fn edge_ground(&self) -> Result<GroundSet> {
        GroundSet::new(self.edges.iter().map(|e| e.id.clone()))
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.ends.0 == e.ends.1)
    }

    /// Vertices touched by the edges in `f`.
    pub fn vertex_mask(&self, f: Subset) -> u64 {
        f.elements().fold(0, |acc, i| {
            let (u, v) = self.edges[i].ends;
            acc | 1 << u | 1 << v
        })
    }

    fn components(&self, f: Subset) -> UnionFind {
        let mut uf = UnionFind::new(self.vertices.len());
        for i in f.elements() {
            let (u, v) = self.edges[i].ends;
            uf.union(u, v);
        }
        uf
    }

    /// All vertices lie in one component of `(V, f)`.
    pub fn spans_connected(&self, f: Subset) -> bool {
        self.components(f).count <= 1
    }

    pub fn is_connected(&self) -> bool {
        self.spans_connected(Subset::full(self.edges.len()))
    }

    /// No cycle (loops count as cycles).
    pub fn is_forest(&self, f: Subset) -> bool {
        let mut uf = UnionFind::new(self.vertices.len());
        f.elements().all(|i| {
            let (u, v) = self.edges[i].ends;
            uf.union(u, v)
        })
    }

    fn all_edges(&self) -> Subset {
        Subset::full(self.edges.len())
    }
}

struct UnionFind {
    parent: Vec<usize>,
    count: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            count: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.count -= 1;
        true
    }
}

/// Cycle matroid: independent sets are the forests.
pub fn cycle_matroid(g: &Multigraph) -> Result<Matroid> {
    let ground = g.edge_ground()?;
    let rank = g.vertices.len() - g.components(g.all_edges()).count;
    Matroid::from_bases(SetFamily::from_predicate(ground, |f| {
        f.len() == rank && g.is_forest(f)
    }))
}

fn count_ok(g: &Multigraph, f: Subset) -> bool {
    f.len() as i64 <= 2 * g.vertex_mask(f).count_ones() as i64 - 3
}

/// Every nonempty `F' ⊆ f` satisfies `|F'| ≤ 2|V(F')| − 3`.
pub fn is_sparse_23(g: &Multigraph, f: Subset) -> bool {
    f.subsets()
        .filter(|s| !s.is_empty())
        .all(|s| count_ok(g, s))
}

/// (2,3)-sparsity of every edge subset, indexed by mask. A set is sparse when
/// it meets the count itself and every one-edge deletion is sparse.
fn sparsity_table(g: &Multigraph) -> Vec<bool> {
    let m = g.edges.len();
    let mut sparse = vec![false; 1 << m];
    sparse[0] = true;
    for mask in 1u32..(1 << m) {
        let s = Subset::from_mask(mask);
        sparse[mask as usize] =
            count_ok(g, s) && s.elements().all(|i| sparse[s.without(i).mask() as usize]);
    }
    sparse
}

/// 2-dimensional generic rigidity matroid: independent sets are the
/// (2,3)-sparse edge sets.
pub fn rigidity_matroid(g: &Multigraph) -> Result<Matroid> {
    let ground = g.edge_ground()?;
    let sparse = sparsity_table(g);
    let rank = (0..sparse.len())
        .filter(|&m| sparse[m])
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Matroid::from_bases(SetFamily::from_predicate(ground, |f| {
        f.len() == rank && sparse[f.mask() as usize]
    }))
}

/// Edge sets that contain a spanning tree and are not overbraced.
pub fn rigidity_feasible_family(g: &Multigraph) -> Result<SetFamily> {
    if g.has_loops() {
        return Err(Error::Graph("loops are not allowed here".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let ground = g.edge_ground()?;
    let sparse = sparsity_table(g);
    Ok(SetFamily::from_predicate(ground, |f| {
        sparse[f.mask() as usize] && g.spans_connected(f)
    }))
}

/// A graph with one new apex vertex joined to every old vertex.
#[derive(Clone, Debug)]
pub struct ConeResult {
    pub graph: Multigraph,
    /// The new edges, in the cone graph's edge indexing.
    pub cone_edges: Subset,
}

pub fn cone(g: &Multigraph) -> Result<ConeResult> {
    let taken: HashSet<&str> = g
        .vertices
        .iter()
        .chain(g.edges.iter().map(|e| &e.id))
        .map(String::as_str)
        .collect();
    let fresh = |base: String| {
        let mut s = base;
        while taken.contains(s.as_str()) {
            s.push('\'');
        }
        s
    };
    let apex = fresh("x0".to_string());
    let mut vertices = g.vertices.clone();
    vertices.push(apex.clone());
    let old = g.edges.iter().map(|e| {
        (
            e.id.clone(),
            g.vertices[e.ends.0].clone(),
            g.vertices[e.ends.1].clone(),
        )
    });
    let new: Vec<(String, String, String)> = g
        .vertices
        .iter()
        .map(|v| (fresh(format!("{apex}~{v}")), apex.clone(), v.clone()))
        .collect();
    let graph = Multigraph::new(vertices, old.chain(new))?;
    let cone_edges = Subset::full(graph.edges.len()).minus(Subset::full(g.edges.len()));
    Ok(ConeResult { graph, cone_edges })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeQuotientReport {
    /// `M_r(G) = M_r(G_c) ∖ X`.
    pub deletion_identity: bool,
    /// `M_c(G) = M_r(G_c) / X`.
    pub contraction_identity: bool,
}

impl ConeQuotientReport {
    pub fn holds(&self) -> bool {
        self.deletion_identity && self.contraction_identity
    }
}

pub fn verify_cone_quotient(g: &Multigraph) -> Result<ConeQuotientReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let coned = cone(g)?;
    let rigid_cone = rigidity_matroid(&coned.graph)?;
    Ok(ConeQuotientReport {
        deletion_identity: rigid_cone.delete(coned.cone_edges)? == rigidity_matroid(g)?,
        contraction_identity: rigid_cone.contract(coned.cone_edges)? == cycle_matroid(g)?,
    })
}

/// The rigidity Δ-matroid checks for one connected, loopless graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    /// The connected spanning sparse sets satisfy (ΔF).
    pub feasibles_certify: bool,
    pub upper_is_rigidity: bool,
    pub lower_is_cycle: bool,
    /// The cycle matroid is a quotient of the rigidity matroid.
    pub cycle_is_quotient: bool,
    pub cone: ConeQuotientReport,
}

impl RigidityReport {
    pub fn holds(&self) -> bool {
        self.feasibles_certify
            && self.upper_is_rigidity
            && self.lower_is_cycle
            && self.cycle_is_quotient
            && self.cone.holds()
    }
}

pub fn check_rigidity(g: &Multigraph) -> Result<RigidityReport> {
    let fam = rigidity_feasible_family(g)?;
    let rigid = rigidity_matroid(g)?;
    let cycle = cycle_matroid(g)?;
    let d = DeltaMatroid::from_feasibles(fam).ok();
    Ok(RigidityReport {
        feasibles_certify: d.is_some(),
        upper_is_rigidity: d.as_ref().is_some_and(|d| d.upper() == &rigid),
        lower_is_cycle: d.as_ref().is_some_and(|d| d.lower() == &cycle),
        cycle_is_quotient: is_quotient(&cycle, &rigid)?,
        cone: verify_cone_quotient(g)?,
    })
}

type CorpusEntry = (&'static str, usize, &'static [(usize, usize)]);

/// Named graphs used by the rigidity and cone suites.
pub fn corpus() -> Vec<(&'static str, Multigraph)> {
    let graphs: [CorpusEntry; 7] = [
        ("triangle", 3, &[(0, 1), (1, 2), (0, 2)]),
        ("path-p3", 3, &[(0, 1), (1, 2)]),
        ("k4", 4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        (
            "k4-minus-edge",
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
        ),
        (
            "bowtie",
            5,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)],
        ),
        ("c5", 5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
        (
            "square-with-chord",
            4,
            &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)],
        ),
    ];
    graphs
        .into_iter()
        .map(|(name, n, pairs)| {
            (
                name,
                Multigraph::from_pairs(n, pairs).expect("corpus graphs are well formed"),
            )
        })
        .collect()
}
