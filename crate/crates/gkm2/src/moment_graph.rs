//! Moment graphs: vertices are fixed points, edges carry nonzero linear
//! forms over F2 (the mod-2 reduced weights).
//!
//! Two validity notions are checked here. A graph is mod-2 GKM-valid when
//! the weights incident to each vertex are distinct and nonzero; it is
//! mod-2 GH-valid when they are nonzero and each value occurs at most
//! twice per vertex, with every weight-α component having a uniform
//! number (1 or 2) of incident α-edges at its vertices. Zero weights can
//! be parsed, so that degenerate inputs are representable and get a
//! proper rejection report, but they never pass validation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2poly::{F2PolyError, LinearForm};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("edge endpoint {0:?} is not a declared vertex")]
    UnknownVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("weight error: {0}")]
    Weight(#[from] F2PolyError),
    #[error("weight-{weight} component touching {vertex:?} has mixed local degree")]
    MixedLocalDegree { weight: String, vertex: String },
    #[error("weight-{weight} component touching {vertex:?} has local degree {degree} > 2")]
    ExcessLocalDegree {
        weight: String,
        vertex: String,
        degree: usize,
    },
    #[error("zero weight cannot index a component")]
    ZeroWeightComponent,
}

/// Whether a graph is analyzed under the GKM or the GH conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Gkm,
    Gh,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Gkm => write!(f, "gkm"),
            Mode::Gh => write!(f, "gh"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gkm" => Ok(Mode::Gkm),
            "gh" => Ok(Mode::Gh),
            other => Err(format!("unknown mode {other:?} (expected gkm or gh)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: LinearForm,
}

/// Vertices in declaration order, edges in input order. Parallel edges are
/// allowed; vertex identifiers are opaque strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentGraph {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    u: String,
    v: String,
    weight: Vec<usize>,
}

impl MomentGraph {
    pub fn new(
        rank: usize,
        vertices: Vec<String>,
        edges: Vec<(String, String, LinearForm)>,
    ) -> Result<Self, GraphError> {
        if rank == 0 || rank > 64 {
            return Err(GraphError::Weight(F2PolyError::RankOutOfRange(rank)));
        }
        let mut index = HashMap::new();
        for (k, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), k).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let mut resolved = Vec::with_capacity(edges.len());
        for (u, v, weight) in edges {
            let &ui = index
                .get(&u)
                .ok_or_else(|| GraphError::UnknownVertex(u.clone()))?;
            let &vi = index
                .get(&v)
                .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
            if ui == vi {
                return Err(GraphError::SelfLoop(u));
            }
            if weight.rank() != rank {
                return Err(GraphError::Weight(F2PolyError::RankMismatch {
                    left: rank,
                    right: weight.rank(),
                }));
            }
            resolved.push(Edge {
                u: ui,
                v: vi,
                weight,
            });
        }
        Ok(MomentGraph {
            rank,
            vertices,
            edges: resolved,
            index,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Edge indices incident to each vertex, in edge input order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            inc[e.u].push(k);
            inc[e.v].push(k);
        }
        inc
    }

    /// Number of connected components (all edges, degenerate or not).
    pub fn connected_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.vertices.len())
            .filter(|&v| find(&mut parent, v) == v)
            .count()
    }

    /// Distinct nonzero weights in order of first appearance.
    pub fn distinct_weights(&self) -> Vec<LinearForm> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.edges {
            if !e.weight.is_zero() && seen.insert(e.weight) {
                out.push(e.weight);
            }
        }
        out
    }

    /// Applies a linear change of variables to every weight; `images[i-1]`
    /// is the image of `x_{i+1}`... of `x_i` (1-based). Weights may collapse
    /// to zero if the map is singular.
    pub fn map_weights(&self, images: &[LinearForm]) -> Result<MomentGraph, GraphError> {
        let target = images.first().map(|f| f.rank()).unwrap_or(self.rank);
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let w = e.weight.substitute(images)?;
            edges.push((self.vertices[e.u].clone(), self.vertices[e.v].clone(), w));
        }
        MomentGraph::new(target, self.vertices.clone(), edges)
    }
}

/// Parses the graph JSON document:
/// `{ "rank": n, "vertices": ["id", ...],
///    "edges": [ { "u": "..", "v": "..", "weight": [1-based indices] }, ... ] }`.
/// Empty-support weights are admitted (degenerate) so that invalid
/// examples can be loaded and then rejected by validation.
pub fn parse_graph(document: &str) -> Result<MomentGraph, GraphError> {
    let doc: GraphDoc = serde_json::from_str(document)?;
    let edges = doc
        .edges
        .into_iter()
        .map(|e| {
            let w = LinearForm::new_allow_zero(doc.rank, &e.weight)?;
            Ok((e.u, e.v, w))
        })
        .collect::<Result<Vec<_>, GraphError>>()?;
    MomentGraph::new(doc.rank, doc.vertices, edges)
}

/// Canonical JSON rendering; `parse_graph ∘ serialize_graph` is the
/// identity, and serializing a parsed canonical document is bit-exact.
pub fn serialize_graph(g: &MomentGraph) -> String {
    let doc = GraphDoc {
        rank: g.rank,
        vertices: g.vertices.clone(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeDoc {
                u: g.vertices[e.u].clone(),
                v: g.vertices[e.v].clone(),
                weight: e.weight.support(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("graph document serializes")
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub vertex: String,
    pub description: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub mode: Mode,
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(mode: Mode, violations: Vec<Violation>) -> Self {
        ValidationReport {
            mode,
            valid: violations.is_empty(),
            violations,
        }
    }
}

/// Per-vertex weight multisets, for the validators.
fn incident_weights(g: &MomentGraph) -> Vec<Vec<LinearForm>> {
    let mut at = vec![Vec::new(); g.num_vertices()];
    for e in g.edges() {
        at[e.u].push(e.weight);
        at[e.v].push(e.weight);
    }
    at
}

/// Mod-2 GKM check: at every vertex the incident weights are nonzero and
/// pairwise distinct, and the vertex degree respects d ≤ 2^n − 1.
pub fn validate_mod2_gkm(g: &MomentGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let bound = (1u128 << g.rank()) - 1;
    for (v, weights) in incident_weights(g).iter().enumerate() {
        let name = g.vertex_name(v);
        let mut counts: BTreeMap<LinearForm, usize> = BTreeMap::new();
        for w in weights {
            if w.is_zero() {
                violations.push(Violation {
                    vertex: name.to_string(),
                    description: "zero weight on an incident edge".to_string(),
                });
            } else {
                *counts.entry(*w).or_insert(0) += 1;
            }
        }
        for (w, c) in counts {
            if c > 1 {
                violations.push(Violation {
                    vertex: name.to_string(),
                    description: format!("weight {w} repeated {c} times"),
                });
            }
        }
        if weights.len() as u128 > bound {
            violations.push(Violation {
                vertex: name.to_string(),
                description: format!(
                    "degree {} exceeds the bound 2^{} - 1 = {}",
                    weights.len(),
                    g.rank(),
                    bound
                ),
            });
        }
    }
    ValidationReport::from_violations(Mode::Gkm, violations)
}

/// Mod-2 GH check: incident weights nonzero, each value at most twice per
/// vertex, uniform local degree on every weight component, and
/// d ≤ 2(2^n − 1) per vertex.
pub fn validate_mod2_gh(g: &MomentGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let bound = 2 * ((1u128 << g.rank()) - 1);
    for (v, weights) in incident_weights(g).iter().enumerate() {
        let name = g.vertex_name(v);
        let mut counts: BTreeMap<LinearForm, usize> = BTreeMap::new();
        for w in weights {
            if w.is_zero() {
                violations.push(Violation {
                    vertex: name.to_string(),
                    description: "zero weight on an incident edge".to_string(),
                });
            } else {
                *counts.entry(*w).or_insert(0) += 1;
            }
        }
        for (w, c) in counts {
            if c > 2 {
                violations.push(Violation {
                    vertex: name.to_string(),
                    description: format!("weight {w} appears {c} > 2 times"),
                });
            }
        }
        if weights.len() as u128 > bound {
            violations.push(Violation {
                vertex: name.to_string(),
                description: format!(
                    "degree {} exceeds the bound 2(2^{} - 1) = {}",
                    weights.len(),
                    g.rank(),
                    bound
                ),
            });
        }
    }
    // uniform local degree per weight component
    for alpha in g.distinct_weights() {
        match alpha_components(g, &alpha) {
            Ok(_) => {}
            Err(GraphError::MixedLocalDegree { weight, vertex }) => {
                violations.push(Violation {
                    vertex,
                    description: format!("weight-{weight} component has mixed local degree"),
                });
            }
            Err(GraphError::ExcessLocalDegree {
                weight,
                vertex,
                degree,
            }) => {
                violations.push(Violation {
                    vertex,
                    description: format!("weight-{weight} component has local degree {degree} > 2"),
                });
            }
            Err(_) => unreachable!("component analysis only fails on degree defects"),
        }
    }
    ValidationReport::from_violations(Mode::Gh, violations)
}

pub fn validate(g: &MomentGraph, mode: Mode) -> ValidationReport {
    match mode {
        Mode::Gkm => validate_mod2_gkm(g),
        Mode::Gh => validate_mod2_gh(g),
    }
}

/// A connected component of the weight-α subgraph. `local_degree` is the
/// number of α-edges at each member vertex: 1 models a 2-dimensional
/// fixed component, 2 a 4-dimensional one.
#[derive(Debug, Clone)]
pub struct AlphaComponent {
    pub weight: LinearForm,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub local_degree: usize,
}

impl AlphaComponent {
    /// Breadth-first spanning tree rooted at the lexicographically least
    /// vertex name; returns (parent, child) pairs in discovery order.
    pub fn bfs_tree(&self, g: &MomentGraph) -> Vec<(usize, usize)> {
        let member: BTreeSet<usize> = self.vertices.iter().copied().collect();
        let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &k in &self.edges {
            let e = &g.edges()[k];
            adjacency.entry(e.u).or_default().push(e.v);
            adjacency.entry(e.v).or_default().push(e.u);
        }
        for neighbors in adjacency.values_mut() {
            neighbors.sort_by(|&a, &b| g.vertex_name(a).cmp(g.vertex_name(b)));
            neighbors.dedup();
        }
        let root = *self
            .vertices
            .iter()
            .min_by(|&&a, &&b| g.vertex_name(a).cmp(g.vertex_name(b)))
            .expect("component is nonempty");
        let mut tree = Vec::new();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        seen.insert(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if let Some(neighbors) = adjacency.get(&v) {
                for &w in neighbors {
                    if member.contains(&w) && seen.insert(w) {
                        tree.push((v, w));
                        queue.push_back(w);
                    }
                }
            }
        }
        tree
    }
}

/// Connected components of the subgraph of edges labeled exactly α, each
/// with its uniform local degree. Mixed or excessive local degree means
/// the graph is not mod-2 GH and is reported as an error.
pub fn alpha_components(
    g: &MomentGraph,
    alpha: &LinearForm,
) -> Result<Vec<AlphaComponent>, GraphError> {
    if alpha.is_zero() {
        return Err(GraphError::ZeroWeightComponent);
    }
    let edge_ids: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.weight == *alpha)
        .map(|(k, _)| k)
        .collect();
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in &edge_ids {
        *degree.entry(g.edges()[k].u).or_insert(0) += 1;
        *degree.entry(g.edges()[k].v).or_insert(0) += 1;
    }
    // union-find over the α-subgraph, components then listed in discovery
    // (first-touched-vertex) order
    let mut parent: BTreeMap<usize, usize> = degree.keys().map(|&v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let p = parent[&x];
        if p != x {
            let root = find(parent, p);
            parent.insert(x, root);
            root
        } else {
            x
        }
    }
    for &k in &edge_ids {
        let (a, b) = (g.edges()[k].u, g.edges()[k].v);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    let mut components: Vec<AlphaComponent> = Vec::new();
    let mut root_of: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in &edge_ids {
        let e = &g.edges()[k];
        let root = find(&mut parent, e.u);
        let idx = *root_of.entry(root).or_insert_with(|| {
            components.push(AlphaComponent {
                weight: *alpha,
                vertices: Vec::new(),
                edges: Vec::new(),
                local_degree: 0,
            });
            components.len() - 1
        });
        components[idx].edges.push(k);
    }
    for &v in degree.keys() {
        let root = find(&mut parent, v);
        let idx = root_of[&root];
        components[idx].vertices.push(v);
    }
    for comp in &mut components {
        comp.vertices.sort();
        let degrees: Vec<usize> = comp.vertices.iter().map(|v| degree[v]).collect();
        let d0 = degrees[0];
        if let Some(pos) = degrees.iter().position(|&d| d != d0) {
            return Err(GraphError::MixedLocalDegree {
                weight: alpha.to_string(),
                vertex: g.vertex_name(comp.vertices[pos]).to_string(),
            });
        }
        if d0 > 2 {
            return Err(GraphError::ExcessLocalDegree {
                weight: alpha.to_string(),
                vertex: g.vertex_name(comp.vertices[0]).to_string(),
                degree: d0,
            });
        }
        comp.local_degree = d0;
    }
    Ok(components)
}
