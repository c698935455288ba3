//! The symmetric-difference puzzle solver.
//!
//! An instance assigns to each edge e a nonempty subset S_e of {1..n};
//! sought are vertex subsets S_v. The exact system demands
//! S_u Δ S_v = S_e on every edge; the relaxed system allows
//! S_u Δ S_v ∈ {S_e, ∅}. Over F2 these are the linear systems
//! α_u + α_v = α_e and α_u + α_v = λ_e·α_e, which is how they are
//! solved here. Two solutions are equivalent when they differ by a
//! global shift S_v ↦ S_v Δ S_0; class representatives are normalized
//! so the lexicographically least vertex carries ∅.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology;
use crate::f2linalg::{F2Matrix, F2Vector};
use crate::f2poly::LinearForm;
use crate::moment_graph::{validate_mod2_gkm, Mode, MomentGraph};

#[derive(Debug, Error)]
pub enum SymDiffError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("universe size {0} out of range 1..=64")]
    UniverseOutOfRange(usize),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("edge endpoint {0:?} is not a declared vertex")]
    UnknownVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("edge {u:?}-{v:?} has an empty label; the relaxation is vacuous on it")]
    EmptyLabel { u: String, v: String },
    #[error("label element {element} outside universe 1..={universe}")]
    LabelOutOfRange { element: usize, universe: usize },
    #[error("labels are not a mod-2 GKM weight assignment: {0}")]
    NonGkmLabels(String),
    #[error("cohomology error: {0}")]
    Cohomology(#[from] cohomology::CohomologyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymDiffEdge {
    pub u: usize,
    pub v: usize,
    /// Nonempty subset of {1..universe}, bit k-1 ⇔ element k.
    pub subset: u64,
}

/// A labeled-graph instance of the puzzle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymDiffInstance {
    universe: usize,
    vertices: Vec<String>,
    edges: Vec<SymDiffEdge>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    universe: usize,
    vertices: Vec<String>,
    edges: Vec<InstanceEdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct InstanceEdgeDoc {
    u: String,
    v: String,
    subset: Vec<usize>,
}

fn subset_mask(universe: usize, elements: &[usize]) -> Result<u64, SymDiffError> {
    let mut mask = 0u64;
    for &k in elements {
        if k == 0 || k > universe {
            return Err(SymDiffError::LabelOutOfRange {
                element: k,
                universe,
            });
        }
        mask |= 1 << (k - 1);
    }
    Ok(mask)
}

pub fn subset_elements(mask: u64, universe: usize) -> Vec<usize> {
    (1..=universe)
        .filter(|k| mask >> (k - 1) & 1 == 1)
        .collect()
}

pub fn subset_string(mask: u64, universe: usize) -> String {
    let elems: Vec<String> = subset_elements(mask, universe)
        .iter()
        .map(|k| k.to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

impl SymDiffInstance {
    pub fn new(
        universe: usize,
        vertices: Vec<String>,
        edges: Vec<(String, String, Vec<usize>)>,
    ) -> Result<Self, SymDiffError> {
        if universe == 0 || universe > 64 {
            return Err(SymDiffError::UniverseOutOfRange(universe));
        }
        let mut index = HashMap::new();
        for (k, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), k).is_some() {
                return Err(SymDiffError::DuplicateVertex(name.clone()));
            }
        }
        let mut resolved = Vec::with_capacity(edges.len());
        for (u, v, elements) in edges {
            let &ui = index
                .get(&u)
                .ok_or_else(|| SymDiffError::UnknownVertex(u.clone()))?;
            let &vi = index
                .get(&v)
                .ok_or_else(|| SymDiffError::UnknownVertex(v.clone()))?;
            if ui == vi {
                return Err(SymDiffError::SelfLoop(u.clone()));
            }
            let subset = subset_mask(universe, &elements)?;
            if subset == 0 {
                return Err(SymDiffError::EmptyLabel { u, v });
            }
            resolved.push(SymDiffEdge {
                u: ui,
                v: vi,
                subset,
            });
        }
        Ok(SymDiffInstance {
            universe,
            vertices,
            edges: resolved,
            index,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[SymDiffEdge] {
        &self.edges
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    /// Connected components as sorted vertex-index lists, each sorted by
    /// least member.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertices.len() {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Reads the labels as linear forms and builds the weighted graph.
    pub fn to_moment_graph(&self) -> MomentGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let w = LinearForm::new(self.universe, &subset_elements(e.subset, self.universe))
                    .expect("labels are nonempty");
                (self.vertices[e.u].clone(), self.vertices[e.v].clone(), w)
            })
            .collect();
        MomentGraph::new(self.universe, self.vertices.clone(), edges)
            .expect("instance is well-formed")
    }
}

/// Reads the edge weights of a graph as subset labels.
pub fn instance_from_graph(g: &MomentGraph) -> Result<SymDiffInstance, SymDiffError> {
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            if e.weight.is_zero() {
                return Err(SymDiffError::EmptyLabel {
                    u: g.vertex_name(e.u).to_string(),
                    v: g.vertex_name(e.v).to_string(),
                });
            }
            Ok((
                g.vertex_name(e.u).to_string(),
                g.vertex_name(e.v).to_string(),
                e.weight.support(),
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;
    SymDiffInstance::new(g.rank(), g.vertices().to_vec(), edges)
}

pub fn parse_instance(document: &str) -> Result<SymDiffInstance, SymDiffError> {
    let doc: InstanceDoc = serde_json::from_str(document)?;
    SymDiffInstance::new(
        doc.universe,
        doc.vertices,
        doc.edges
            .into_iter()
            .map(|e| (e.u, e.v, e.subset))
            .collect(),
    )
}

pub fn serialize_instance(inst: &SymDiffInstance) -> String {
    let doc = InstanceDoc {
        universe: inst.universe,
        vertices: inst.vertices.clone(),
        edges: inst
            .edges
            .iter()
            .map(|e| InstanceEdgeDoc {
                u: inst.vertices[e.u].clone(),
                v: inst.vertices[e.v].clone(),
                subset: subset_elements(e.subset, inst.universe),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("instance serializes")
}

/// One assignment vertex → subset (and, for relaxed solutions, the edge
/// scalars λ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymDiffSolution {
    pub assignment: Vec<u64>,
    pub lambdas: Option<Vec<bool>>,
}

impl SymDiffSolution {
    /// Checks the exact identities edge-by-edge with set operations.
    pub fn satisfies_exact(&self, inst: &SymDiffInstance) -> bool {
        inst.edges
            .iter()
            .all(|e| self.assignment[e.u] ^ self.assignment[e.v] == e.subset)
    }

    /// Checks the relaxed identities edge-by-edge with set operations.
    pub fn satisfies_relaxed(&self, inst: &SymDiffInstance) -> bool {
        inst.edges.iter().all(|e| {
            let d = self.assignment[e.u] ^ self.assignment[e.v];
            d == 0 || d == e.subset
        })
    }
}

#[derive(Debug, Clone)]
pub enum ExactOutcome {
    Consistent {
        /// Normalized so the least vertex of each component carries ∅.
        solution: SymDiffSolution,
        components: usize,
        /// The residual freedom: one free subset per component, the
        /// global-shift equivalence being the connected case.
        freedom_log2: usize,
    },
    Inconsistent,
}

/// Decides the exact system. Consistency is equivalent to all cycle sums
/// of the labels vanishing; here it falls out of the linear solve.
pub fn solve_exact(inst: &SymDiffInstance) -> ExactOutcome {
    let n = inst.universe;
    let nv = inst.vertices.len();
    let rows = inst.edges.len() * n;
    let mut matrix = F2Matrix::zeros(rows, nv * n);
    let mut rhs = F2Vector::zeros(rows);
    for (ei, e) in inst.edges.iter().enumerate() {
        for k in 0..n {
            let row = ei * n + k;
            matrix.set(row, e.u * n + k, true);
            matrix.set(row, e.v * n + k, true);
            if e.subset >> k & 1 == 1 {
                rhs.set(row, true);
            }
        }
    }
    let Some(particular) = matrix.solve(&rhs) else {
        return ExactOutcome::Inconsistent;
    };
    let mut assignment: Vec<u64> = (0..nv)
        .map(|v| {
            let mut mask = 0u64;
            for k in 0..n {
                if particular.get(v * n + k) {
                    mask |= 1 << k;
                }
            }
            mask
        })
        .collect();
    let components = inst.components();
    for comp in &components {
        let least = *comp
            .iter()
            .min_by(|&&a, &&b| inst.vertices[a].cmp(&inst.vertices[b]))
            .expect("component nonempty");
        let shift = assignment[least];
        for &v in comp {
            assignment[v] ^= shift;
        }
    }
    let solution = SymDiffSolution {
        assignment,
        lambdas: None,
    };
    debug_assert!(solution.satisfies_exact(inst));
    ExactOutcome::Consistent {
        solution,
        components: components.len(),
        freedom_log2: inst.universe * components.len(),
    }
}

/// One equivalence class of relaxed solutions, with a normalized
/// representative.
#[derive(Debug, Clone)]
pub struct ClassRep {
    pub solution: SymDiffSolution,
    pub trivial: bool,
    pub solves_exact: bool,
}

/// The F2 solution space of the relaxed system in the variables
/// (α_v, λ_e), quotiented by the trivial (constant-assignment) subgroup.
#[derive(Debug, Clone)]
pub struct RelaxedSolutions {
    /// Canonical basis of the kernel; α coordinates first, λ last.
    pub kernel: Vec<SymDiffSolution>,
    pub kernel_dim: usize,
    /// log2 of the trivial subgroup: one global shift per universe element.
    pub trivial_log2: usize,
    /// Extra constant freedom on disconnected input, n·(components−1),
    /// reported but not quotiented.
    pub extra_component_freedom_log2: usize,
    pub class_count_log2: usize,
    /// One normalized representative per class, present when the class
    /// group is small (≤ 2^16).
    pub classes: Option<Vec<ClassRep>>,
    pub notes: Vec<String>,
}

fn vector_to_solution(inst: &SymDiffInstance, v: &F2Vector) -> SymDiffSolution {
    let n = inst.universe;
    let nv = inst.vertices.len();
    let assignment = (0..nv)
        .map(|vert| {
            let mut mask = 0u64;
            for k in 0..n {
                if v.get(vert * n + k) {
                    mask |= 1 << k;
                }
            }
            mask
        })
        .collect();
    let lambdas = (0..inst.edges.len()).map(|e| v.get(nv * n + e)).collect();
    SymDiffSolution {
        assignment,
        lambdas: Some(lambdas),
    }
}

/// Normalizes an assignment by the global shift that empties the
/// lexicographically least vertex.
pub fn normalize_assignment(vertices: &[String], assignment: &[u64]) -> Vec<u64> {
    let least = (0..vertices.len())
        .min_by(|&a, &b| vertices[a].cmp(&vertices[b]))
        .expect("at least one vertex");
    let shift = assignment[least];
    assignment.iter().map(|&m| m ^ shift).collect()
}

pub fn solve_relaxed(inst: &SymDiffInstance) -> RelaxedSolutions {
    let n = inst.universe;
    let nv = inst.vertices.len();
    let ne = inst.edges.len();
    let rows = ne * n;
    let cols = nv * n + ne;
    let mut matrix = F2Matrix::zeros(rows, cols);
    for (ei, e) in inst.edges.iter().enumerate() {
        for k in 0..n {
            let row = ei * n + k;
            matrix.set(row, e.u * n + k, true);
            matrix.set(row, e.v * n + k, true);
            if e.subset >> k & 1 == 1 {
                matrix.set(row, nv * n + ei, true);
            }
        }
    }
    let kernel = matrix.kernel_basis();
    let kernel_dim = kernel.len();

    // trivial subgroup: one constant shift per universe element, λ = 0
    let trivial: Vec<F2Vector> = (0..n)
        .map(|k| {
            let mut v = F2Vector::zeros(cols);
            for vert in 0..nv {
                v.set(vert * n + k, true);
            }
            v
        })
        .collect();
    // echelon-first quotient representatives
    let mut span = rref_span(cols, &trivial);
    let mut quotient_reps: Vec<F2Vector> = Vec::new();
    for v in &kernel {
        let mut reduced = v.clone();
        reduce_vec(&span, &mut reduced);
        if !reduced.is_zero() {
            quotient_reps.push(v.clone());
            span.push(reduced);
            span = rref_span(cols, &span);
        }
    }
    let class_count_log2 = quotient_reps.len();
    let components = inst.components().len();

    let classes = if class_count_log2 <= 16 {
        let mut reps = Vec::with_capacity(1 << class_count_log2);
        for combo in 0u32..(1u32 << class_count_log2) {
            let mut v = F2Vector::zeros(cols);
            for (k, rep) in quotient_reps.iter().enumerate() {
                if combo >> k & 1 == 1 {
                    v.xor_assign(rep);
                }
            }
            let raw = vector_to_solution(inst, &v);
            let assignment = normalize_assignment(&inst.vertices, &raw.assignment);
            let solution = SymDiffSolution {
                assignment,
                lambdas: raw.lambdas,
            };
            debug_assert!(solution.satisfies_relaxed(inst));
            let solves_exact = solution.satisfies_exact(inst);
            reps.push(ClassRep {
                solution,
                trivial: combo == 0,
                solves_exact,
            });
        }
        Some(reps)
    } else {
        None
    };

    let notes = vec![
        "complement classes coincide: the all-ones constant shift is a trivial solution, \
         so each class already contains the complements of its members"
            .to_string(),
    ];
    RelaxedSolutions {
        kernel: kernel.iter().map(|v| vector_to_solution(inst, v)).collect(),
        kernel_dim,
        trivial_log2: n,
        extra_component_freedom_log2: n * (components - 1),
        class_count_log2,
        classes,
        notes,
    }
}

fn rref_span(width: usize, vectors: &[F2Vector]) -> Vec<F2Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = F2Matrix::zeros(vectors.len(), width);
    for (k, v) in vectors.iter().enumerate() {
        m.set_row(k, v);
    }
    let r = m.rref();
    (0..r.num_rows())
        .map(|k| r.row(k))
        .filter(|row| !row.is_zero())
        .collect()
}

fn reduce_vec(rref_rows: &[F2Vector], v: &mut F2Vector) {
    for row in rref_rows {
        if let Some(p) = row.leading() {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }
}

/// Both sides of the degree-1 identification: the relaxed solution group
/// against the degree-1 graded piece of the labels-as-weights graph.
#[derive(Debug, Clone)]
pub struct H1Report {
    pub universe: usize,
    pub dim_h1: usize,
    pub relaxed_kernel_dim: usize,
    pub class_count_log2: usize,
    /// 2^dim H^1 = |solution group|.
    pub sizes_match: bool,
    /// log2(#classes) = dim H^1 − n.
    pub class_identity_holds: bool,
}

/// Requires the labels to form a mod-2 GKM weight assignment; computes
/// dim H^1 by elimination and compares with the relaxed solution group.
pub fn crosscheck_h1(inst: &SymDiffInstance) -> Result<H1Report, SymDiffError> {
    let g = inst.to_moment_graph();
    let report = validate_mod2_gkm(&g);
    if !report.valid {
        let v = &report.violations[0];
        return Err(SymDiffError::NonGkmLabels(format!(
            "{}: {}",
            v.vertex, v.description
        )));
    }
    let dim_h1 = cohomology::graded_dimension(&g, 1, Mode::Gkm)?;
    let relaxed = solve_relaxed(inst);
    Ok(H1Report {
        universe: inst.universe,
        dim_h1,
        relaxed_kernel_dim: relaxed.kernel_dim,
        class_count_log2: relaxed.class_count_log2,
        sizes_match: dim_h1 == relaxed.kernel_dim,
        class_identity_holds: relaxed.class_count_log2 + inst.universe == dim_h1,
    })
}
