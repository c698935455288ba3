//! Generators for the bundled graph families.
//!
//! These are the stock test subjects: complete graphs (projective-space
//! real loci), hypercubes (torus real loci of products of spheres),
//! permutahedra (real flag varieties), Johnson graphs (real
//! Grassmannians, via the standard k-subset description), the weight-x
//! cycles that exercise the 4-dimensional-component conditions, and the
//! degenerate triangle that every validator must reject.

use thiserror::Error;

use crate::f2poly::LinearForm;
use crate::moment_graph::MomentGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExampleError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("unknown example name {0:?}")]
    UnknownName(String),
}

/// Complete graph on vertices "1".."n", edge {i,j} weighted x_i + x_j;
/// rank n. Requires n ≥ 2.
pub fn complete_graph(n: usize) -> Result<MomentGraph, ExampleError> {
    if n < 2 {
        return Err(ExampleError::OutOfRange(format!(
            "complete requires n >= 2, got {n}"
        )));
    }
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let w = LinearForm::new(n, &[i, j]).expect("i < j <= n");
            edges.push((i.to_string(), j.to_string(), w));
        }
    }
    Ok(MomentGraph::new(n, vertices, edges).expect("construction is well-formed"))
}

/// Hypercube graph: vertices are the binary words of length n; words
/// differing in exactly bit i (1-based, counted from the left) are joined
/// by an edge of weight x_i. Rank n, n ≥ 1.
pub fn hypercube(n: usize) -> Result<MomentGraph, ExampleError> {
    if n < 1 {
        return Err(ExampleError::OutOfRange(format!(
            "hypercube requires n >= 1, got {n}"
        )));
    }
    if n > 20 {
        return Err(ExampleError::OutOfRange(format!(
            "hypercube({n}) is unreasonably large"
        )));
    }
    let word = |v: usize| -> String {
        (0..n)
            .map(|k| if v >> (n - 1 - k) & 1 == 1 { '1' } else { '0' })
            .collect()
    };
    let vertices: Vec<String> = (0..1usize << n).map(word).collect();
    let mut edges = Vec::new();
    for v in 0..1usize << n {
        for i in 1..=n {
            let u = v ^ (1 << (n - i));
            if u > v {
                let w = LinearForm::variable(n, i).expect("i <= n");
                edges.push((word(v), word(u), w));
            }
        }
    }
    Ok(MomentGraph::new(n, vertices, edges).expect("construction is well-formed"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (1..=n).collect();
    fn rec(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(k + 1, items, out);
            items.swap(k, i);
        }
    }
    rec(0, &mut items, &mut out);
    out.sort();
    out
}

fn one_line(perm: &[usize]) -> String {
    perm.iter().map(|d| d.to_string()).collect()
}

/// Permutahedron: vertices are the permutations of {1..n} in one-line
/// notation; σ and τ are adjacent iff τσ⁻¹ is a transposition (i j), and
/// that edge is weighted x_i + x_j. Rank n, n ≥ 2.
pub fn permutahedron(n: usize) -> Result<MomentGraph, ExampleError> {
    if n < 2 {
        return Err(ExampleError::OutOfRange(format!(
            "permutahedron requires n >= 2, got {n}"
        )));
    }
    if n > 8 {
        return Err(ExampleError::OutOfRange(format!(
            "permutahedron({n}) is unreasonably large"
        )));
    }
    let perms = permutations(n);
    let vertices: Vec<String> = perms.iter().map(|p| one_line(p)).collect();
    let mut edges = Vec::new();
    for sigma in &perms {
        for i in 1..=n {
            for j in i + 1..=n {
                // τ = (i j)∘σ swaps the values i and j in the word
                let tau: Vec<usize> = sigma
                    .iter()
                    .map(|&v| {
                        if v == i {
                            j
                        } else if v == j {
                            i
                        } else {
                            v
                        }
                    })
                    .collect();
                if *sigma < tau {
                    let w = LinearForm::new(n, &[i, j]).expect("i < j <= n");
                    edges.push((one_line(sigma), one_line(&tau), w));
                }
            }
        }
    }
    Ok(MomentGraph::new(n, vertices, edges).expect("construction is well-formed"))
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..=n {
            current.push(v);
            rec(v + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(1, n, k, &mut current, &mut out);
    out
}

fn subset_name(s: &[usize]) -> String {
    s.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Johnson graph J(n,k): vertices are the k-subsets of {1..n}; S and T
/// are adjacent iff |S∩T| = k−1, with weight x_i + x_j for S\T = {i},
/// T\S = {j}. Rank n, 1 ≤ k < n.
pub fn johnson(n: usize, k: usize) -> Result<MomentGraph, ExampleError> {
    if k < 1 || k >= n {
        return Err(ExampleError::OutOfRange(format!(
            "johnson requires 1 <= k < n, got ({n},{k})"
        )));
    }
    if n > 16 {
        return Err(ExampleError::OutOfRange(format!(
            "johnson({n},{k}) is unreasonably large"
        )));
    }
    let subsets = k_subsets(n, k);
    let vertices: Vec<String> = subsets.iter().map(|s| subset_name(s)).collect();
    let mut edges = Vec::new();
    for (a, s) in subsets.iter().enumerate() {
        for t in subsets.iter().skip(a + 1) {
            let only_s: Vec<usize> = s.iter().filter(|v| !t.contains(v)).copied().collect();
            let only_t: Vec<usize> = t.iter().filter(|v| !s.contains(v)).copied().collect();
            if only_s.len() == 1 {
                let w = LinearForm::new(n, &[only_s[0], only_t[0]]).expect("indices in range");
                edges.push((subset_name(s), subset_name(t), w));
            }
        }
    }
    Ok(MomentGraph::new(n, vertices, edges).expect("construction is well-formed"))
}

/// d-cycle with every edge weighted x; rank 1, d ≥ 3. Fails the GKM
/// check (each vertex sees x twice) but passes GH with one degree-2
/// component covering the whole cycle.
pub fn gh_cycle(d: usize) -> Result<MomentGraph, ExampleError> {
    if d < 3 {
        return Err(ExampleError::OutOfRange(format!(
            "gh_cycle requires d >= 3, got {d}"
        )));
    }
    let vertices: Vec<String> = (1..=d).map(|i| i.to_string()).collect();
    let w = LinearForm::variable(1, 1).expect("rank 1");
    let mut edges: Vec<(String, String, LinearForm)> = (1..d)
        .map(|i| (i.to_string(), (i + 1).to_string(), w))
        .collect();
    edges.push(("1".to_string(), d.to_string(), w));
    Ok(MomentGraph::new(1, vertices, edges).expect("construction is well-formed"))
}

/// The degenerate triangle: p1p2 weighted x, p1p3 weighted 0, p2p3
/// weighted x (rank 1). Models the reduction of the weight table
/// (x, 2x / −x, x / −2x, −x) mod 2; rejected by both validators.
pub fn cp2_bad() -> MomentGraph {
    let x = LinearForm::variable(1, 1).expect("rank 1");
    let zero = LinearForm::new_allow_zero(1, &[]).expect("rank 1");
    MomentGraph::new(
        1,
        vec!["p1".into(), "p2".into(), "p3".into()],
        vec![
            ("p1".into(), "p2".into(), x),
            ("p1".into(), "p3".into(), zero),
            ("p2".into(), "p3".into(), x),
        ],
    )
    .expect("construction is well-formed")
}

/// Complete bipartite graph K33 on A1..A3, B1..B3 with weights
/// x_i + x_j on the edge A_iB_j for i ≠ j and x_j + x_k (j,k ≠ i) on
/// A_iB_i; rank 3. This is the labeling used by the bipartite
/// portfolio puzzle.
pub fn k33() -> MomentGraph {
    let mut edges = Vec::new();
    for i in 1..=3usize {
        for j in 1..=3usize {
            let support: Vec<usize> = if i != j {
                vec![i, j]
            } else {
                (1..=3).filter(|&k| k != i).collect()
            };
            let w = LinearForm::new(3, &support).expect("two indices in range");
            edges.push((format!("A{i}"), format!("B{j}"), w));
        }
    }
    let vertices = vec!["A1", "A2", "A3", "B1", "B2", "B3"]
        .into_iter()
        .map(String::from)
        .collect();
    MomentGraph::new(3, vertices, edges).expect("construction is well-formed")
}

/// Product graph: vertices are pairs "u|v"; edges are g1-edges crossed
/// with g2-vertices plus g1-vertices crossed with g2-edges, with g2's
/// weight variables shifted past g1's. Rank n1 + n2.
pub fn product(g1: &MomentGraph, g2: &MomentGraph) -> MomentGraph {
    let n1 = g1.rank();
    let n = n1 + g2.rank();
    let pair = |u: &str, v: &str| format!("{u}|{v}");
    let mut vertices = Vec::new();
    for u in g1.vertices() {
        for v in g2.vertices() {
            vertices.push(pair(u, v));
        }
    }
    let mut edges = Vec::new();
    for e in g1.edges() {
        let w = LinearForm::new_allow_zero(n, &e.weight.support())
            .expect("support fits the larger rank");
        for v in g2.vertices() {
            edges.push((
                pair(g1.vertex_name(e.u), v),
                pair(g1.vertex_name(e.v), v),
                w,
            ));
        }
    }
    for e in g2.edges() {
        let shifted: Vec<usize> = e.weight.support().iter().map(|i| i + n1).collect();
        let w = LinearForm::new_allow_zero(n, &shifted).expect("shifted support in range");
        for u in g1.vertices() {
            edges.push((
                pair(u, g2.vertex_name(e.u)),
                pair(u, g2.vertex_name(e.v)),
                w,
            ));
        }
    }
    MomentGraph::new(n, vertices, edges).expect("construction is well-formed")
}

/// A named example request, as accepted by the CLI.
#[derive(Debug, Clone)]
pub struct ExampleSpec {
    pub name: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub d: Option<usize>,
}

impl ExampleSpec {
    pub fn generate(&self) -> Result<MomentGraph, ExampleError> {
        let need = |p: Option<usize>, what: &str| {
            p.ok_or_else(|| ExampleError::OutOfRange(format!("{}: missing --{what}", self.name)))
        };
        match self.name.as_str() {
            "complete" => complete_graph(need(self.n, "n")?),
            "hypercube" => hypercube(need(self.n, "n")?),
            "permutahedron" => permutahedron(need(self.n, "n")?),
            "johnson" => johnson(need(self.n, "n")?, need(self.k, "k")?),
            "gh_cycle" => gh_cycle(need(self.d, "d")?),
            "cp2_bad" => Ok(cp2_bad()),
            "k33" => Ok(k33()),
            "product" => {
                // n-fold product of two-point rank-1 graphs
                let n = need(self.n, "n")?;
                if n < 1 {
                    return Err(ExampleError::OutOfRange("product requires n >= 1".into()));
                }
                let k2 = hypercube(1)?;
                let mut g = k2.clone();
                for _ in 1..n {
                    g = product(&g, &k2);
                }
                Ok(g)
            }
            other => Err(ExampleError::UnknownName(other.to_string())),
        }
    }
}

/// The bundled corpus: every generator family at desk scale, including
/// the invalid example. Names are stable; tests and the acceptance suite
/// iterate over this list.
pub fn bundled() -> Vec<(String, MomentGraph)> {
    let mut out: Vec<(String, MomentGraph)> = Vec::new();
    for n in 2..=4 {
        out.push((format!("complete({n})"), complete_graph(n).unwrap()));
    }
    for n in 1..=4 {
        out.push((format!("hypercube({n})"), hypercube(n).unwrap()));
    }
    for n in 2..=3 {
        out.push((format!("permutahedron({n})"), permutahedron(n).unwrap()));
    }
    out.push(("johnson(4,2)".to_string(), johnson(4, 2).unwrap()));
    out.push(("k33".to_string(), k33()));
    for d in 3..=5 {
        out.push((format!("gh_cycle({d})"), gh_cycle(d).unwrap()));
    }
    out.push(("cp2_bad".to_string(), cp2_bad()));
    out
}
