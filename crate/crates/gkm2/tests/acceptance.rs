//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `--nocapture` to see them all).

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::time::Instant;

use gkm2::cohomology::{
    graded_dimension, graded_dimension_naive, hilbert, ordinary_betti, ordinary_ring_table,
    products_in_span, restrict_scalars,
};
use gkm2::examples;
use gkm2::f2linalg::{naive, F2Matrix, F2Vector};
use gkm2::moment_graph::{validate, validate_mod2_gkm, Mode, MomentGraph};
use gkm2::symdiff::{
    self, instance_from_graph, normalize_assignment, solve_exact, solve_relaxed, ExactOutcome,
};

fn pass(criterion: &str, label: &str) {
    println!("[acceptance] criterion {criterion}: PASS - {label}");
}

fn fail_line(criterion: &str, label: &str) {
    println!("[acceptance] criterion {criterion}: FAIL - {label}");
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The mode in which a bundled graph is valid, preferring GKM.
fn valid_mode(g: &MomentGraph) -> Option<Mode> {
    if validate(g, Mode::Gkm).valid {
        Some(Mode::Gkm)
    } else if validate(g, Mode::Gh).valid {
        Some(Mode::Gh)
    } else {
        None
    }
}

fn bin_path() -> &'static str {
    env!("CARGO_BIN_EXE_gkm2")
}

fn mask(elems: &[usize]) -> u64 {
    elems.iter().map(|k| 1u64 << (k - 1)).sum()
}

#[test]
fn criterion_01_rp1_table() {
    let start = Instant::now();
    let k2 = examples::hypercube(1).unwrap();
    let data = hilbert(&k2, 5, Mode::Gkm).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(data.dims, vec![1, 2, 2, 2, 2, 2]);
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(
        "1",
        "two-point rank-1 graph has dims (1,2,2,2,2,2) through degree 5",
    );
}

#[test]
fn criterion_02_gh_cycle_series() {
    for d in 3..=5usize {
        let g = examples::gh_cycle(d).unwrap();
        let data = hilbert(&g, 5, Mode::Gh).unwrap();
        let expected = vec![1, d - 1, d, d, d, d];
        assert_eq!(data.dims, expected, "gh_cycle({d})");
    }
    pass(
        "2",
        "gh_cycle(3..5) dims are (1, d-1, d, d, ...) through degree 5",
    );
}

/// Multiplication by a variable preserves the pairwise and α² conditions
/// in positive degrees, so the vertex-tuple space fails to be a module
/// only at the constants-to-degree-1 step, and only over a degree-2
/// weight component of odd size (the component sum of x·1 is an odd
/// multiple of x there). GKM-valid graphs have no degree-2 components.
fn is_module(g: &MomentGraph, mode: Mode) -> bool {
    if mode == Mode::Gkm {
        return true;
    }
    g.distinct_weights().into_iter().all(|alpha| {
        gkm2::moment_graph::alpha_components(g, &alpha)
            .unwrap()
            .iter()
            .all(|c| c.local_degree == 1 || c.vertices.len() % 2 == 0)
    })
}

#[test]
fn criterion_03_free_module_law() {
    let mut checked = 0;
    for (name, g) in examples::bundled() {
        let Some(mode) = valid_mode(&g) else { continue };
        assert!(g.rank() <= 4, "{name} exceeds the bundled rank bound");
        let max_degree = 2 * g.rank() + 2;
        let data = hilbert(&g, max_degree, mode).unwrap();
        assert!(
            data.numerator.iter().all(|&c| c >= 0),
            "{name}: negative numerator coefficient: {:?}",
            data.numerator
        );
        assert!(data.stabilized, "{name}: not stabilized by {max_degree}");
        // b_j = the stabilized numerator coefficients
        let b: Vec<i64> = {
            let mut v = data.numerator.clone();
            while v.len() > 1 && *v.last().unwrap() == 0 {
                v.pop();
            }
            v
        };
        // dim H^d = Σ_j b_j · C(n-1+d-j, n-1), exactly, for all computed d
        let n = g.rank() as i64;
        for d in 0..=max_degree {
            let expected: i64 = b
                .iter()
                .enumerate()
                .map(|(j, &bj)| bj * binomial(n - 1 + d as i64 - j as i64, n - 1))
                .sum();
            assert_eq!(
                data.dims[d] as i64, expected,
                "{name}: free-module dimension law fails at degree {d}"
            );
        }
        // free-module consistency: where the space is a module, the
        // quotient Betti numbers agree with the numerator
        if is_module(&g, mode) {
            let betti = ordinary_betti(&g, max_degree, mode).unwrap();
            let betti_i64: Vec<i64> = betti.iter().map(|&x| x as i64).collect();
            assert_eq!(betti_i64, b, "{name}: quotient Betti numbers vs numerator");
        }
        checked += 1;
    }
    assert!(
        checked >= 12,
        "expected at least 12 valid bundled examples, got {checked}"
    );
    pass(
        "3",
        "free-module law holds on every bundled valid example at D = 2n+2",
    );
}

#[test]
fn criterion_04_negative_example() {
    let bad = examples::cp2_bad();
    let report = validate_mod2_gkm(&bad);
    assert!(!report.valid);
    assert!(
        report
            .violations
            .iter()
            .any(|v| v.description.contains("zero weight")),
        "zero-weight violation missing: {:?}",
        report.violations
    );
    assert!(
        report
            .violations
            .iter()
            .any(|v| v.vertex == "p2" && v.description.contains("repeated")),
        "repeated-weight violation at p2 missing: {:?}",
        report.violations
    );

    // the CLI agrees, with exit code 1
    let mut file = tempfile::NamedTempFile::new().unwrap();
    let emitted = Command::new(bin_path())
        .args(["example", "cp2_bad"])
        .output()
        .unwrap();
    assert!(emitted.status.success());
    file.write_all(&emitted.stdout).unwrap();
    let out = Command::new(bin_path())
        .args(["validate", file.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("zero weight"));
    pass(
        "4",
        "degenerate triangle fails validation with zero and repeated weights, exit 1",
    );
}

#[test]
fn criterion_05a_complete_graph_golden() {
    for n in 3..=5usize {
        let inst = instance_from_graph(&examples::complete_graph(n).unwrap()).unwrap();
        let expected = {
            let raw: Vec<u64> = (1..=n).map(|i| mask(&[i])).collect();
            normalize_assignment(inst.vertices(), &raw)
        };
        // the relaxed system has exactly one nontrivial class, S_i = {i}
        let relaxed = solve_relaxed(&inst);
        let classes = relaxed.classes.expect("class group is small");
        let nontrivial: Vec<_> = classes.iter().filter(|c| !c.trivial).collect();
        assert_eq!(nontrivial.len(), 1, "complete({n})");
        assert_eq!(nontrivial[0].solution.assignment, expected, "complete({n})");
        // and it is also the unique exact solution up to equivalence
        match solve_exact(&inst) {
            ExactOutcome::Consistent {
                solution,
                components,
                ..
            } => {
                assert_eq!(components, 1);
                assert_eq!(solution.assignment, expected, "complete({n}) exact");
            }
            ExactOutcome::Inconsistent => panic!("complete({n}) must be consistent"),
        }
    }
    pass(
        "5a",
        "complete(3..5): one nontrivial class with representative S_i = {i}",
    );
}

#[test]
fn criterion_05b_permutahedron_golden() {
    let inst = instance_from_graph(&examples::permutahedron(3).unwrap()).unwrap();
    let relaxed = solve_relaxed(&inst);
    let classes = relaxed.classes.expect("class group is small");
    let nontrivial: Vec<_> = classes.iter().filter(|c| !c.trivial).collect();
    assert_eq!(nontrivial.len(), 3);
    let mut expected_reps = BTreeSet::new();
    for s0 in 1..=3usize {
        let raw: Vec<u64> = inst
            .vertices()
            .iter()
            .map(|p| {
                let image = p.chars().nth(s0 - 1).unwrap().to_digit(10).unwrap() as usize;
                mask(&[image])
            })
            .collect();
        expected_reps.insert(normalize_assignment(inst.vertices(), &raw));
    }
    let found: BTreeSet<Vec<u64>> = nontrivial
        .iter()
        .map(|c| c.solution.assignment.clone())
        .collect();
    assert_eq!(
        found, expected_reps,
        "classes are exactly the orbit assignments σ(S_0)"
    );
    pass(
        "5b",
        "permutahedron(3): three nontrivial classes of the form S_σ = σ(S_0)",
    );
}

#[test]
fn criterion_05c_k33_golden() {
    let inst = instance_from_graph(&examples::k33()).unwrap();
    let relaxed = solve_relaxed(&inst);
    let classes = relaxed.classes.expect("class group is small");
    let nontrivial: Vec<_> = classes.iter().filter(|c| !c.trivial).collect();
    let expected = {
        let raw: Vec<u64> = vec![
            mask(&[1]),
            mask(&[2]),
            mask(&[3]),
            mask(&[1]),
            mask(&[2]),
            mask(&[3]),
        ];
        normalize_assignment(inst.vertices(), &raw)
    };
    let stated_rep_present = nontrivial.iter().any(|c| c.solution.assignment == expected);
    if nontrivial.len() == 1 && stated_rep_present {
        pass("5c", "K33: one nontrivial class, S_Ai = S_Bi = {i}");
    } else {
        fail_line(
            "5c",
            &format!(
                "K33: stated count is 1 nontrivial class, computed {} \
                 (stated representative S_Ai=S_Bi={{i}} present: {}); the instance is \
                 label-isomorphic to the permutahedron(3) instance, whose class group \
                 is (Z/2)^2, so three nontrivial classes is the exhaustively verified count",
                nontrivial.len(),
                stated_rep_present
            ),
        );
    }
    assert!(stated_rep_present, "stated representative missing");
    assert_eq!(
        nontrivial.len(),
        1,
        "stated golden count (1 nontrivial class) disagrees with the computed class group"
    );
}

#[test]
fn criterion_06_h1_identification() {
    for (name, g) in [
        ("complete(3)", examples::complete_graph(3).unwrap()),
        ("permutahedron(3)", examples::permutahedron(3).unwrap()),
        ("hypercube(2)", examples::hypercube(2).unwrap()),
    ] {
        let inst = instance_from_graph(&g).unwrap();
        let report = symdiff::crosscheck_h1(&inst).unwrap();
        assert!(report.sizes_match, "{name}: 2^dim H^1 != |solution group|");
        assert!(
            report.class_identity_holds,
            "{name}: log2(classes) = {} but dim H^1 - n = {}",
            report.class_count_log2,
            report.dim_h1 - report.universe
        );
        assert_eq!(
            report.class_count_log2 + report.universe,
            report.dim_h1,
            "{name}"
        );
    }
    pass(
        "6",
        "log2(class count) = dim H^1 - n on complete(3), permutahedron(3), hypercube(2)",
    );
}

#[test]
fn criterion_07_oracle_equivalence() {
    // bundled graphs, both elimination paths
    let mut graph_checks = 0;
    for (name, g) in examples::bundled() {
        if g.num_vertices() > 24 {
            continue;
        }
        let Some(mode) = valid_mode(&g) else { continue };
        for d in 0..=3 {
            assert_eq!(
                graded_dimension(&g, d, mode).unwrap(),
                graded_dimension_naive(&g, d, mode).unwrap(),
                "{name} degree {d}"
            );
            graph_checks += 1;
        }
    }
    assert!(graph_checks >= 48);

    // 200 random matrices up to 64x64
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6d32);
    for _ in 0..200 {
        let rows = rng.gen_range(1..=64);
        let cols = rng.gen_range(1..=64);
        let density = *[0.15, 0.35, 0.5].choose(&mut rng).unwrap();
        let raw: Vec<Vec<bool>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_bool(density)).collect())
            .collect();
        let packed = F2Matrix::from_rows(&raw);
        assert_eq!(packed.rank(), naive::rank(&raw));
        let kp = packed.kernel_basis();
        let kn = naive::kernel_basis(&raw, cols);
        assert_eq!(kp.len(), kn.len());
        for (a, b) in kp.iter().zip(&kn) {
            assert_eq!(&a.to_bools(), b);
        }
        let b: Vec<bool> = (0..rows).map(|_| rng.gen_bool(0.5)).collect();
        let sp = packed.solve(&F2Vector::from_bools(&b));
        let sn = naive::solve(&raw, &b);
        assert_eq!(sp.is_some(), sn.is_some());
        if let (Some(sp), Some(sn)) = (sp, sn) {
            assert_eq!(sp.to_bools(), sn);
        }
    }
    pass(
        "7",
        "packed and naive kernels agree on all bundled graphs and 200 random matrices",
    );
}

#[test]
fn criterion_08_betti_extraction() {
    let p3 = examples::permutahedron(3).unwrap();
    let betti = ordinary_betti(&p3, 8, Mode::Gkm).unwrap();
    assert_eq!(betti[1], 2, "permutahedron(3) b_1");

    let k2 = examples::hypercube(1).unwrap();
    assert_eq!(ordinary_betti(&k2, 4, Mode::Gkm).unwrap(), vec![1, 1]);

    for n in 3..=4usize {
        let g = examples::complete_graph(n).unwrap();
        let betti = ordinary_betti(&g, 2 * n + 2, Mode::Gkm).unwrap();
        assert_eq!(betti, vec![1; n], "complete({n})");
    }
    pass(
        "8",
        "betti: permutahedron(3) b_1 = 2, two-point graph (1,1), complete(n) all-ones",
    );
}

#[test]
fn criterion_09_projection_consistency() {
    // identity projection of the rank-1 two-point graph reproduces the
    // criterion-1 table
    let k2 = examples::hypercube(1).unwrap();
    let id = F2Matrix::identity(1);
    let proj = restrict_scalars(&k2, &id, 5, Mode::Gkm).unwrap();
    assert_eq!(proj.image_dims, vec![1, 2, 2, 2, 2, 2]);

    // diagonal projections of hypercube(2) and hypercube(3)
    for n in 2..=3usize {
        let g = examples::hypercube(n).unwrap();
        let mut pi = F2Matrix::zeros(1, n);
        for c in 0..n {
            pi.set(0, c, true);
        }
        let d = 2 * n + 2;
        let first = restrict_scalars(&g, &pi, d, Mode::Gkm).unwrap();
        for k in 0..=d {
            assert!(
                first.image_dims[k] <= first.source_dims[k],
                "hypercube({n}) degree {k}: image exceeds source"
            );
        }
        // reproducible: recompute and compare everything, including bases
        let second = restrict_scalars(&g, &pi, d, Mode::Gkm).unwrap();
        assert_eq!(first.image_dims, second.image_dims);
        let render = |p: &gkm2::cohomology::Projection| -> String {
            let mut s = String::new();
            for basis in &p.bases {
                for class in &basis.classes {
                    for (v, poly) in class {
                        s.push_str(&format!("{}:{v}:{poly};", basis.degree));
                    }
                }
            }
            s
        };
        assert_eq!(render(&first), render(&second));
    }

    // byte-identical across separate process runs
    let mut file = tempfile::NamedTempFile::new().unwrap();
    let emitted = Command::new(bin_path())
        .args(["example", "hypercube", "--n", "2"])
        .output()
        .unwrap();
    file.write_all(&emitted.stdout).unwrap();
    let run = || {
        Command::new(bin_path())
            .args([
                "project",
                file.path().to_str().unwrap(),
                "--map",
                "[[1,1]]",
                "--max-degree",
                "6",
            ])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
    pass(
        "9",
        "projections: identity is lossless, diagonal images monotone and reproducible",
    );
}

#[test]
fn criterion_10_ring_structure() {
    // complete(3) carries the truncated polynomial relations
    let c3 = examples::complete_graph(3).unwrap();
    let table = ordinary_ring_table(&c3, 6, Mode::Gkm).unwrap();
    let gen_index = |name: &str| {
        table
            .generators
            .iter()
            .position(|g| g.name == name)
            .unwrap_or_else(|| panic!("generator {name} missing"))
    };
    let (one, g1, g2) = (gen_index("1"), gen_index("g1"), gen_index("g2"));
    assert_eq!(table.generators[g1].degree, 1);
    assert_eq!(table.generators[g2].degree, 2);
    let find = |i: usize, j: usize| {
        &table
            .products
            .iter()
            .find(|(a, b, _)| (*a, *b) == (i.min(j), i.max(j)))
            .unwrap()
            .2
    };
    assert_eq!(find(g1, g1), &vec![g2], "g1^2 = g2");
    assert_eq!(find(g1, g2), &Vec::<usize>::new(), "g1*g2 = 0");
    assert_eq!(find(one, g1), &vec![g1], "1*g1 = g1");

    // closure on every bundled valid example through D = 2n
    for (name, g) in examples::bundled() {
        let Some(mode) = valid_mode(&g) else { continue };
        let top = 2 * g.rank();
        for d1 in 0..=top {
            for d2 in d1..=(top - d1) {
                assert!(
                    products_in_span(&g, d1, d2, mode).unwrap(),
                    "{name}: products of degrees {d1}x{d2} leave the computed span"
                );
            }
        }
    }
    pass(
        "10",
        "ring table of complete(3) is the truncated polynomial ring; closure holds",
    );
}
