//! Command-line front end.
//!
//! Exit codes: 0 success (or a clean verdict), 1 failed validation,
//! 2 argument/parse/schema errors, 3 precondition violations (invalid
//! graph for the requested computation, Betti before stabilization,
//! projection shape mismatch), 4 internal oracle mismatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::cohomology::{self, CohomologyError};
use crate::examples::ExampleSpec;
use crate::f2linalg::F2Matrix;
use crate::moment_graph::{self, Mode, MomentGraph};
use crate::symdiff::{self, ExactOutcome, SymDiffInstance};

#[derive(Parser)]
#[command(
    name = "gkm2",
    version,
    about = "mod-2 equivariant cohomology of moment graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the mod-2 GKM or GH conditions and report violations.
    Validate {
        /// Graph JSON file ("-" for stdin)
        graph: String,
        #[arg(long, default_value = "gkm")]
        mode: String,
        #[arg(long)]
        json: bool,
    },
    /// Graded dimensions, Hilbert numerator, and optionally bases.
    Cohom {
        graph: String,
        /// Defaults to 2·rank + 2
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value = "gkm")]
        mode: String,
        /// Include per-degree bases in the output
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers via the module quotient; requires stabilized data.
    Betti {
        graph: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value = "gkm")]
        mode: String,
    },
    /// Emit a bundled example graph as JSON.
    Example {
        /// complete | hypercube | permutahedron | johnson | gh_cycle |
        /// cp2_bad | k33 | product
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Write to a file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve the symmetric-difference system of an instance file.
    Symdiff {
        /// Instance JSON file ("-" for stdin)
        instance: String,
        /// Solve the relaxed system and list solution classes
        #[arg(long)]
        relaxed: bool,
        /// Treat the input as a graph JSON and use its weights as labels
        #[arg(long)]
        from_graph: bool,
        /// Compare the relaxed solution group against degree-1 cohomology
        #[arg(long)]
        crosscheck: bool,
        #[arg(long)]
        json: bool,
    },
    /// Per-degree image dimensions under a coefficient projection.
    Project {
        graph: String,
        /// m×n F2 matrix as JSON, e.g. "[[1,1]]"
        #[arg(long)]
        map: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value = "gkm")]
        mode: String,
    },
    /// Recompute all graded dimensions with the naive kernel and compare.
    Oracle {
        graph: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value = "gkm")]
        mode: String,
    },
    /// Multiplication table of module generators modulo (x_1..x_n)·H.
    Ringtable {
        graph: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value = "gkm")]
        mode: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::new(2, format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::new(2, format!("cannot read {path}: {e}")))
    }
}

fn parse_mode(s: &str) -> Result<Mode, Failure> {
    s.parse().map_err(|e: String| Failure::new(2, e))
}

fn load_graph(path: &str) -> Result<MomentGraph, Failure> {
    let text = read_input(path)?;
    moment_graph::parse_graph(&text).map_err(|e| Failure::new(2, format!("bad graph: {e}")))
}

fn cohomology_failure(e: CohomologyError) -> Failure {
    match e {
        CohomologyError::InvalidGraph { .. } | CohomologyError::NotStabilized { .. } => {
            Failure::new(3, e.to_string())
        }
        CohomologyError::ProjectionShape { .. } => Failure::new(3, e.to_string()),
        other => Failure::new(2, other.to_string()),
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Validate { graph, mode, json } => cmd_validate(&graph, &mode, json),
        Command::Cohom {
            graph,
            max_degree,
            mode,
            basis,
            json,
        } => cmd_cohom(&graph, max_degree, &mode, basis, json),
        Command::Betti {
            graph,
            max_degree,
            mode,
        } => cmd_betti(&graph, max_degree, &mode),
        Command::Example {
            name,
            n,
            k,
            d,
            output,
        } => cmd_example(&name, n, k, d, output),
        Command::Symdiff {
            instance,
            relaxed,
            from_graph,
            crosscheck,
            json,
        } => cmd_symdiff(&instance, relaxed, from_graph, crosscheck, json),
        Command::Project {
            graph,
            map,
            max_degree,
            mode,
        } => cmd_project(&graph, &map, max_degree, &mode),
        Command::Oracle {
            graph,
            max_degree,
            mode,
        } => cmd_oracle(&graph, max_degree, &mode),
        Command::Ringtable {
            graph,
            max_degree,
            mode,
        } => cmd_ringtable(&graph, max_degree, &mode),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn cmd_validate(graph: &str, mode: &str, json: bool) -> CmdResult {
    let mode = parse_mode(mode)?;
    let g = load_graph(graph)?;
    let report = moment_graph::validate(&g, mode);
    if json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        println!("mode: {}", report.mode);
        println!("valid: {}", report.valid);
        if !report.violations.is_empty() {
            println!("violations:");
            for v in &report.violations {
                println!("  {}: {}", v.vertex, v.description);
            }
        }
    }
    Ok(if report.valid { 0 } else { 1 })
}

#[derive(Serialize)]
struct DegreeOut {
    d: usize,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<BTreeMap<String, String>>>,
}

#[derive(Serialize)]
struct CohomOut {
    degrees: Vec<DegreeOut>,
    numerator: Vec<i64>,
    stabilized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    betti: Option<Vec<usize>>,
}

fn cmd_cohom(
    graph: &str,
    max_degree: Option<usize>,
    mode: &str,
    basis: bool,
    json: bool,
) -> CmdResult {
    let mode = parse_mode(mode)?;
    let g = load_graph(graph)?;
    let max_degree = max_degree.unwrap_or_else(|| cohomology::default_max_degree(&g));
    let data = cohomology::hilbert(&g, max_degree, mode).map_err(cohomology_failure)?;
    let bases: Option<Vec<Vec<BTreeMap<String, String>>>> = if basis {
        let mut all = Vec::new();
        for d in 0..=max_degree {
            let gb = cohomology::graded_basis(&g, d, mode).map_err(cohomology_failure)?;
            all.push(
                gb.classes
                    .iter()
                    .map(|c| {
                        c.assignment()
                            .iter()
                            .map(|(v, p)| (v.clone(), p.to_string()))
                            .collect()
                    })
                    .collect(),
            );
        }
        Some(all)
    } else {
        None
    };
    let betti = if data.stabilized {
        Some(cohomology::ordinary_betti(&g, max_degree, mode).map_err(cohomology_failure)?)
    } else {
        None
    };
    if json {
        let out = CohomOut {
            degrees: (0..=max_degree)
                .map(|d| DegreeOut {
                    d,
                    dim: data.dims[d],
                    basis: bases.as_ref().map(|b| b[d].clone()),
                })
                .collect(),
            numerator: data.numerator.clone(),
            stabilized: data.stabilized,
            betti,
        };
        println!(
            "{}",
            serde_json::to_string(&out).expect("result serializes")
        );
    } else {
        println!("rank: {}", g.rank());
        println!("mode: {mode}");
        println!("degree  dim");
        for (d, dim) in data.dims.iter().enumerate() {
            println!("{d:<7} {dim}");
        }
        println!("numerator: {:?}", data.numerator);
        println!("stabilized: {}", data.stabilized);
        if let Some(b) = &betti {
            println!("betti: {b:?}");
        }
        if let Some(bases) = &bases {
            for (d, classes) in bases.iter().enumerate() {
                println!("basis degree {d}:");
                for (k, class) in classes.iter().enumerate() {
                    let parts: Vec<String> =
                        class.iter().map(|(v, p)| format!("{v} -> {p}")).collect();
                    println!("  [{k}] {}", parts.join("; "));
                }
            }
        }
    }
    Ok(0)
}

fn cmd_betti(graph: &str, max_degree: Option<usize>, mode: &str) -> CmdResult {
    let mode = parse_mode(mode)?;
    let g = load_graph(graph)?;
    let max_degree = max_degree.unwrap_or_else(|| cohomology::default_max_degree(&g));
    match cohomology::ordinary_betti(&g, max_degree, mode) {
        Ok(betti) => {
            println!("betti: {betti:?}");
            Ok(0)
        }
        Err(CohomologyError::NotStabilized {
            max_degree,
            dims,
            numerator,
        }) => {
            println!(
                "not stabilized by degree {max_degree}: dims = {dims:?}, numerator = {numerator:?}"
            );
            Err(Failure::new(
                3,
                "Hilbert data not stabilized; raise --max-degree",
            ))
        }
        Err(e) => Err(cohomology_failure(e)),
    }
}

fn cmd_example(
    name: &str,
    n: Option<usize>,
    k: Option<usize>,
    d: Option<usize>,
    output: Option<PathBuf>,
) -> CmdResult {
    let spec = ExampleSpec {
        name: name.to_string(),
        n,
        k,
        d,
    };
    let g = spec
        .generate()
        .map_err(|e| Failure::new(2, e.to_string()))?;
    let json = moment_graph::serialize_graph(&g);
    match output {
        Some(path) => {
            std::fs::write(&path, format!("{json}\n"))
                .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display())))?;
        }
        None => println!("{json}"),
    }
    Ok(0)
}

#[derive(Serialize)]
struct ExactOut {
    mode: &'static str,
    consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    assignment: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    freedom_log2: Option<usize>,
}

#[derive(Serialize)]
struct ClassOut {
    trivial: bool,
    solves_exact: bool,
    assignment: BTreeMap<String, Vec<usize>>,
    lambdas: Vec<u8>,
}

#[derive(Serialize)]
struct RelaxedOut {
    mode: &'static str,
    kernel_dim: usize,
    trivial_log2: usize,
    extra_component_freedom_log2: usize,
    class_count_log2: usize,
    nontrivial_classes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<ClassOut>>,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct CrosscheckOut {
    universe: usize,
    dim_h1: usize,
    relaxed_kernel_dim: usize,
    class_count_log2: usize,
    sizes_match: bool,
    class_identity_holds: bool,
}

fn assignment_map(inst: &SymDiffInstance, assignment: &[u64]) -> BTreeMap<String, Vec<usize>> {
    inst.vertices()
        .iter()
        .zip(assignment)
        .map(|(v, &mask)| (v.clone(), symdiff::subset_elements(mask, inst.universe())))
        .collect()
}

fn cmd_symdiff(
    instance: &str,
    relaxed: bool,
    from_graph: bool,
    crosscheck: bool,
    json: bool,
) -> CmdResult {
    let text = read_input(instance)?;
    let inst = if from_graph {
        let g = moment_graph::parse_graph(&text)
            .map_err(|e| Failure::new(2, format!("bad graph: {e}")))?;
        symdiff::instance_from_graph(&g).map_err(|e| Failure::new(2, format!("bad labels: {e}")))?
    } else {
        symdiff::parse_instance(&text).map_err(|e| Failure::new(2, format!("bad instance: {e}")))?
    };

    if crosscheck {
        let report = symdiff::crosscheck_h1(&inst).map_err(|e| Failure::new(3, e.to_string()))?;
        if json {
            let out = CrosscheckOut {
                universe: report.universe,
                dim_h1: report.dim_h1,
                relaxed_kernel_dim: report.relaxed_kernel_dim,
                class_count_log2: report.class_count_log2,
                sizes_match: report.sizes_match,
                class_identity_holds: report.class_identity_holds,
            };
            println!(
                "{}",
                serde_json::to_string(&out).expect("report serializes")
            );
        } else {
            println!("dim H^1: {}", report.dim_h1);
            println!("relaxed solution group: 2^{}", report.relaxed_kernel_dim);
            println!("classes: 2^{}", report.class_count_log2);
            println!("sizes match: {}", report.sizes_match);
            println!(
                "log2(classes) = dim H^1 - n: {}",
                report.class_identity_holds
            );
        }
        return Ok(if report.sizes_match && report.class_identity_holds {
            0
        } else {
            1
        });
    }

    if relaxed {
        let sol = symdiff::solve_relaxed(&inst);
        let nontrivial = sol
            .classes
            .as_ref()
            .map(|cs| cs.iter().filter(|c| !c.trivial).count());
        if json {
            let out = RelaxedOut {
                mode: "relaxed",
                kernel_dim: sol.kernel_dim,
                trivial_log2: sol.trivial_log2,
                extra_component_freedom_log2: sol.extra_component_freedom_log2,
                class_count_log2: sol.class_count_log2,
                nontrivial_classes: nontrivial,
                classes: sol.classes.as_ref().map(|cs| {
                    cs.iter()
                        .map(|c| ClassOut {
                            trivial: c.trivial,
                            solves_exact: c.solves_exact,
                            assignment: assignment_map(&inst, &c.solution.assignment),
                            lambdas: c
                                .solution
                                .lambdas
                                .as_ref()
                                .unwrap()
                                .iter()
                                .map(|&b| b as u8)
                                .collect(),
                        })
                        .collect()
                }),
                notes: sol.notes.clone(),
            };
            println!(
                "{}",
                serde_json::to_string(&out).expect("result serializes")
            );
        } else {
            println!("relaxed solution group: 2^{}", sol.kernel_dim);
            println!("trivial subgroup: 2^{}", sol.trivial_log2);
            if sol.extra_component_freedom_log2 > 0 {
                println!(
                    "extra per-component freedom: 2^{}",
                    sol.extra_component_freedom_log2
                );
            }
            println!(
                "classes: 2^{}{}",
                sol.class_count_log2,
                nontrivial
                    .map(|n| format!(" ({n} nontrivial)"))
                    .unwrap_or_default()
            );
            if let Some(classes) = &sol.classes {
                for (k, c) in classes.iter().enumerate() {
                    if c.trivial {
                        println!("class {k}: trivial");
                        continue;
                    }
                    let parts: Vec<String> = inst
                        .vertices()
                        .iter()
                        .zip(&c.solution.assignment)
                        .map(|(v, &m)| {
                            format!("{v}: {}", symdiff::subset_string(m, inst.universe()))
                        })
                        .collect();
                    let tag = if c.solves_exact {
                        " [solves the exact system]"
                    } else {
                        ""
                    };
                    println!("class {k}: {}{tag}", parts.join("; "));
                }
            }
            for note in &sol.notes {
                println!("note: {note}");
            }
        }
        return Ok(0);
    }

    match symdiff::solve_exact(&inst) {
        ExactOutcome::Consistent {
            solution,
            components,
            freedom_log2,
        } => {
            if json {
                let out = ExactOut {
                    mode: "exact",
                    consistent: true,
                    assignment: Some(assignment_map(&inst, &solution.assignment)),
                    components: Some(components),
                    freedom_log2: Some(freedom_log2),
                };
                println!(
                    "{}",
                    serde_json::to_string(&out).expect("result serializes")
                );
            } else {
                println!("exact system: consistent");
                println!("assignment (least vertex of each component pinned to {{}}):");
                for (v, &m) in inst.vertices().iter().zip(&solution.assignment) {
                    println!("  {v}: {}", symdiff::subset_string(m, inst.universe()));
                }
                println!("components: {components}");
                println!("freedom: 2^{freedom_log2} constant shifts");
            }
        }
        ExactOutcome::Inconsistent => {
            if json {
                let out = ExactOut {
                    mode: "exact",
                    consistent: false,
                    assignment: None,
                    components: None,
                    freedom_log2: None,
                };
                println!(
                    "{}",
                    serde_json::to_string(&out).expect("result serializes")
                );
            } else {
                println!("exact system: inconsistent");
            }
        }
    }
    Ok(0)
}

fn cmd_project(graph: &str, map: &str, max_degree: Option<usize>, mode: &str) -> CmdResult {
    let mode = parse_mode(mode)?;
    let g = load_graph(graph)?;
    let rows: Vec<Vec<u8>> = serde_json::from_str(map)
        .map_err(|e| Failure::new(2, format!("bad projection matrix: {e}")))?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Failure::new(
            2,
            "projection matrix must be rectangular and nonempty",
        ));
    }
    let bool_rows: Vec<Vec<bool>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x != 0).collect())
        .collect();
    let pi = F2Matrix::from_rows(&bool_rows);
    let max_degree = max_degree.unwrap_or_else(|| cohomology::default_max_degree(&g));
    let proj =
        cohomology::restrict_scalars(&g, &pi, max_degree, mode).map_err(cohomology_failure)?;
    println!("target rank: {}", proj.target_rank);
    println!("degree  source  image");
    for d in 0..=max_degree {
        println!("{d:<7} {:<7} {}", proj.source_dims[d], proj.image_dims[d]);
    }
    println!("image numerator: {:?}", proj.hilbert.numerator);
    println!("image stabilized: {}", proj.hilbert.stabilized);
    Ok(0)
}

fn cmd_oracle(graph: &str, max_degree: Option<usize>, mode: &str) -> CmdResult {
    let mode = parse_mode(mode)?;
    let g = load_graph(graph)?;
    let max_degree = max_degree.unwrap_or_else(|| cohomology::default_max_degree(&g));
    let mut mismatches = 0;
    for d in 0..=max_degree {
        let packed = cohomology::graded_dimension(&g, d, mode).map_err(cohomology_failure)?;
        let naive = cohomology::graded_dimension_naive(&g, d, mode).map_err(cohomology_failure)?;
        let verdict = if packed == naive { "ok" } else { "MISMATCH" };
        println!("degree {d}: packed = {packed}, naive = {naive} {verdict}");
        if packed != naive {
            mismatches += 1;
        }
    }
    if mismatches > 0 {
        Err(Failure::new(
            4,
            format!("{mismatches} degree(s) disagree between kernels"),
        ))
    } else {
        Ok(0)
    }
}

fn cmd_ringtable(graph: &str, max_degree: Option<usize>, mode: &str) -> CmdResult {
    let mode = parse_mode(mode)?;
    let g = load_graph(graph)?;
    let max_degree = max_degree.unwrap_or_else(|| cohomology::default_max_degree(&g));
    let table =
        cohomology::ordinary_ring_table(&g, max_degree, mode).map_err(cohomology_failure)?;
    println!("generators:");
    for gen in &table.generators {
        println!("  {} (degree {})", gen.name, gen.degree);
    }
    println!("products modulo (x_1..x_n)·H:");
    for entry in &table.products {
        let (i, j, _) = entry;
        println!(
            "  {} * {} = {}",
            table.generators[*i].name,
            table.generators[*j].name,
            table.expansion_string(entry)
        );
    }
    Ok(0)
}
