//! Equivariant cohomology of real loci over F2, computed from
//! combinatorial moment-graph data.
//!
//! A moment graph lists fixed points and edges labeled by nonzero linear
//! forms over F2 (mod-2 reduced isotropy weights). Under the GKM-style
//! conditions, the equivariant cohomology of the underlying space is the
//! subring of vertex-tuples of polynomials in F2[x1..xn] satisfying a
//! divisibility condition per edge; under the weaker GH-style conditions
//! an extra α² condition appears on the degree-2 weight components. This
//! crate validates the conditions, computes the graded pieces exactly,
//! extracts Hilbert data, Betti numbers and ring tables, projects to
//! subgroup coefficients, and solves the associated symmetric-difference
//! subset puzzle whose classes realize degree-1 cohomology.

pub mod cli;
pub mod cohomology;
pub mod examples;
pub mod f2linalg;
pub mod f2poly;
pub mod moment_graph;
pub mod symdiff;

pub use cohomology::{CohomologyClass, GradedBasis, HilbertData};
pub use f2linalg::{F2Matrix, F2Vector};
pub use f2poly::{LinearForm, Monomial, Polynomial};
pub use moment_graph::{Mode, MomentGraph, ValidationReport};
pub use symdiff::SymDiffInstance;
