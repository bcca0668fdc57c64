//! Exact counting toolkit for cuts, cocircuits, and convex two-colourings.
//!
//! The crate has four pieces:
//!
//! * [`graph`] — simple undirected graphs, cuts, the cocircuit predicate,
//!   bridges, and the edge-subdivision (stretch) transformation.
//! * [`oracles`] — brute-force exact counters for monotone 2-SAT, sized
//!   cuts, cocircuits, cocircuit spectra, and convex two-colourings.
//!   These are intentionally exponential and serve as ground truth.
//! * [`reductions`] — the constructive counting reductions linking the
//!   five problems, each with an explicit multiplier certificate.
//! * [`linalg`] — exact rational linear algebra for recovering a
//!   cocircuit spectrum from the stretch-count family.
//!
//! All counters return arbitrary-precision integers and every operation is
//! a pure function of immutable inputs, so concurrent use is safe.

pub mod graph;
pub mod io;
pub mod linalg;
pub mod oracles;
pub mod reductions;

pub use graph::{Cut, Edge, EdgeSet, Graph, GraphError, Stretched, Vertex, VertexSet};
pub use io::{parse_formula, parse_graph, serialize_formula, serialize_graph, ParseError};
pub use oracles::{Count, MonotoneFormula, Spectrum};
pub use reductions::{
    compose_chain, convex_from_cocircuits, maxcut_to_cocircuits, per_clause_multiplier,
    recover_spectrum, sat_to_maxcut, sat_to_maxcut_stripping_unused, ChainReport, ConstantTerm,
    MaxCutInstance, Problem, ReductionCertificate, ReductionError, RequiredSizeInstance,
    VertexRole,
};
