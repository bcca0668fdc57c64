//! Constructive counting reductions.
//!
//! Each construction returns the new instance together with a
//! [`ReductionCertificate`] recording the exact arithmetic relation between
//! the two solution counts and a role for every constructed vertex. The
//! multipliers are claims; the test suites check them against the
//! brute-force oracles.
//!
//! The chain runs
//! monotone 2-SAT → cuts of a required size → cocircuits of a required size
//! → cocircuits → convex two-colourings,
//! and [`compose_chain`] strings the constructions together into one report.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::linalg::{build_stretch_system, gauss_solve_exact, Rational};
use crate::oracles::{self, Count, MonotoneFormula, Spectrum};

/// The five counting problems the reductions move between.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    MonotoneSat,
    CutsOfSize,
    SizedCocircuits,
    Cocircuits,
    ConvexTwoColourings,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::MonotoneSat => "monotone-2sat",
            Problem::CutsOfSize => "size-k-cuts",
            Problem::SizedCocircuits => "sized-cocircuits",
            Problem::Cocircuits => "cocircuits",
            Problem::ConvexTwoColourings => "convex-two-colourings",
        })
    }
}

/// What a vertex of a constructed instance stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexRole {
    /// The shared vertex `x` every clause cycle passes through, and the
    /// first of the two universal vertices in the blow-up construction.
    Apex,
    /// The second universal vertex `x'` of the blow-up construction.
    ApexPrime,
    /// One of the degree-2 padding vertices of the blow-up, 1-based.
    Padding(usize),
    /// The vertex standing for a formula variable, 1-based.
    Variable(usize),
    /// Interior vertex of a clause cycle: `clause` is 1-based, `slot` runs
    /// 1..=6 in cycle order.
    ClauseGadget { clause: usize, slot: usize },
    /// A vertex carried over unchanged from the input graph.
    Original(usize),
    /// Interior vertex of the path that replaced an edge when stretching;
    /// `edge_index` is the edge's lexicographic index, `position` counts
    /// from the smaller original endpoint starting at 1.
    StretchInternal { edge_index: usize, position: usize },
}

/// Exact bookkeeping attached to a constructed instance: which problems it
/// connects, the size parameters involved, the claimed count relation
/// `source_count = (target_count - additive) / multiplier`, and a role for
/// every vertex of the constructed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub source: Problem,
    pub target: Problem,
    /// Size parameter of the source instance, when that problem has one.
    pub source_size: Option<usize>,
    /// Size parameter of the constructed instance, when applicable.
    pub target_size: Option<usize>,
    /// Path length used when the construction is an edge subdivision.
    pub stretch_factor: Option<usize>,
    pub multiplier: Count,
    pub additive: Count,
    /// Role of each constructed vertex, indexed by vertex id.
    pub labels: Vec<VertexRole>,
}

/// Output of [`sat_to_maxcut`]: a graph whose cuts of size `k` count the
/// satisfying assignments, up to the certificate's multiplier.
#[derive(Clone, Debug)]
pub struct MaxCutInstance {
    pub graph: Graph,
    pub k: usize,
    /// The nine edges of each clause's cycle, in cycle order per clause.
    pub clause_cycles: Vec<[Edge; 9]>,
    pub certificate: ReductionCertificate,
}

/// Output of [`maxcut_to_cocircuits`]: a graph whose cocircuits of size `k`
/// count the source graph's cuts of the source size.
#[derive(Clone, Debug)]
pub struct RequiredSizeInstance {
    pub graph: Graph,
    pub k: usize,
    pub certificate: ReductionCertificate,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("formula has no clauses; the construction needs at least one")]
    NoClauses,
    #[error("variables {0:?} appear in no clause; the constructed graph would be disconnected")]
    UnusedVariables(Vec<usize>),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph must have at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("cut size {k} out of range 1..={m}")]
    SizeOutOfRange { k: usize, m: usize },
    #[error("expected {m} stretched counts, got {found}")]
    WrongCountLength { m: usize, found: usize },
    #[error("bridge count {b} exceeds edge count {m}")]
    BridgeCountTooLarge { b: usize, m: usize },
    #[error(
        "recovered count for size {k} is {value}, not a non-negative integer; \
         wrong constant-term mode or corrupted counts"
    )]
    SpectrumInconsistent { k: usize, value: String },
    #[error("chain validation failed: {0}")]
    ChainValidation(String),
}

fn build_clause_cycles(f: &MonotoneFormula) -> (Graph, Vec<[Edge; 9]>) {
    let n = f.num_vars();
    let total = 1 + n + 6 * f.clauses().len();
    let mut cycles = Vec::with_capacity(f.clauses().len());
    let mut edges = Vec::with_capacity(9 * f.clauses().len());
    for (j, &(u, v)) in f.clauses().iter().enumerate() {
        // variable i sits at vertex i; clause gadget vertices follow the
        // variables in clause order, six per clause
        let c = |t: usize| n + 6 * j + t;
        let walk = [
            (0, c(1)),
            (c(1), c(2)),
            (c(2), u),
            (u, c(3)),
            (c(3), c(4)),
            (c(4), v),
            (v, c(5)),
            (c(5), c(6)),
            (c(6), 0),
        ];
        edges.extend_from_slice(&walk);
        cycles.push(walk.map(|(a, b)| Edge::new(a, b).expect("cycle edges are loop-free")));
    }
    let graph = Graph::new(total, edges).expect("clause cycles are vertex-disjoint inside");
    (graph, cycles)
}

/// Cuts of the single-clause instance per satisfying assignment of its
/// formula, measured once by brute force and cached.
///
/// Each satisfied clause admits a fixed number of ways to route its cycle
/// across the cut; this constant is that number. It is measured rather than
/// assumed, and [`sat_to_maxcut`] raises the result to the clause count.
///
/// Panics if the measured cut count is not a multiple of the satisfying
/// assignment count, which would mean the counters themselves are broken.
pub fn per_clause_multiplier() -> usize {
    static MU: OnceLock<usize> = OnceLock::new();
    *MU.get_or_init(|| {
        let f = MonotoneFormula::new(2, [(1, 2)]).expect("anchor formula is valid");
        let (graph, _) = build_clause_cycles(&f);
        let cuts = oracles::count_cuts_of_size(&graph, 8).expect("anchor instance is tiny");
        let sats = oracles::count_sat(&f).expect("anchor formula is tiny");
        let (q, r) = cuts.div_rem(&sats);
        assert!(
            r.is_zero(),
            "anchor cut count {cuts} is not a multiple of the assignment count {sats}"
        );
        q.to_usize().expect("per-clause constant is small")
    })
}

/// Build the cut-counting instance of a monotone 2-CNF formula.
///
/// Vertex 0 is the apex; vertices `1..=n` stand for the variables; clause
/// `j` (1-based) adds six vertices `n+6(j-1)+1 ..= n+6j` and a nine-edge
/// cycle apex, c1, c2, x_u, c3, c4, x_v, c5, c6, apex. The instance asks
/// for cuts of size `k = 8·(number of clauses)`; their count is the
/// satisfying-assignment count times `per_clause_multiplier()` per clause.
///
/// Every variable must occur in some clause, otherwise its vertex would be
/// isolated and the graph disconnected; see
/// [`sat_to_maxcut_stripping_unused`] for the lenient variant.
pub fn sat_to_maxcut(f: &MonotoneFormula) -> Result<MaxCutInstance, ReductionError> {
    if f.clauses().is_empty() {
        return Err(ReductionError::NoClauses);
    }
    let unused = f.unused_variables();
    if !unused.is_empty() {
        return Err(ReductionError::UnusedVariables(unused));
    }
    let (graph, clause_cycles) = build_clause_cycles(f);
    let n = f.num_vars();
    let num_clauses = f.clauses().len();
    let mut labels = vec![VertexRole::Apex];
    labels.extend((1..=n).map(VertexRole::Variable));
    for clause in 1..=num_clauses {
        labels.extend((1..=6).map(|slot| VertexRole::ClauseGadget { clause, slot }));
    }
    let k = 8 * num_clauses;
    let certificate = ReductionCertificate {
        source: Problem::MonotoneSat,
        target: Problem::CutsOfSize,
        source_size: None,
        target_size: Some(k),
        stretch_factor: None,
        multiplier: num_traits::pow(Count::from(per_clause_multiplier()), num_clauses),
        additive: Count::zero(),
        labels,
    };
    Ok(MaxCutInstance {
        graph,
        k,
        clause_cycles,
        certificate,
    })
}

/// [`sat_to_maxcut`] after dropping variables that occur in no clause.
///
/// Returns the instance for the stripped formula and the correction factor
/// `2^(number of dropped variables)`: the original formula has exactly that
/// many times as many satisfying assignments as the stripped one.
pub fn sat_to_maxcut_stripping_unused(
    f: &MonotoneFormula,
) -> Result<(MaxCutInstance, Count), ReductionError> {
    let unused = f.unused_variables();
    if unused.is_empty() {
        return Ok((sat_to_maxcut(f)?, Count::from(1u32)));
    }
    let mut new_id = vec![0usize; f.num_vars() + 1];
    let mut next = 0;
    let mut drop_iter = unused.iter().peekable();
    for var in 1..=f.num_vars() {
        if drop_iter.peek() == Some(&&var) {
            drop_iter.next();
        } else {
            next += 1;
            new_id[var] = next;
        }
    }
    if next == 0 {
        return Err(ReductionError::NoClauses);
    }
    let stripped = MonotoneFormula::new(
        next,
        f.clauses().iter().map(|&(u, v)| (new_id[u], new_id[v])),
    )
    .expect("renumbering used variables keeps clauses valid");
    let factor = Count::from(1u32) << unused.len();
    Ok((sat_to_maxcut(&stripped)?, factor))
}

/// Blow a cut-counting instance up into a required-size cocircuit instance.
///
/// Two universal vertices `x` (id `n`) and `x'` (id `n+1`) are added, each
/// adjacent to everything except the other, plus `n²` padding vertices
/// (ids `n+2 ..= n+1+n²`) adjacent to exactly `x` and `x'`. Cocircuits of
/// size `k' = n² + n + k` in the result correspond to cuts of size `k` in
/// the input, `2^(n²+1)` cocircuits per cut.
pub fn maxcut_to_cocircuits(g: &Graph, k: usize) -> Result<RequiredSizeInstance, ReductionError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n < 2 {
        return Err(ReductionError::TooFewVertices(n));
    }
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    if k == 0 || k > m {
        return Err(ReductionError::SizeOutOfRange { k, m });
    }
    let x = n;
    let x_prime = n + 1;
    let total = n + 2 + n * n;
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| e.endpoints()).collect();
    for v in 0..n {
        edges.push((x, v));
        edges.push((x_prime, v));
    }
    for p in n + 2..total {
        edges.push((x, p));
        edges.push((x_prime, p));
    }
    let graph = Graph::new(total, edges).expect("blow-up adds only fresh endpoints");
    let mut labels: Vec<VertexRole> = (0..n).map(VertexRole::Original).collect();
    labels.push(VertexRole::Apex);
    labels.push(VertexRole::ApexPrime);
    labels.extend((1..=n * n).map(VertexRole::Padding));
    let k_prime = n * n + n + k;
    let certificate = ReductionCertificate {
        source: Problem::CutsOfSize,
        target: Problem::SizedCocircuits,
        source_size: Some(k),
        target_size: Some(k_prime),
        stretch_factor: None,
        multiplier: Count::from(1u32) << (n * n + 1),
        additive: Count::zero(),
        labels,
    };
    Ok(RequiredSizeInstance {
        graph,
        k: k_prime,
        certificate,
    })
}

/// Which constant term to subtract when solving for a spectrum from
/// stretched totals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantTerm {
    /// `C(l,2)·(m − b)` where `b` is the bridge count: only a non-bridge
    /// edge's path contributes the two-edges-on-one-path cocircuits, since
    /// for a bridge that cut has a disconnected shore. This is the mode the
    /// oracles agree with.
    BridgeCorrected,
    /// `C(l,2)·m`, crediting every edge. Coincides with
    /// [`ConstantTerm::BridgeCorrected`] exactly on bridgeless graphs; on a
    /// graph with bridges it makes the system's solution non-integral or
    /// negative.
    AllEdges,
}

/// Recover a graph's cocircuit spectrum from the total cocircuit counts of
/// its stretched copies.
///
/// `stretch_totals[l-1]` must be the cocircuit count of `stretch(g, l)` for
/// `l = 1..=m`, where `m` is the edge count and `bridges` the bridge count
/// of `g`. Subtracting the constant term leaves the linear system
/// `Σ_k l^k · N_k`, which is solved exactly; a non-integral or negative
/// solution is reported as an error since it means the constant-term mode
/// does not match the graph (or the inputs are corrupted).
pub fn recover_spectrum(
    stretch_totals: &[Count],
    m: usize,
    bridges: usize,
    term: ConstantTerm,
) -> Result<Spectrum, ReductionError> {
    if stretch_totals.len() != m {
        return Err(ReductionError::WrongCountLength {
            m,
            found: stretch_totals.len(),
        });
    }
    if bridges > m {
        return Err(ReductionError::BridgeCountTooLarge { b: bridges, m });
    }
    if m == 0 {
        return Ok(Spectrum::new(Vec::new()));
    }
    let credited = match term {
        ConstantTerm::BridgeCorrected => m - bridges,
        ConstantTerm::AllEdges => m,
    };
    let rhs: Vec<Rational> = stretch_totals
        .iter()
        .enumerate()
        .map(|(i, total)| {
            let l = i + 1;
            let constant = BigInt::from(l * (l - 1) / 2) * BigInt::from(credited);
            Rational::from_integer(BigInt::from(total.clone()) - constant)
        })
        .collect();
    let system = build_stretch_system(m);
    let solution = gauss_solve_exact(&system, &rhs).expect("stretch system is nonsingular");
    let mut values = Vec::with_capacity(m);
    for (i, value) in solution.iter().enumerate() {
        if !value.is_integer() || value.is_negative() {
            return Err(ReductionError::SpectrumInconsistent {
                k: i + 1,
                value: value.to_string(),
            });
        }
        values.push(
            value
                .to_integer()
                .to_biguint()
                .expect("checked non-negative"),
        );
    }
    Ok(Spectrum::new(values))
}

/// Convex two-colouring count of a graph from its component count and, for
/// connected graphs, its cocircuit count.
///
/// Zero components (the empty graph) admit exactly the empty colouring; one
/// component gives the two single-colour colourings plus two per cocircuit;
/// two components force one component per colour, two ways; three or more
/// components leave some colour class disconnected no matter what.
pub fn convex_from_cocircuits(component_count: usize, cocircuit_count: &Count) -> Count {
    match component_count {
        0 => Count::from(1u32),
        1 => Count::from(2u32) + Count::from(2u32) * cocircuit_count,
        2 => Count::from(2u32),
        _ => Count::from(0u32),
    }
}

/// Every instance along the composed reduction chain, with the claimed
/// multipliers. Construction and size arithmetic only; nothing here runs
/// the exponential counters.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub variables: usize,
    pub clauses: usize,
    pub maxcut: MaxCutInstance,
    pub sized: RequiredSizeInstance,
    /// `(l, vertices, edges)` of each stretched copy of the sized
    /// instance's graph, for `l = 1..=m`.
    pub stretch_sizes: Vec<(usize, usize, usize)>,
    /// Product of all multipliers: the satisfying-assignment count equals
    /// the sized instance's cocircuit count divided by this.
    pub relation_divisor: Count,
}

impl ChainReport {
    /// Line-oriented text form: one `instance` line per constructed
    /// instance, one `factor` line per claimed multiplier, then the count
    /// relation. All numbers are exact decimal integers.
    pub fn render(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = writeln!(out, "instance sat n={} m={}", self.variables, self.clauses);
        let _ = writeln!(
            out,
            "instance maxcut n={} m={} k={}",
            self.maxcut.graph.vertex_count(),
            self.maxcut.graph.edge_count(),
            self.maxcut.k
        );
        let _ = writeln!(
            out,
            "instance sized-cocircuits n={} m={} k={}",
            self.sized.graph.vertex_count(),
            self.sized.graph.edge_count(),
            self.sized.k
        );
        for &(l, n, m) in &self.stretch_sizes {
            let _ = writeln!(out, "instance stretch-{l} n={n} m={m}");
        }
        let _ = writeln!(
            out,
            "instance convex n={} m={}",
            self.sized.graph.vertex_count(),
            self.sized.graph.edge_count()
        );
        let _ = writeln!(out, "factor {}", self.maxcut.certificate.multiplier);
        let _ = writeln!(out, "factor {}", self.sized.certificate.multiplier);
        let _ = writeln!(
            out,
            "relation sat-count = sized-cocircuits-count(k={}) / {}",
            self.sized.k, self.relation_divisor
        );
        out
    }
}

fn validate(ok: bool, what: &str) -> Result<(), ReductionError> {
    if ok {
        Ok(())
    } else {
        Err(ReductionError::ChainValidation(what.to_string()))
    }
}

/// Run the full reduction chain on a formula and report every constructed
/// instance with its claimed multiplier.
///
/// The final convex instance is the sized instance's graph itself; the
/// stretched family listed in between is what converts its total cocircuit
/// counts back into the required-size count.
pub fn compose_chain(f: &MonotoneFormula) -> Result<ChainReport, ReductionError> {
    let maxcut = sat_to_maxcut(f)?;
    let sized = maxcut_to_cocircuits(&maxcut.graph, maxcut.k)?;

    let num_clauses = f.clauses().len();
    let n1 = maxcut.graph.vertex_count();
    let m1 = maxcut.graph.edge_count();
    validate(
        n1 == 1 + f.num_vars() + 6 * num_clauses,
        "cut instance vertex count",
    )?;
    validate(m1 == 9 * num_clauses, "cut instance edge count")?;
    validate(maxcut.k == 8 * num_clauses, "cut instance size parameter")?;
    validate(maxcut.graph.is_connected(), "cut instance connectivity")?;
    let n2 = sized.graph.vertex_count();
    let m2 = sized.graph.edge_count();
    validate(n2 == n1 + 2 + n1 * n1, "sized instance vertex count")?;
    validate(m2 == m1 + 2 * (n1 * n1 + n1), "sized instance edge count")?;
    validate(
        sized.k == n1 * n1 + n1 + maxcut.k,
        "sized instance size parameter",
    )?;
    validate(sized.graph.is_connected(), "sized instance connectivity")?;

    let stretch_sizes = (1..=m2)
        .map(|l| (l, n2 + m2 * (l - 1), m2 * l))
        .collect();
    let relation_divisor =
        maxcut.certificate.multiplier.clone() * sized.certificate.multiplier.clone();
    Ok(ChainReport {
        variables: f.num_vars(),
        clauses: num_clauses,
        maxcut,
        sized,
        stretch_sizes,
        relation_divisor,
    })
}
