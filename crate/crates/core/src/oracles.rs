//! Brute-force exact counters.
//!
//! These enumerate every assignment or bipartition outright and are the
//! ground truth that all reductions are tested against. They are
//! intentionally exponential: correctness is the point, scale is not.
//! Bipartitions are iterated as bit masks with vertex 0 pinned to shore 0,
//! so each unordered cut is visited exactly once.
//!
//! The bounded entry points refuse instances above a practical size (24
//! vertices, 30 variables) so a typo cannot hang a run; the `_unbounded`
//! variants take anything that fits in a 63-bit mask.

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::Graph;

/// Arbitrary-precision non-negative count.
pub type Count = BigUint;

/// Largest vertex count the bounded graph counters accept.
pub const MAX_ENUM_VERTICES: usize = 24;

/// Largest variable count the bounded SAT counter accepts.
pub const MAX_SAT_VARS: usize = 30;

/// Masks are `u64`; one bit is reserved so complements stay in range.
const MASK_LIMIT: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the enumeration bound {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("formula has {vars} variables, above the enumeration bound {max}")]
    TooManyVariables { vars: usize, max: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cut size must be at least 1")]
    ZeroSize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("formula must have at least one variable")]
    ZeroVariables,
    #[error("variable {var} out of range 1..={num_vars}")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("clause repeats variable {0}")]
    RepeatedVariable(usize),
}

/// 2-CNF formula whose literals are all positive.
///
/// Variables are named `1..=num_vars`; each clause is an unordered pair of
/// distinct variables, stored with the smaller first. Duplicate clauses are
/// kept (they do not change satisfiability but reductions map them to
/// distinct gadgets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneFormula {
    num_vars: usize,
    clauses: Vec<(usize, usize)>,
}

impl MonotoneFormula {
    pub fn new(
        num_vars: usize,
        clauses: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, FormulaError> {
        if num_vars == 0 {
            return Err(FormulaError::ZeroVariables);
        }
        let mut normalized = Vec::new();
        for (u, v) in clauses {
            for x in [u, v] {
                if x == 0 || x > num_vars {
                    return Err(FormulaError::VariableOutOfRange { var: x, num_vars });
                }
            }
            if u == v {
                return Err(FormulaError::RepeatedVariable(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(MonotoneFormula {
            num_vars,
            clauses: normalized,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Clauses in input order, each pair sorted.
    pub fn clauses(&self) -> &[(usize, usize)] {
        &self.clauses
    }

    /// Variables that appear in no clause, ascending.
    pub fn unused_variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.num_vars + 1];
        for &(u, v) in &self.clauses {
            used[u] = true;
            used[v] = true;
        }
        (1..=self.num_vars).filter(|&v| !used[v]).collect()
    }
}

/// Cocircuit counts of a connected graph, indexed by cut size `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    values: Vec<Count>,
}

impl Spectrum {
    pub fn new(values: Vec<Count>) -> Spectrum {
        Spectrum { values }
    }

    /// The edge count of the underlying graph.
    pub fn edge_count(&self) -> usize {
        self.values.len()
    }

    /// Number of cocircuits of size `k`, for `k` in `1..=m`.
    pub fn get(&self, k: usize) -> &Count {
        assert!(
            k >= 1 && k <= self.values.len(),
            "spectrum index {k} out of range 1..={}",
            self.values.len()
        );
        &self.values[k - 1]
    }

    /// All counts, `values()[i]` holding the count for size `i + 1`.
    pub fn values(&self) -> &[Count] {
        &self.values
    }

    /// Total cocircuit count.
    pub fn total(&self) -> Count {
        self.values.iter().sum()
    }
}

/// Adjacency as bit masks, for fast connectivity checks on vertex subsets.
struct MaskGraph {
    adj: Vec<u64>,
    edge_masks: Vec<u64>,
}

impl MaskGraph {
    fn new(g: &Graph) -> MaskGraph {
        let mut adj = vec![0u64; g.vertex_count()];
        let mut edge_masks = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            adj[e.u()] |= 1 << e.v();
            adj[e.v()] |= 1 << e.u();
            edge_masks.push(1 << e.u() | 1 << e.v());
        }
        MaskGraph { adj, edge_masks }
    }

    /// Whether the subgraph induced on `mask` is connected (vacuously true
    /// for the empty mask).
    fn connected_submask(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let mut seen = 1u64 << mask.trailing_zeros();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            next &= mask & !seen;
            seen |= next;
            frontier = next;
        }
        seen == mask
    }

    /// Edges with exactly one endpoint in `mask`.
    fn crossing_size(&self, mask: u64) -> usize {
        self.edge_masks
            .iter()
            .filter(|&&em| {
                let hit = mask & em;
                hit != 0 && hit != em
            })
            .count()
    }
}

fn check_vertex_bound(g: &Graph, max: usize) -> Result<(), OracleError> {
    if g.vertex_count() > max {
        return Err(OracleError::TooManyVertices {
            n: g.vertex_count(),
            max,
        });
    }
    Ok(())
}

/// Number of satisfying assignments of a monotone 2-CNF formula.
pub fn count_sat(f: &MonotoneFormula) -> Result<Count, OracleError> {
    if f.num_vars() > MAX_SAT_VARS {
        return Err(OracleError::TooManyVariables {
            vars: f.num_vars(),
            max: MAX_SAT_VARS,
        });
    }
    count_sat_unbounded(f)
}

/// [`count_sat`] without the practical size bound.
pub fn count_sat_unbounded(f: &MonotoneFormula) -> Result<Count, OracleError> {
    let vars = f.num_vars();
    if vars > MASK_LIMIT {
        return Err(OracleError::TooManyVariables {
            vars,
            max: MASK_LIMIT,
        });
    }
    let clause_masks: Vec<u64> = f
        .clauses()
        .iter()
        .map(|&(u, v)| 1 << (u - 1) | 1 << (v - 1))
        .collect();
    let mut tally = 0u64;
    for assignment in 0..1u64 << vars {
        if clause_masks.iter().all(|&cm| assignment & cm != 0) {
            tally += 1;
        }
    }
    Ok(Count::from(tally))
}

/// Number of cuts of a connected graph whose crossing set has exactly `k`
/// edges. A cut is an unordered bipartition into two non-empty shores.
pub fn count_cuts_of_size(g: &Graph, k: usize) -> Result<Count, OracleError> {
    check_vertex_bound(g, MAX_ENUM_VERTICES)?;
    count_cuts_of_size_unbounded(g, k)
}

/// [`count_cuts_of_size`] without the practical size bound.
pub fn count_cuts_of_size_unbounded(g: &Graph, k: usize) -> Result<Count, OracleError> {
    check_vertex_bound(g, MASK_LIMIT)?;
    if k == 0 {
        return Err(OracleError::ZeroSize);
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let n = g.vertex_count();
    if n < 2 {
        return Ok(Count::from(0u32));
    }
    let mg = MaskGraph::new(g);
    let mut tally = 0u64;
    for raw in 1..1u64 << (n - 1) {
        let shore1 = raw << 1;
        if mg.crossing_size(shore1) == k {
            tally += 1;
        }
    }
    Ok(Count::from(tally))
}

/// Number of cocircuits of a connected graph: cuts whose deletion leaves
/// exactly two components, equivalently cuts both of whose shores induce
/// connected subgraphs. `size_filter` restricts to cocircuits of that size.
pub fn count_cocircuits(g: &Graph, size_filter: Option<usize>) -> Result<Count, OracleError> {
    check_vertex_bound(g, MAX_ENUM_VERTICES)?;
    count_cocircuits_unbounded(g, size_filter)
}

/// [`count_cocircuits`] without the practical size bound.
pub fn count_cocircuits_unbounded(
    g: &Graph,
    size_filter: Option<usize>,
) -> Result<Count, OracleError> {
    check_vertex_bound(g, MASK_LIMIT)?;
    if size_filter == Some(0) {
        return Err(OracleError::ZeroSize);
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let n = g.vertex_count();
    if n < 2 {
        return Ok(Count::from(0u32));
    }
    let mg = MaskGraph::new(g);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut tally = 0u64;
    for raw in 1..1u64 << (n - 1) {
        let shore1 = raw << 1;
        let shore0 = full & !shore1;
        if !mg.connected_submask(shore1) || !mg.connected_submask(shore0) {
            continue;
        }
        if let Some(k) = size_filter {
            if mg.crossing_size(shore1) != k {
                continue;
            }
        }
        tally += 1;
    }
    Ok(Count::from(tally))
}

/// Cocircuit counts of a connected graph, broken down by cut size.
pub fn cocircuit_spectrum(g: &Graph) -> Result<Spectrum, OracleError> {
    check_vertex_bound(g, MAX_ENUM_VERTICES)?;
    cocircuit_spectrum_unbounded(g)
}

/// [`cocircuit_spectrum`] without the practical size bound.
pub fn cocircuit_spectrum_unbounded(g: &Graph) -> Result<Spectrum, OracleError> {
    check_vertex_bound(g, MASK_LIMIT)?;
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut tallies = vec![0u64; m + 1];
    if n >= 2 {
        let mg = MaskGraph::new(g);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for raw in 1..1u64 << (n - 1) {
            let shore1 = raw << 1;
            let shore0 = full & !shore1;
            if mg.connected_submask(shore1) && mg.connected_submask(shore0) {
                tallies[mg.crossing_size(shore1)] += 1;
            }
        }
    }
    // a cocircuit of a connected graph always crosses at least one edge
    debug_assert_eq!(tallies[0], 0);
    Ok(Spectrum::new(
        tallies[1..].iter().map(|&t| Count::from(t)).collect(),
    ))
}

/// Number of vertex two-colourings in which each colour class induces a
/// connected subgraph (an empty class counts as connected). Colourings are
/// functions, so swapping the two colours gives a different colouring.
/// Disconnected graphs are allowed.
pub fn count_convex_two_colourings(g: &Graph) -> Result<Count, OracleError> {
    check_vertex_bound(g, MAX_ENUM_VERTICES)?;
    count_convex_two_colourings_unbounded(g)
}

/// [`count_convex_two_colourings`] without the practical size bound.
pub fn count_convex_two_colourings_unbounded(g: &Graph) -> Result<Count, OracleError> {
    check_vertex_bound(g, MASK_LIMIT)?;
    let n = g.vertex_count();
    let mg = MaskGraph::new(g);
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut tally = 0u64;
    for class1 in 0..=full {
        if mg.connected_submask(class1) && mg.connected_submask(full & !class1) {
            tally += 1;
        }
        if class1 == full {
            break;
        }
    }
    Ok(Count::from(tally))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, Vertex};
    use proptest::prelude::*;

    fn count(v: u64) -> Count {
        Count::from(v)
    }

    fn formula(vars: usize, clauses: &[(usize, usize)]) -> MonotoneFormula {
        MonotoneFormula::new(vars, clauses.iter().copied()).unwrap()
    }

    #[test]
    fn formula_validation() {
        assert_eq!(
            MonotoneFormula::new(0, []).unwrap_err(),
            FormulaError::ZeroVariables
        );
        assert_eq!(
            MonotoneFormula::new(2, [(1, 3)]).unwrap_err(),
            FormulaError::VariableOutOfRange { var: 3, num_vars: 2 }
        );
        assert_eq!(
            MonotoneFormula::new(2, [(0, 1)]).unwrap_err(),
            FormulaError::VariableOutOfRange { var: 0, num_vars: 2 }
        );
        assert_eq!(
            MonotoneFormula::new(2, [(2, 2)]).unwrap_err(),
            FormulaError::RepeatedVariable(2)
        );
        // normalization keeps duplicates and order
        let f = formula(3, &[(3, 1), (1, 2), (1, 3)]);
        assert_eq!(f.clauses(), &[(1, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn unused_variables_examples() {
        assert_eq!(formula(4, &[(2, 4)]).unused_variables(), vec![1, 3]);
        assert_eq!(formula(2, &[(1, 2)]).unused_variables(), vec![]);
        assert_eq!(formula(3, &[]).unused_variables(), vec![1, 2, 3]);
    }

    #[test]
    fn count_sat_examples() {
        assert_eq!(count_sat(&formula(2, &[(1, 2)])).unwrap(), count(3));
        assert_eq!(
            count_sat(&formula(3, &[(1, 2), (1, 3)])).unwrap(),
            count(5)
        );
        assert_eq!(count_sat(&formula(3, &[])).unwrap(), count(8));
        // a duplicate clause changes nothing
        assert_eq!(
            count_sat(&formula(2, &[(1, 2), (1, 2)])).unwrap(),
            count(3)
        );
    }

    #[test]
    fn count_sat_bound() {
        let f = formula(31, &[(1, 2)]);
        assert_eq!(
            count_sat(&f).unwrap_err(),
            OracleError::TooManyVariables { vars: 31, max: 30 }
        );
    }

    #[test]
    fn count_cuts_examples() {
        assert_eq!(count_cuts_of_size(&Graph::complete(2), 1).unwrap(), count(1));
        assert_eq!(count_cuts_of_size(&Graph::complete(3), 2).unwrap(), count(3));
        assert_eq!(count_cuts_of_size(&Graph::cycle(9), 8).unwrap(), count(9));
        assert_eq!(count_cuts_of_size(&Graph::complete(3), 7).unwrap(), count(0));
    }

    #[test]
    fn count_cuts_errors() {
        assert_eq!(
            count_cuts_of_size(&Graph::empty(3), 1).unwrap_err(),
            OracleError::Disconnected
        );
        assert_eq!(
            count_cuts_of_size(&Graph::complete(2), 0).unwrap_err(),
            OracleError::ZeroSize
        );
        assert_eq!(
            count_cuts_of_size(&Graph::path(25), 1).unwrap_err(),
            OracleError::TooManyVertices { n: 25, max: 24 }
        );
        assert_eq!(count_cuts_of_size_unbounded(&Graph::path(25), 1).unwrap(), count(24));
    }

    #[test]
    fn count_cocircuits_examples() {
        assert_eq!(count_cocircuits(&Graph::complete(2), None).unwrap(), count(1));
        assert_eq!(count_cocircuits(&Graph::cycle(4), None).unwrap(), count(6));
        assert_eq!(
            count_cocircuits(&Graph::path(3), Some(2)).unwrap(),
            count(0)
        );
    }

    #[test]
    fn spectrum_examples() {
        let k3 = cocircuit_spectrum(&Graph::complete(3)).unwrap();
        assert_eq!(k3.values(), &[count(0), count(3), count(0)]);
        assert_eq!(k3.get(2), &count(3));
        assert_eq!(k3.total(), count(3));

        let p3 = cocircuit_spectrum(&Graph::path(3)).unwrap();
        assert_eq!(p3.values(), &[count(2), count(0)]);

        let k2 = cocircuit_spectrum(&Graph::complete(2)).unwrap();
        assert_eq!(k2.values(), &[count(1)]);
        assert_eq!(k2.edge_count(), 1);
    }

    #[test]
    fn convex_examples() {
        assert_eq!(
            count_convex_two_colourings(&Graph::path(3)).unwrap(),
            count(6)
        );
        assert_eq!(
            count_convex_two_colourings(&Graph::empty(2)).unwrap(),
            count(2)
        );
        assert_eq!(
            count_convex_two_colourings(&Graph::empty(3)).unwrap(),
            count(0)
        );
        assert_eq!(
            count_convex_two_colourings(&Graph::empty(0)).unwrap(),
            count(1)
        );
        assert_eq!(
            count_convex_two_colourings(&Graph::empty(1)).unwrap(),
            count(2)
        );
    }

    #[test]
    fn tiny_connected_graphs() {
        // n = 1: no cuts at all
        let one = Graph::empty(1);
        assert_eq!(count_cuts_of_size(&one, 1).unwrap(), count(0));
        assert_eq!(count_cocircuits(&one, None).unwrap(), count(0));
        assert_eq!(cocircuit_spectrum(&one).unwrap().values(), &[] as &[Count]);
    }

    #[test]
    fn trees_and_cycles() {
        for n in 2..=12 {
            let tree = Graph::path(n);
            assert_eq!(
                count_cocircuits(&tree, None).unwrap(),
                count((n - 1) as u64),
                "path on {n}"
            );
        }
        for n in 3..=12usize {
            let c = Graph::cycle(n);
            assert_eq!(
                count_cocircuits(&c, None).unwrap(),
                count((n * (n - 1) / 2) as u64),
                "cycle on {n}"
            );
        }
    }

    /// Connected graph from a parent pointer per non-root vertex plus extra
    /// edge picks, for property tests.
    fn connected_graph(parents: &[usize], extra: &[(usize, usize)]) -> Graph {
        let n = parents.len() + 1;
        let mut edges: Vec<(usize, usize)> = parents
            .iter()
            .enumerate()
            .map(|(i, &p)| (i + 1, p % (i + 1)))
            .collect();
        for &(a, b) in extra {
            let (a, b) = (a % n, b % n);
            if a != b && !edges.contains(&(a.min(b), a.max(b))) {
                edges.push((a.min(b), a.max(b)));
            }
        }
        let edges: std::collections::BTreeSet<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        Graph::new(n, edges).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cut_counts_sum_to_all_bipartitions(
            parents in proptest::collection::vec(0usize..100, 1..7),
            extra in proptest::collection::vec((0usize..100, 0usize..100), 0..8),
        ) {
            let g = connected_graph(&parents, &extra);
            let n = g.vertex_count();
            let m = g.edge_count();
            let mut total = Count::from(0u32);
            for k in 1..=m {
                total += count_cuts_of_size(&g, k).unwrap();
            }
            let expected = (Count::from(1u32) << (n - 1)) - Count::from(1u32);
            prop_assert_eq!(total, expected);
        }

        #[test]
        fn size_one_cocircuits_are_bridges(
            parents in proptest::collection::vec(0usize..100, 1..7),
            extra in proptest::collection::vec((0usize..100, 0usize..100), 0..8),
        ) {
            let g = connected_graph(&parents, &extra);
            prop_assert_eq!(
                count_cocircuits(&g, Some(1)).unwrap(),
                Count::from(g.bridges().len() as u64)
            );
        }

        #[test]
        fn convex_count_tracks_cocircuits_when_connected(
            parents in proptest::collection::vec(0usize..100, 1..8),
            extra in proptest::collection::vec((0usize..100, 0usize..100), 0..10),
        ) {
            let g = connected_graph(&parents, &extra);
            let convex = count_convex_two_colourings(&g).unwrap();
            let cocirc = count_cocircuits(&g, None).unwrap();
            prop_assert_eq!(convex, Count::from(2u32) + Count::from(2u32) * cocirc);
        }

        #[test]
        fn spectrum_matches_filtered_counts(
            parents in proptest::collection::vec(0usize..100, 1..6),
            extra in proptest::collection::vec((0usize..100, 0usize..100), 0..6),
        ) {
            let g = connected_graph(&parents, &extra);
            let spectrum = cocircuit_spectrum(&g).unwrap();
            prop_assert_eq!(spectrum.edge_count(), g.edge_count());
            for k in 1..=g.edge_count() {
                prop_assert_eq!(
                    spectrum.get(k),
                    &count_cocircuits(&g, Some(k)).unwrap()
                );
            }
            prop_assert_eq!(spectrum.total(), count_cocircuits(&g, None).unwrap());
        }

        #[test]
        fn counts_are_relabeling_invariant(
            parents in proptest::collection::vec(0usize..100, 1..7),
            extra in proptest::collection::vec((0usize..100, 0usize..100), 0..8),
            perm_seed in 0usize..10_000,
        ) {
            let g = connected_graph(&parents, &extra);
            let n = g.vertex_count();
            // a deterministic permutation from the seed
            let mut perm: Vec<Vertex> = (0..n).collect();
            let mut state = perm_seed;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, state % (i + 1));
            }
            let h = Graph::new(
                n,
                g.edges().iter().map(|e| (perm[e.u()], perm[e.v()])),
            ).unwrap();
            let original = cocircuit_spectrum(&g).unwrap();
            let relabeled = cocircuit_spectrum(&h).unwrap();
            prop_assert_eq!(original.values(), relabeled.values());
            prop_assert_eq!(
                count_convex_two_colourings(&g).unwrap(),
                count_convex_two_colourings(&h).unwrap()
            );
        }
    }
}
