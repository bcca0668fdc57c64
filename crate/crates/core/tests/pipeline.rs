//! Walks the reduction pipeline through the public API, link by link, on
//! instances small enough to enumerate at every step.

use cocount_core::oracles::{
    cocircuit_spectrum, count_cocircuits, count_convex_two_colourings, count_cuts_of_size,
    count_sat,
};
use cocount_core::{
    compose_chain, convex_from_cocircuits, maxcut_to_cocircuits, parse_formula, parse_graph,
    per_clause_multiplier, recover_spectrum, sat_to_maxcut, ConstantTerm, Count, Graph, Problem,
};

#[test]
fn formula_to_cut_counting() {
    let f = parse_formula("p cnf 3 2\n1 2 0\n2 3 0\n").unwrap();
    let inst = sat_to_maxcut(&f).unwrap();
    assert_eq!(inst.certificate.source, Problem::MonotoneSat);
    assert_eq!(inst.certificate.target, Problem::CutsOfSize);
    let mu = Count::from(per_clause_multiplier());
    assert_eq!(
        count_cuts_of_size(&inst.graph, inst.k).unwrap(),
        mu.pow(2) * count_sat(&f).unwrap()
    );
}

#[test]
fn cut_counting_to_required_size_cocircuits() {
    let g = Graph::path(3);
    for k in 1..=2 {
        let inst = maxcut_to_cocircuits(&g, k).unwrap();
        assert_eq!(inst.k, 9 + 3 + k);
        assert_eq!(
            count_cocircuits(&inst.graph, Some(inst.k)).unwrap(),
            inst.certificate.multiplier.clone() * count_cuts_of_size(&g, k).unwrap()
        );
    }
}

#[test]
fn stretched_totals_recover_the_spectrum() {
    let g = parse_graph("p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n").unwrap();
    let m = g.edge_count();
    let totals: Vec<Count> = (1..=m)
        .map(|l| count_cocircuits(&g.stretch(l).unwrap().graph, None).unwrap())
        .collect();
    let recovered =
        recover_spectrum(&totals, m, g.bridges().len(), ConstantTerm::BridgeCorrected).unwrap();
    assert_eq!(recovered, cocircuit_spectrum(&g).unwrap());
}

#[test]
fn convex_counts_follow_the_component_formula() {
    let c4 = Graph::cycle(4);
    let cocircuits = count_cocircuits(&c4, None).unwrap();
    assert_eq!(
        count_convex_two_colourings(&c4).unwrap(),
        convex_from_cocircuits(1, &cocircuits)
    );
    let split = parse_graph("p edge 4 2\ne 1 2\ne 3 4\n").unwrap();
    assert_eq!(count_convex_two_colourings(&split).unwrap(), Count::from(2u32));
    assert_eq!(convex_from_cocircuits(2, &Count::from(0u32)), Count::from(2u32));
}

#[test]
fn chain_report_states_the_count_relation() {
    let f = parse_formula("p cnf 2 1\n1 2 0\n").unwrap();
    let report = compose_chain(&f).unwrap();
    assert_eq!(report.relation_divisor, Count::from(3u32) << 82u32);
    let text = report.render();
    assert!(
        text.contains("relation sat-count = sized-cocircuits-count(k=98) / "),
        "{text}"
    );
}
