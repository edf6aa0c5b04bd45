//! End-to-end checks through the public API: solvers, oracle, matching
//! bound and file format agree on small instances.

use proptest::prelude::*;

use tokslide_core::format::{
    emit_instance, emit_moves, parse_instance, parse_moves, StructureKind,
};
use tokslide_core::gen::generate_instance;
use tokslide_core::interval_reconfig::reconf_interval;
use tokslide_core::matching::min_cost_matching;
use tokslide_core::oracle::{
    certify_optimality, reconfig_distance_bfs, BfsOutcome, FeasibilityPredicate,
};
use tokslide_core::tree::reconf_tree_dominating;
use tokslide_core::{
    Graph, IntervalRepresentation, MatchCost, Move, Reachability, RootedTree, TokenMultiset,
};

fn tokens(n: usize, vs: &[usize]) -> TokenMultiset {
    TokenMultiset::from_vertices(n, vs.iter().copied()).unwrap()
}

#[test]
fn p4_tree_from_text() {
    let inst = parse_instance("tree 4\n0 1\n1 2\n2 3\ntokens 2: 0 2\ntokens 2: 1 3\n").unwrap();
    let tree = inst.rooted_tree(0).unwrap();
    let seq = reconf_tree_dominating(&tree, &inst.sources, &inst.targets).unwrap();
    assert_eq!(emit_moves(&seq), "moves 2\n0 1 1\n2 3 1\n");
    assert_eq!(parse_moves(&emit_moves(&seq)).unwrap(), seq);
}

#[test]
fn triangle_of_intervals_needs_one_move() {
    let rep = IntervalRepresentation::new(vec![(1, 6), (2, 7), (3, 8)]).unwrap();
    let seq = reconf_interval(&rep, &tokens(3, &[0]), &tokens(3, &[2]))
        .unwrap()
        .reachable()
        .unwrap();
    assert_eq!(seq.moves(), &[Move::new(0, 2, 1)]);
}

#[test]
fn independent_sets_on_c4_are_frozen() {
    let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let outcome = reconfig_distance_bfs(
        &c4,
        FeasibilityPredicate::IndependentSet(&c4),
        &tokens(4, &[0, 2]),
        &tokens(4, &[1, 3]),
        1000,
    )
    .unwrap();
    assert_eq!(outcome, BfsOutcome::Unreachable);
    // Without the feasibility constraint two slides would do.
    let (_, lower) = min_cost_matching(&c4, &tokens(4, &[0, 2]), &tokens(4, &[1, 3])).unwrap();
    assert_eq!(lower, MatchCost::Finite(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tree_solutions_are_certified(n in 1usize..=10, k in 1usize..=3, seed in any::<u64>(), root in 0usize..10) {
        let Ok(inst) = generate_instance(StructureKind::Tree, n, k.min(n), seed) else {
            return Ok(());
        };
        let g = inst.graph().unwrap();
        let tree = RootedTree::new(g.clone(), root % n).unwrap();
        let seq = reconf_tree_dominating(&tree, &inst.sources, &inst.targets).unwrap();
        let pred = FeasibilityPredicate::Dominating(&g);
        prop_assert!(certify_optimality(&g, pred, &inst.sources, &inst.targets, &seq).unwrap());
        prop_assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn interval_solutions_are_certified(n in 1usize..=9, k in 1usize..=3, seed in any::<u64>()) {
        let Ok(inst) = generate_instance(StructureKind::Intervals, n, k.min(n), seed) else {
            return Ok(());
        };
        let g = inst.graph().unwrap();
        let rep = inst.representation().unwrap();
        let pred = FeasibilityPredicate::Dominating(&g);
        match reconf_interval(&rep, &inst.sources, &inst.targets).unwrap() {
            Reachability::Reachable(seq) => {
                prop_assert!(certify_optimality(&g, pred, &inst.sources, &inst.targets, &seq).unwrap());
            }
            Reachability::Unreachable => {
                let outcome = reconfig_distance_bfs(&g, pred, &inst.sources, &inst.targets, 1 << 20).unwrap();
                prop_assert_eq!(outcome, BfsOutcome::Unreachable);
            }
        }
    }
}
