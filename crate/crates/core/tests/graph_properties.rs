use proptest::prelude::*;

use ulfp::graph::{ball, circle, greedy_separated, max_valency, verify_dichotomy, FiniteGraph, GraphDichotomy};
use ulfp::io::{parse_graph, parse_vertex_set};

fn connected_graph() -> impl Strategy<Value = FiniteGraph> {
    (2usize..40)
        .prop_flat_map(|n| {
            let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
            let extra = prop::collection::vec((0..n, 0..n), 0..n);
            (Just(n), parents, extra)
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(u, v)| u != v));
            FiniteGraph::from_edges(n, &edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn circles_grow_at_most_by_valency(g in connected_graph()) {
        let v = max_valency(&g);
        for x in 0..g.vertex_count() {
            for i in 1..6 {
                let inner = circle(&g, x, i).unwrap().len();
                let outer = circle(&g, x, i + 1).unwrap().len();
                prop_assert!(outer <= v * inner);
            }
            prop_assert!(ball(&g, x, 2).unwrap().len() <= 1 + v + v * v);
        }
    }

    #[test]
    fn dichotomy_always_verifies(g in connected_graph(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..30), l in 1u64..4, k in 2usize..5) {
        let n = g.vertex_count();
        let a: Vec<usize> = picks.iter().map(|i| i.index(n)).collect();
        let r = greedy_separated(&g, &a, l, k).unwrap();
        prop_assert!(verify_dichotomy(&g, &a, l, k, &r));
    }

    #[test]
    fn large_sets_on_a_path_always_separate(
        (n, l, k, a) in (1u64..6, 2usize..6).prop_flat_map(|(l, k)| {
            let need = (l as usize + 2) * k + 1;
            (need..200).prop_flat_map(move |n| (Just(n), Just(l), Just(k), prop::sample::subsequence((0..n).collect::<Vec<_>>(), need)))
        })
    ) {
        let g = FiniteGraph::path(n);
        let r = greedy_separated(&g, &a, l, k).unwrap();
        let is_witness = matches!(r, GraphDichotomy::Witness { .. });
        prop_assert!(is_witness);
        prop_assert!(verify_dichotomy(&g, &a, l, k, &r));
    }
}

#[test]
fn graph_files_round_trip() {
    let g = parse_graph("# a square with a tail\n5 5\n0 1\n1 2\n2 3\n3 0\n3 4\n").unwrap();
    assert_eq!(g.vertex_count(), 5);
    assert_eq!(max_valency(&g), 3);
    let a = parse_vertex_set("0\n2\n\n4\n").unwrap();
    assert_eq!(a, vec![0, 2, 4]);
    let r = greedy_separated(&g, &a, 1, 2).unwrap();
    assert_eq!(r, GraphDichotomy::Witness { vertices: vec![0, 2] });
    assert!(parse_graph("3 1\n0 3\n").is_err());
}

#[test]
fn disconnected_queries_are_rejected() {
    let g = FiniteGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(greedy_separated(&g, &[0, 3], 1, 2).is_err());
    assert!(greedy_separated(&g, &[0, 1], 1, 2).is_ok());
}
