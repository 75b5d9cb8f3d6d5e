mod common;

use dynhh::fixtures;
use dynhh::graph::{
    parse_graph, write_graph, ArcWeights, Graph, NodeId, ParseError, Weight, INFINITY,
};
use dynhh::oracle::{dijkstra_p2p, dijkstra_sssp, dijkstra_to};
use dynhh::route::is_connected_path;
use proptest::prelude::*;

#[test]
fn example_text_parses() {
    let g = parse_graph(fixtures::example_text().as_bytes()).unwrap();
    assert_eq!(g, fixtures::example_graph());
    assert_eq!(g.node_count(), 7);
    assert_eq!(g.arc_count(), 14);
}

#[test]
fn comments_and_blank_lines_are_skipped() {
    let text = "# two nodes\n2 1\n\n# the only arc\n0 1 5\n";
    let g = parse_graph(text.as_bytes()).unwrap();
    assert_eq!(g.arc(0).weight, 5);
}

type Matches = fn(&ParseError) -> bool;

#[test]
fn malformed_input_is_rejected() {
    let cases: [(&str, Matches); 6] = [
        ("", |e| matches!(e, ParseError::Malformed { .. })),
        ("2 1\n0 2 5\n", |e| {
            matches!(e, ParseError::NodeOutOfRange { .. })
        }),
        ("2 1\n0 1 -5\n", |e| {
            matches!(e, ParseError::NegativeWeight { .. })
        }),
        ("2 1\n1 1 5\n", |e| matches!(e, ParseError::SelfLoop { .. })),
        ("2 2\n0 1 5\n", |e| matches!(e, ParseError::ArcCount { .. })),
        ("2 1\n0 1 x\n", |e| {
            matches!(e, ParseError::Malformed { .. })
        }),
    ];
    for (text, expected) in cases {
        let err = parse_graph(text.as_bytes()).unwrap_err();
        assert!(expected(&err), "{text:?}: {err}");
    }
}

#[test]
fn example_distances() {
    let g = fixtures::example_graph();
    let tree = dijkstra_sssp(&g, &g, 0);
    let dist: Vec<Option<Weight>> = (0..7).map(|v| tree.dist(v)).collect();
    assert_eq!(
        dist,
        vec![
            Some(0),
            Some(1),
            Some(2),
            Some(9),
            Some(8),
            Some(10),
            Some(5)
        ]
    );
    assert_eq!(tree.settle_order(), &[0, 1, 2, 6, 4, 3, 5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn text_format_round_trips(g in common::random_graph(60)) {
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        prop_assert_eq!(parse_graph(&buf[..]).unwrap(), g);
    }

    #[test]
    fn dijkstra_agrees_with_bellman_ford(g in common::random_graph(60)) {
        for s in 0..g.node_count() as NodeId {
            let tree = dijkstra_sssp(&g, &g, s);
            let bf = common::bellman_ford(&g, s);
            for v in 0..g.node_count() as NodeId {
                prop_assert_eq!(tree.dist(v).unwrap_or(INFINITY), bf[v as usize]);
            }
        }
    }

    #[test]
    fn tree_paths_are_shortest_and_closed_under_prefixes(g in common::random_graph(60)) {
        for s in 0..g.node_count() as NodeId {
            let tree = dijkstra_sssp(&g, &g, s);
            for t in 0..g.node_count() as NodeId {
                let Some(path) = tree.path_to(t) else { continue };
                prop_assert!(is_connected_path(&g, s, t, &path));
                prop_assert_eq!(Some(path.iter().map(|&a| g.weight(a)).sum::<Weight>()), tree.dist(t));
                if let Some(&last) = path.last() {
                    let p = g.arc(last).tail;
                    prop_assert_eq!(tree.path_to(p).unwrap(), path[..path.len() - 1].to_vec());
                }
            }
        }
    }

    #[test]
    fn point_to_point_searches_agree(g in common::random_graph(60)) {
        for s in 0..g.node_count() as NodeId {
            let tree = dijkstra_sssp(&g, &g, s);
            for t in 0..g.node_count() as NodeId {
                let uni = dijkstra_to(&g, &g, s, t);
                let bi = dijkstra_p2p(&g, &g, s, t);
                prop_assert_eq!(uni.cost(), tree.dist(t));
                prop_assert_eq!(bi.cost(), tree.dist(t));
                for r in [uni.found(), bi.found()].into_iter().flatten() {
                    prop_assert!(is_connected_path(&g, s, t, &r.arcs));
                    prop_assert_eq!(r.cost_under(&g), r.cost);
                    prop_assert!(r.stats.explored >= r.stats.settled);
                }
            }
        }
    }
}

/// With weights 1–4 equal-cost alternatives are common.
fn tie_heavy_graph() -> impl Strategy<Value = Graph> {
    (2usize..25, 1usize..4, any::<u64>())
        .prop_map(|(n, d, seed)| dynhh::synth::random_graph(n, n * d, 1, 4, seed))
}

proptest! {
    #[test]
    fn subpaths_of_oracle_paths_are_oracle_paths(g in tie_heavy_graph()) {
        let n = g.node_count() as NodeId;
        let trees: Vec<_> = (0..n).map(|s| dijkstra_sssp(&g, &g, s)).collect();
        for s in 0..n {
            for t in 0..n {
                let Some(path) = trees[s as usize].path_to(t) else { continue };
                let nodes = dynhh::route::path_nodes(&g, s, &path);
                for i in 0..nodes.len() {
                    for j in i..nodes.len() {
                        prop_assert_eq!(
                            trees[nodes[i] as usize].path_to(nodes[j]).unwrap(),
                            path[i..j].to_vec(),
                            "{} -> {} inside {} -> {}", nodes[i], nodes[j], s, t
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn reverse_view_flips_every_arc() {
    let g: Graph = fixtures::example_graph();
    let r = common::reversed(&g);
    for a in 0..g.arc_count() as u32 {
        assert_eq!(
            (g.arc(a).tail, g.arc(a).head),
            (r.arc(a).head, r.arc(a).tail)
        );
        assert_eq!(g.weight(a), r.weight(a));
    }
    let fwd: usize = (0..7).map(|v| g.out_arcs(v).count()).sum();
    let bwd: usize = (0..7).map(|v| g.in_arcs(v).count()).sum();
    assert_eq!(fwd, 14);
    assert_eq!(bwd, 14);
}
