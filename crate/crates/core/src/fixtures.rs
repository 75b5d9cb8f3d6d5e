//! Small hand-checked graphs shared by unit tests, integration tests and the
//! acceptance suite.

use crate::graph::{ArcData, Graph, NodeId, Weight};

/// Seven-node directed example used throughout the tests, as
/// `(tail, head, weight)` in arc-id order.
///
/// With H = 3 the forward neighbourhoods are {0,1,2} for nodes 0..=2,
/// {3,4,5} for nodes 3..=5 and {3,5,6} for node 6. The partial tree from
/// node 0 settles 0, 1, 2 (active) and 6, 4 (passive); its leaves are 4 and 6
/// and the arcs (1,6) and (2,4) are the only ones promoted to level 1.
pub const EXAMPLE_ARCS: [(NodeId, NodeId, Weight); 14] = [
    (0, 1, 1),
    (0, 2, 2),
    (1, 6, 4),
    (2, 4, 6),
    (6, 3, 4),
    (4, 5, 2),
    (1, 0, 1),
    (2, 0, 1),
    (4, 3, 1),
    (4, 6, 3),
    (2, 6, 3),
    (3, 4, 3),
    (5, 4, 3),
    (6, 5, 5),
];

pub const EXAMPLE_NODES: usize = 7;

pub fn example_graph() -> Graph {
    graph_from(EXAMPLE_NODES, &EXAMPLE_ARCS)
}

/// The example in the text edge-list format.
pub fn example_text() -> String {
    let mut s = format!("{} {}\n", EXAMPLE_NODES, EXAMPLE_ARCS.len());
    for (t, h, w) in EXAMPLE_ARCS {
        s.push_str(&format!("{t} {h} {w}\n"));
    }
    s
}

/// Builds a graph from `(tail, head, weight)` triples; panics on invalid input.
pub fn graph_from(node_count: usize, arcs: &[(NodeId, NodeId, Weight)]) -> Graph {
    let arcs = arcs
        .iter()
        .map(|&(tail, head, weight)| ArcData { tail, head, weight })
        .collect();
    Graph::new(node_count, arcs).expect("fixture graph is valid")
}
