//! Brute-force references shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dynhh::graph::{ArcData, ArcId, Graph, NodeId, Weight, INFINITY};
use dynhh::oracle::dijkstra_sssp;
use dynhh::synth;
use proptest::prelude::*;

/// Same arcs with every direction flipped; arc ids are kept.
pub fn reversed(g: &Graph) -> Graph {
    let arcs = g
        .arcs()
        .iter()
        .map(|a| ArcData {
            tail: a.head,
            head: a.tail,
            weight: a.weight,
        })
        .collect();
    Graph::new(g.node_count(), arcs).unwrap()
}

/// All-pairs distances by one full Dijkstra per node; `INFINITY` if unreachable.
pub fn all_pairs(g: &Graph) -> Vec<Vec<Weight>> {
    (0..g.node_count() as NodeId)
        .map(|s| {
            let t = dijkstra_sssp(g, g, s);
            (0..g.node_count() as NodeId)
                .map(|v| t.dist(v).unwrap_or(INFINITY))
                .collect()
        })
        .collect()
}

/// Radius and sorted member list of `v`'s size-`h` neighbourhood, given the
/// distances from `v` to every node.
pub fn neighbourhood(dist_from_v: &[Weight], h: usize) -> (Weight, Vec<NodeId>) {
    let mut reachable: Vec<Weight> = dist_from_v
        .iter()
        .copied()
        .filter(|&d| d != INFINITY)
        .collect();
    reachable.sort_unstable();
    let radius = if reachable.len() >= h {
        reachable[h - 1]
    } else {
        INFINITY
    };
    let members = (0..dist_from_v.len() as NodeId)
        .filter(|&u| dist_from_v[u as usize] != INFINITY && dist_from_v[u as usize] <= radius)
        .collect();
    (radius, members)
}

/// Every arc `(u, v)` on a canonical path `s → t` with `v` outside the
/// forward neighbourhood of `s` and `u` outside the reverse neighbourhood
/// of `t`.
pub fn highway_arcs(g: &Graph, h: usize) -> BTreeSet<ArcId> {
    let fwd = all_pairs(g);
    let bwd = all_pairs(&reversed(g));
    let fwd_radius: Vec<Weight> = fwd.iter().map(|d| neighbourhood(d, h).0).collect();
    let bwd_radius: Vec<Weight> = bwd.iter().map(|d| neighbourhood(d, h).0).collect();
    let mut out = BTreeSet::new();
    for s in 0..g.node_count() as NodeId {
        let tree = dijkstra_sssp(g, g, s);
        for t in 0..g.node_count() as NodeId {
            let Some(path) = tree.path_to(t) else {
                continue;
            };
            for a in path {
                let arc = g.arc(a);
                let v_outside = fwd[s as usize][arc.head as usize] > fwd_radius[s as usize];
                let u_outside = bwd[t as usize][arc.tail as usize] > bwd_radius[t as usize];
                if v_outside && u_outside {
                    out.insert(a);
                }
            }
        }
    }
    out
}

/// Bellman–Ford distances from `s`.
pub fn bellman_ford(g: &Graph, s: NodeId) -> Vec<Weight> {
    let mut dist = vec![INFINITY; g.node_count()];
    dist[s as usize] = 0;
    for _ in 0..g.node_count() {
        let mut changed = false;
        for a in g.arcs() {
            let du = dist[a.tail as usize];
            if du != INFINITY && du + a.weight < dist[a.head as usize] {
                dist[a.head as usize] = du + a.weight;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Random sparse directed graph with weights 1–100.
pub fn random_graph(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (2..=max_nodes, 0u32..=40, any::<u64>()).prop_map(|(n, density, seed)| {
        synth::random_graph(n, n * density as usize / 10, 1, 100, seed)
    })
}
