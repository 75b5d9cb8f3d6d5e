//! Exact reference searches: single-source and bidirectional Dijkstra on the
//! original graph, under static weights or any overlay.

use std::time::Instant;

use crate::dijkstra::Dijkstra;
use crate::graph::{ArcId, ArcWeights, Direction, Graph, NodeId, Weight, INFINITY};
use crate::route::{QueryOutcome, QueryResult, SearchStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeState {
    Unreached,
    Reached,
    Settled,
}

#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    pub root: NodeId,
    dist: Vec<Weight>,
    parent: Vec<Option<(NodeId, ArcId)>>,
    state: Vec<NodeState>,
    settle_order: Vec<NodeId>,
}

impl ShortestPathTree {
    pub fn dist(&self, v: NodeId) -> Option<Weight> {
        let d = self.dist[v as usize];
        (d != INFINITY).then_some(d)
    }

    pub fn parent(&self, v: NodeId) -> Option<(NodeId, ArcId)> {
        self.parent[v as usize]
    }

    pub fn state(&self, v: NodeId) -> NodeState {
        self.state[v as usize]
    }

    /// Nodes in the order they were settled; position = Dijkstra rank.
    pub fn settle_order(&self) -> &[NodeId] {
        &self.settle_order
    }

    pub fn path_to(&self, v: NodeId) -> Option<Vec<ArcId>> {
        self.dist(v)?;
        let mut arcs = Vec::new();
        let mut x = v;
        while let Some((p, a)) = self.parent[x as usize] {
            arcs.push(a);
            x = p;
        }
        arcs.reverse();
        Some(arcs)
    }
}

pub fn dijkstra_sssp<W: ArcWeights>(graph: &Graph, weights: &W, root: NodeId) -> ShortestPathTree {
    let mut d = Dijkstra::new(graph.node_count());
    let mut settle_order = Vec::new();
    d.start(root);
    while let Some((u, du)) = d.pop() {
        settle_order.push(u);
        for (arc, head, _) in graph.out_arcs(u) {
            d.relax(u, head, arc, du + weights.weight(arc));
        }
    }
    let n = graph.node_count();
    let mut dist = vec![INFINITY; n];
    let mut parent = vec![None; n];
    let mut state = vec![NodeState::Unreached; n];
    for &v in d.reached_nodes() {
        dist[v as usize] = d.dist(v).unwrap();
        parent[v as usize] = d.parent(v).map(|p| (p.node, p.arc));
        state[v as usize] = if d.is_settled(v) {
            NodeState::Settled
        } else {
            NodeState::Reached
        };
    }
    ShortestPathTree {
        root,
        dist,
        parent,
        state,
        settle_order,
    }
}

/// Plain unidirectional Dijkstra stopped once `target` is settled.
pub fn dijkstra_to<W: ArcWeights>(
    graph: &Graph,
    weights: &W,
    source: NodeId,
    target: NodeId,
) -> QueryOutcome {
    let started = Instant::now();
    let mut d = Dijkstra::new(graph.node_count());
    d.start(source);
    let mut found = None;
    while let Some((u, du)) = d.pop() {
        if u == target {
            found = Some(du);
            break;
        }
        for (arc, head, _) in graph.out_arcs(u) {
            d.relax(u, head, arc, du + weights.weight(arc));
        }
    }
    let stats = SearchStats {
        settled: d.settled_count(),
        explored: d.reached_nodes().len(),
        duration: started.elapsed(),
    };
    match found {
        None => QueryOutcome::NoPath(stats),
        Some(cost) => {
            let arcs = d.arc_path(target).unwrap();
            QueryOutcome::Found(QueryResult {
                source,
                target,
                hops: arcs.len(),
                arcs,
                cost,
                stats,
            })
        }
    }
}

/// Bidirectional Dijkstra. Expands the side with the smaller queue head
/// (forward on ties) and stops once the two heads sum to at least the best
/// meeting cost.
pub fn dijkstra_p2p<W: ArcWeights>(
    graph: &Graph,
    weights: &W,
    source: NodeId,
    target: NodeId,
) -> QueryOutcome {
    let started = Instant::now();
    let n = graph.node_count();
    let mut fwd = Dijkstra::new(n);
    let mut bwd = Dijkstra::new(n);
    fwd.start(source);
    bwd.start(target);
    let mut best = INFINITY;
    let mut meeting = None;
    if source == target {
        best = 0;
        meeting = Some(source);
    }

    loop {
        let (kf, kb) = (fwd.min_key(), bwd.min_key());
        let direction = match (kf, kb) {
            (None, None) => break,
            (Some(a), Some(b)) => {
                if a.saturating_add(b) >= best {
                    break;
                }
                if a <= b {
                    Direction::Forward
                } else {
                    Direction::Backward
                }
            }
            // One side is exhausted: nothing it has not reached can be on a path.
            _ => break,
        };
        let (this, other) = match direction {
            Direction::Forward => (&mut fwd, &bwd),
            Direction::Backward => (&mut bwd, &fwd),
        };
        let (u, du) = this.pop().unwrap();
        let csr = graph.csr(direction);
        for e in csr.neighbors(u) {
            let cost = du + weights.weight(e.arc);
            this.relax(u, e.node, e.arc, cost);
            if let Some(other_cost) = other.dist(e.node) {
                let total = this.dist(e.node).unwrap() + other_cost;
                if total < best || (total == best && Some(e.node) < meeting) {
                    best = total;
                    meeting = Some(e.node);
                }
            }
        }
    }

    let stats = SearchStats {
        settled: fwd.settled_count() + bwd.settled_count(),
        explored: fwd.reached_nodes().len() + bwd.reached_nodes().len(),
        duration: started.elapsed(),
    };
    let Some(m) = meeting else {
        return QueryOutcome::NoPath(stats);
    };
    let mut arcs = fwd.arc_path(m).unwrap();
    let mut x = m;
    while let Some(p) = bwd.parent(x) {
        arcs.push(p.arc);
        x = p.node;
    }
    let cost = fwd.dist(m).unwrap() + bwd.dist(m).unwrap();
    QueryOutcome::Found(QueryResult {
        source,
        target,
        hops: arcs.len(),
        arcs,
        cost,
        stats,
    })
}
