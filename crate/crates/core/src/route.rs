use std::time::Duration;

use crate::graph::{ArcId, ArcWeights, Graph, NodeId, Weight};

/// Work done by one point-to-point search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Nodes removed from a priority queue, summed over both directions.
    pub settled: usize,
    /// Nodes that received a label, summed over both directions.
    pub explored: usize,
    pub duration: Duration,
}

/// A source–target path over original arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub source: NodeId,
    pub target: NodeId,
    pub arcs: Vec<ArcId>,
    /// Arcs on the path as it was searched, counting each shortcut once.
    pub hops: usize,
    pub cost: Weight,
    pub stats: SearchStats,
}

impl QueryResult {
    /// Node sequence from source to target; a single node when they coincide.
    pub fn nodes(&self, graph: &Graph) -> Vec<NodeId> {
        path_nodes(graph, self.source, &self.arcs)
    }

    /// Cost of the path under another set of weights.
    pub fn cost_under<W: ArcWeights>(&self, weights: &W) -> Weight {
        self.arcs.iter().map(|&a| weights.weight(a)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryOutcome {
    Found(QueryResult),
    NoPath(SearchStats),
}

impl QueryOutcome {
    pub fn found(&self) -> Option<&QueryResult> {
        match self {
            QueryOutcome::Found(r) => Some(r),
            QueryOutcome::NoPath(_) => None,
        }
    }

    pub fn into_found(self) -> Option<QueryResult> {
        match self {
            QueryOutcome::Found(r) => Some(r),
            QueryOutcome::NoPath(_) => None,
        }
    }

    pub fn cost(&self) -> Option<Weight> {
        self.found().map(|r| r.cost)
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            QueryOutcome::Found(r) => r.stats,
            QueryOutcome::NoPath(s) => *s,
        }
    }

    pub(crate) fn set_duration(&mut self, d: Duration) {
        match self {
            QueryOutcome::Found(r) => r.stats.duration = d,
            QueryOutcome::NoPath(s) => s.duration = d,
        }
    }
}

pub fn path_nodes(graph: &Graph, source: NodeId, arcs: &[ArcId]) -> Vec<NodeId> {
    let mut nodes = Vec::with_capacity(arcs.len() + 1);
    nodes.push(source);
    nodes.extend(arcs.iter().map(|&a| graph.arc(a).head));
    nodes
}

/// Checks that `arcs` form a connected walk from `source` to `target`.
pub fn is_connected_path(graph: &Graph, source: NodeId, target: NodeId, arcs: &[ArcId]) -> bool {
    let mut at = source;
    for &a in arcs {
        if a as usize >= graph.arc_count() {
            return false;
        }
        let arc = graph.arc(a);
        if arc.tail != at {
            return false;
        }
        at = arc.head;
    }
    at == target
}
