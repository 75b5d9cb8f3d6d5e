//! Multi-level bidirectional search on a [`HighwayHierarchy`].
//!
//! Every label carries a level and a gap: the static distance budget left
//! before the search leaves the neighbourhood of the node where it entered
//! the current level. An arc longer than the gap moves the label up a level
//! (possibly several), and only arcs whose level reaches the label's level
//! may be used. Gaps are spent in static weights; queue keys are dynamic
//! costs taken from the caller's weights.

use std::time::Instant;

use crate::dijkstra::{Dijkstra, Relaxed};
use crate::graph::{ArcId, ArcWeights, Direction, NodeId, Weight, INFINITY};
use crate::hierarchy::HighwayHierarchy;
use crate::route::{QueryOutcome, QueryResult, SearchStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gap {
    /// The label sits on a node bypassed at its level and has not reached
    /// that level's core yet; no budget applies.
    Open,
    /// Remaining static budget; [`INFINITY`] never runs out.
    Left(Weight),
}

/// One settled label, for inspecting a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub direction: Direction,
    pub node: NodeId,
    pub key: Weight,
    pub level: u8,
    pub gap: Gap,
    /// Level of the label this one was reached from.
    pub parent_level: Option<u8>,
}

struct Side {
    dijkstra: Dijkstra,
    level: Vec<u8>,
    gap: Vec<Gap>,
    done: bool,
}

impl Side {
    fn new(n: usize) -> Side {
        Side {
            dijkstra: Dijkstra::new(n),
            level: vec![0; n],
            gap: vec![Gap::Open; n],
            done: false,
        }
    }
}

/// Reusable query state for one hierarchy.
pub struct QueryEngine<'h> {
    h: &'h HighwayHierarchy,
    forward: Side,
    backward: Side,
}

impl<'h> QueryEngine<'h> {
    pub fn new(h: &'h HighwayHierarchy) -> QueryEngine<'h> {
        let n = h.node_count();
        QueryEngine {
            h,
            forward: Side::new(n),
            backward: Side::new(n),
        }
    }

    pub fn hierarchy(&self) -> &'h HighwayHierarchy {
        self.h
    }

    pub fn query<W: ArcWeights>(
        &mut self,
        weights: &W,
        source: NodeId,
        target: NodeId,
    ) -> QueryOutcome {
        self.run(weights, source, target, None)
    }

    /// Like [`QueryEngine::query`], also returning every settled label in
    /// settle order.
    pub fn query_with_trace<W: ArcWeights>(
        &mut self,
        weights: &W,
        source: NodeId,
        target: NodeId,
    ) -> (QueryOutcome, Vec<TraceEntry>) {
        let mut trace = Vec::new();
        let out = self.run(weights, source, target, Some(&mut trace));
        (out, trace)
    }

    fn entry_gap(&self, direction: Direction, v: NodeId, level: u8) -> Gap {
        if self.h.in_core(v, level) {
            Gap::Left(self.h.radius(direction, v, level))
        } else {
            Gap::Open
        }
    }

    fn run<W: ArcWeights>(
        &mut self,
        weights: &W,
        source: NodeId,
        target: NodeId,
        mut trace: Option<&mut Vec<TraceEntry>>,
    ) -> QueryOutcome {
        let started = Instant::now();
        let n = self.h.node_count();
        assert!(
            (source as usize) < n && (target as usize) < n,
            "query node out of range"
        );

        for (side, root) in [(Direction::Forward, source), (Direction::Backward, target)] {
            let gap = self.entry_gap(side, root, 0);
            let s = self.side_mut(side);
            s.dijkstra.start(root);
            s.level[root as usize] = 0;
            s.gap[root as usize] = gap;
            s.done = false;
        }
        let mut meeting = None;
        if source == target {
            Meeting::offer(&mut meeting, 0, 0, source);
            let s = &mut self.forward;
            s.dijkstra.pop();
            if let Some(t) = trace.as_deref_mut() {
                t.push(TraceEntry {
                    direction: Direction::Forward,
                    node: source,
                    key: 0,
                    level: 0,
                    gap: s.gap[source as usize],
                    parent_level: None,
                });
            }
        }

        loop {
            // A direction stops once its smallest key can't improve on the
            // best meeting cost.
            for s in [&mut self.forward, &mut self.backward] {
                let best = meeting.map_or(INFINITY, |m| m.cost);
                if !s.done && s.dijkstra.min_key().is_none_or(|k| k >= best) {
                    s.done = true;
                }
            }
            let direction = match (self.forward.done, self.backward.done) {
                (true, true) => break,
                (false, true) => Direction::Forward,
                (true, false) => Direction::Backward,
                (false, false) => {
                    let kf = self.forward.dijkstra.min_key().unwrap();
                    let kb = self.backward.dijkstra.min_key().unwrap();
                    if kf <= kb {
                        Direction::Forward
                    } else {
                        Direction::Backward
                    }
                }
            };
            self.settle_next(weights, direction, &mut meeting, trace.as_deref_mut());
        }

        let stats = SearchStats {
            settled: self.forward.dijkstra.settled_count() + self.backward.dijkstra.settled_count(),
            explored: self.forward.dijkstra.reached_nodes().len()
                + self.backward.dijkstra.reached_nodes().len(),
            duration: started.elapsed(),
        };
        let Some(Meeting { node: m, .. }) = meeting else {
            return QueryOutcome::NoPath(stats);
        };
        let packed = self.packed_path(m);
        let arcs = self.h.unpack_path(&packed);
        let cost = arcs.iter().map(|&a| weights.weight(a)).sum();
        let mut out = QueryOutcome::Found(QueryResult {
            source,
            target,
            arcs,
            hops: packed.len(),
            cost,
            stats,
        });
        out.set_duration(started.elapsed());
        out
    }

    fn side_mut(&mut self, direction: Direction) -> &mut Side {
        match direction {
            Direction::Forward => &mut self.forward,
            Direction::Backward => &mut self.backward,
        }
    }

    fn settle_next<W: ArcWeights>(
        &mut self,
        weights: &W,
        direction: Direction,
        meeting: &mut Option<Meeting>,
        trace: Option<&mut Vec<TraceEntry>>,
    ) {
        let h = self.h;
        let top = h.levels();
        let (this, other) = match direction {
            Direction::Forward => (&mut self.forward, &self.backward),
            Direction::Backward => (&mut self.backward, &self.forward),
        };
        let (u, du) = this.dijkstra.pop().expect("caller checked the queue");
        let (level, gap) = (this.level[u as usize], this.gap[u as usize]);
        if let Some(t) = trace {
            let parent_level = this.dijkstra.parent(u).map(|p| this.level[p.node as usize]);
            t.push(TraceEntry {
                direction,
                node: u,
                key: du,
                level,
                gap,
                parent_level,
            });
        }
        let forward_part = |here: Weight, there: Weight| match direction {
            Direction::Forward => here,
            Direction::Backward => there,
        };
        if let Some(dv) = other.dijkstra.dist(u) {
            Meeting::offer(meeting, du + dv, forward_part(du, dv), u);
        }

        let u_core_at = |l: u8| h.in_core(u, l);
        for e in h.csr(direction).neighbors(u) {
            let v = e.node;
            let (mut l, mut g) = (level, gap);
            while let Gap::Left(x) = g {
                if e.weight <= x || l >= top {
                    break;
                }
                l += 1;
                g = if u_core_at(l) {
                    Gap::Left(h.radius(direction, u, l))
                } else {
                    Gap::Open
                };
            }
            if h.arc(e.arc).max_level < l {
                continue;
            }
            // Paths from the core into nodes bypassed on this level are
            // covered by shortcuts.
            if l > 0 && u_core_at(l) && h.bypass_level(v) == l {
                continue;
            }
            let next_gap = match g {
                Gap::Open if h.in_core(v, l) => Gap::Left(h.radius(direction, v, l)),
                Gap::Open => Gap::Open,
                Gap::Left(INFINITY) => Gap::Left(INFINITY),
                Gap::Left(x) => Gap::Left(x - e.weight),
            };
            let cost = du + h.arc_cost(weights, e.arc);
            match this.dijkstra.relax(u, v, e.arc, cost) {
                Relaxed::Unchanged => {}
                Relaxed::Inserted | Relaxed::Decreased | Relaxed::Reparented => {
                    this.level[v as usize] = l;
                    this.gap[v as usize] = next_gap;
                }
            }
        }
    }

    /// Hierarchy arcs from source to target through the meeting node.
    fn packed_path(&self, m: NodeId) -> Vec<ArcId> {
        let mut arcs = self
            .forward
            .dijkstra
            .arc_path(m)
            .expect("meeting node reached forward");
        let mut x = m;
        while let Some(p) = self.backward.dijkstra.parent(x) {
            arcs.push(p.arc);
            x = p.node;
        }
        arcs
    }
}

/// Best meeting node so far. Equal costs go to the node farther from the
/// source, then to the lower id, so the path follows the forward tree as
/// long as possible.
#[derive(Debug, Clone, Copy)]
struct Meeting {
    cost: Weight,
    forward_cost: Weight,
    node: NodeId,
}

impl Meeting {
    fn offer(best: &mut Option<Meeting>, cost: Weight, forward_cost: Weight, node: NodeId) {
        let better = match best {
            None => true,
            Some(m) => {
                (cost, std::cmp::Reverse(forward_cost), node)
                    < (m.cost, std::cmp::Reverse(m.forward_cost), m.node)
            }
        };
        if better {
            *best = Some(Meeting {
                cost,
                forward_cost,
                node,
            });
        }
    }
}

/// Hierarchy query with keys from `weights`.
pub fn query<W: ArcWeights>(
    h: &HighwayHierarchy,
    weights: &W,
    source: NodeId,
    target: NodeId,
) -> QueryOutcome {
    QueryEngine::new(h).query(weights, source, target)
}

/// Static-optimal path re-costed under `weights`.
pub fn query_naive<W: ArcWeights>(
    h: &HighwayHierarchy,
    weights: &W,
    source: NodeId,
    target: NodeId,
) -> QueryOutcome {
    naive_with(&mut QueryEngine::new(h), weights, source, target)
}

pub fn naive_with<W: ArcWeights>(
    engine: &mut QueryEngine<'_>,
    weights: &W,
    source: NodeId,
    target: NodeId,
) -> QueryOutcome {
    let graph = engine.hierarchy().graph();
    match engine.query(graph, source, target) {
        QueryOutcome::Found(mut r) => {
            r.cost = r.cost_under(weights);
            QueryOutcome::Found(r)
        }
        none => none,
    }
}
