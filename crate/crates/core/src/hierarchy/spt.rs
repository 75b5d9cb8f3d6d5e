use std::collections::HashMap;

use super::level::LevelGraph;
use super::radii::{intersection_size_capped, Neighborhoods};
use crate::dijkstra::{Dijkstra, Relaxed};
use crate::graph::{ArcId, Direction, NodeId, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Active,
    Passive,
}

/// When a settled node of a partial tree stops being active.
///
/// Both rules look at the tree path root, `u`, ..., `w` of a newly settled
/// active node `w ≠ u`.
#[derive(Debug, Clone, Copy)]
pub enum PassiveRule<'a> {
    /// `w` turns passive when the forward neighbourhoods of `u` and `w`
    /// share at most one node.
    SharedNeighbours,
    /// `w` turns passive when it lies outside the forward neighbourhood of
    /// `u` and the last path node `q` inside it lies outside the reverse
    /// neighbourhood of `w`, i.e. `d(q, w)` exceeds the reverse radius of `w`
    /// (indexed by node id). Every arc pruned this way is still found from
    /// the tree of `u` or through a leaf below `w`, so the lifted set over all
    /// roots equals the one from full trees.
    ReverseRadius(&'a [Weight]),
}

/// A settled node of a partial tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeNode {
    pub node: NodeId,
    pub dist: Weight,
    /// `(index of the parent in the settle order, arc, arc weight)`.
    pub parent: Option<(usize, ArcId, Weight)>,
    pub status: Status,
}

/// Partial shortest-path tree grown from one root until no active node is
/// left in the queue.
#[derive(Debug, Clone)]
pub struct PartialSpt {
    settled: Vec<TreeNode>,
    index: HashMap<NodeId, usize>,
    /// Nodes left in the queue when the growth stopped, with their last label.
    frontier: Vec<(NodeId, Weight, Status)>,
    is_leaf: Vec<bool>,
}

impl PartialSpt {
    pub fn root(&self) -> NodeId {
        self.settled[0].node
    }

    /// Settled nodes in settle order; the root comes first.
    pub fn settled(&self) -> &[TreeNode] {
        &self.settled
    }

    pub fn get(&self, v: NodeId) -> Option<&TreeNode> {
        self.index.get(&v).map(|&i| &self.settled[i])
    }

    pub fn frontier(&self) -> &[(NodeId, Weight, Status)] {
        &self.frontier
    }

    /// Settled non-root nodes without settled children, ascending by id.
    pub fn leaves(&self) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self
            .settled
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.is_leaf[i])
            .map(|(_, t)| t.node)
            .collect();
        out.sort_unstable();
        out
    }

    pub(crate) fn is_leaf_index(&self, i: usize) -> bool {
        self.is_leaf[i]
    }

    /// Tree arcs from the root to `v`, root side first.
    pub fn path_to(&self, v: NodeId) -> Option<Vec<ArcId>> {
        let mut i = *self.index.get(&v)?;
        let mut arcs = Vec::new();
        while let Some((p, a, _)) = self.settled[i].parent {
            arcs.push(a);
            i = p;
        }
        arcs.reverse();
        Some(arcs)
    }
}

/// Reusable per-thread buffers for [`build_partial_spt_with`].
pub struct SptScratch {
    dijkstra: Dijkstra,
    status: Vec<Status>,
    first_hop: Vec<NodeId>,
    /// Distance of the last path node inside the first hop's neighbourhood.
    anchor: Vec<Weight>,
    slot: Vec<usize>,
}

impl SptScratch {
    pub fn new(id_space: usize) -> SptScratch {
        SptScratch {
            dijkstra: Dijkstra::new(id_space),
            status: vec![Status::Active; id_space],
            first_hop: vec![0; id_space],
            anchor: vec![0; id_space],
            slot: vec![0; id_space],
        }
    }
}

/// Grows the tree from `root` under [`PassiveRule::SharedNeighbours`].
pub fn build_partial_spt(level: &LevelGraph, root: NodeId, forward: &Neighborhoods) -> PartialSpt {
    build_partial_spt_with(
        level,
        root,
        forward,
        PassiveRule::SharedNeighbours,
        &mut SptScratch::new(level.id_space()),
    )
}

/// Grows the tree from `root` until no active node is queued. A node takes
/// its parent's status unless `rule` turns it passive when it is settled.
pub fn build_partial_spt_with(
    level: &LevelGraph,
    root: NodeId,
    forward: &Neighborhoods,
    rule: PassiveRule<'_>,
    scratch: &mut SptScratch,
) -> PartialSpt {
    debug_assert!(level.contains(root));
    debug_assert_eq!(forward.direction(), Direction::Forward);
    let SptScratch {
        dijkstra,
        status,
        first_hop,
        anchor,
        slot,
    } = scratch;
    dijkstra.start(root);
    status[root as usize] = Status::Active;
    first_hop[root as usize] = root;
    let mut active_in_queue = 1usize;
    let mut settled: Vec<TreeNode> = Vec::new();

    while active_in_queue > 0 {
        let (w, dw) = dijkstra.pop().expect("active nodes are queued");
        let wi = w as usize;
        if status[wi] == Status::Active {
            active_in_queue -= 1;
        }
        let parent = dijkstra.parent(w).map(|p| {
            let pi = slot[p.node as usize];
            let weight = dw - settled[pi].dist;
            (pi, p.arc, weight)
        });
        if let Some((pi, _, _)) = parent {
            status[wi] = settled[pi].status;
            let u = first_hop[wi];
            let inside = forward.contains(u, w);
            anchor[wi] = if inside {
                dw
            } else {
                anchor[settled[pi].node as usize]
            };
            if status[wi] == Status::Active && u != w {
                let passive = match rule {
                    PassiveRule::SharedNeighbours => {
                        intersection_size_capped(forward.members(u), forward.members(w), 2) <= 1
                    }
                    PassiveRule::ReverseRadius(reverse) => !inside && dw - anchor[wi] > reverse[wi],
                };
                if passive {
                    status[wi] = Status::Passive;
                }
            }
        }
        slot[wi] = settled.len();
        settled.push(TreeNode {
            node: w,
            dist: dw,
            parent,
            status: status[wi],
        });

        for e in level.arcs_from(Direction::Forward, w) {
            let x = e.node;
            let xi = x as usize;
            let was_active =
                dijkstra.is_reached(x) && !dijkstra.is_settled(x) && status[xi] == Status::Active;
            match dijkstra.relax(w, x, e.arc, dw + e.weight) {
                Relaxed::Unchanged => continue,
                Relaxed::Inserted | Relaxed::Decreased | Relaxed::Reparented => {
                    status[xi] = status[wi];
                    first_hop[xi] = if w == root { x } else { first_hop[wi] };
                }
            }
            let now_active = status[xi] == Status::Active;
            match (was_active, now_active) {
                (false, true) => active_in_queue += 1,
                (true, false) => active_in_queue -= 1,
                _ => {}
            }
        }
    }

    let mut frontier: Vec<(NodeId, Weight, Status)> = dijkstra
        .reached_nodes()
        .iter()
        .filter(|&&v| !dijkstra.is_settled(v))
        .map(|&v| (v, dijkstra.dist(v).unwrap(), status[v as usize]))
        .collect();
    frontier.sort_unstable_by_key(|&(v, d, _)| (d, v));

    let mut is_leaf = vec![true; settled.len()];
    is_leaf[0] = false;
    for t in &settled {
        if let Some((p, _, _)) = t.parent {
            is_leaf[p] = false;
        }
    }
    let index = settled
        .iter()
        .enumerate()
        .map(|(i, t)| (t.node, i))
        .collect();
    PartialSpt {
        settled,
        index,
        frontier,
        is_leaf,
    }
}
