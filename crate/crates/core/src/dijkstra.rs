//! Stepped Dijkstra with canonical tie-breaking.
//!
//! Every shortest-path computation in the crate (oracle, neighbourhood radii,
//! partial trees, shortcut search) goes through [`Dijkstra`], so they agree on
//! one canonical shortest-path set: among equal-cost labels the one with the
//! lower predecessor node wins, then the lower arc id. Nodes leave the queue
//! by ascending `(cost, node)`.
//!
//! With strictly positive weights all equal-cost predecessors of a node are
//! settled before the node itself, so the final parent is the minimum over
//! all of them and the resulting paths are closed under taking subpaths.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{ArcId, NodeId, Weight, INFINITY};

const NO_NODE: NodeId = NodeId::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Parent {
    pub node: NodeId,
    pub arc: ArcId,
}

/// `true` if a label `(cost, parent)` should replace the current one.
#[inline]
pub fn label_improves(cost: Weight, parent: Parent, current_cost: Weight, current: Parent) -> bool {
    (cost, parent) < (current_cost, current)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relaxed {
    Inserted,
    Decreased,
    Reparented,
    Unchanged,
}

#[derive(Debug, Clone)]
pub struct Dijkstra {
    dist: Vec<Weight>,
    parent: Vec<Parent>,
    reached_epoch: Vec<u32>,
    settled_epoch: Vec<u32>,
    epoch: u32,
    heap: BinaryHeap<Reverse<(Weight, NodeId)>>,
    reached: Vec<NodeId>,
    settled_count: usize,
}

impl Dijkstra {
    pub fn new(node_count: usize) -> Dijkstra {
        Dijkstra {
            dist: vec![INFINITY; node_count],
            parent: vec![
                Parent {
                    node: NO_NODE,
                    arc: ArcId::MAX
                };
                node_count
            ],
            reached_epoch: vec![0; node_count],
            settled_epoch: vec![0; node_count],
            epoch: 0,
            heap: BinaryHeap::new(),
            reached: Vec::new(),
            settled_count: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.dist.len()
    }

    /// Resets the search and puts `root` in the queue with cost 0.
    pub fn start(&mut self, root: NodeId) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.reached_epoch.iter_mut().for_each(|e| *e = 0);
            self.settled_epoch.iter_mut().for_each(|e| *e = 0);
            self.epoch = 1;
        }
        self.heap.clear();
        self.reached.clear();
        self.settled_count = 0;
        self.touch(
            root,
            0,
            Parent {
                node: NO_NODE,
                arc: ArcId::MAX,
            },
        );
        self.heap.push(Reverse((0, root)));
    }

    #[inline]
    fn touch(&mut self, v: NodeId, cost: Weight, parent: Parent) {
        let i = v as usize;
        if self.reached_epoch[i] != self.epoch {
            self.reached_epoch[i] = self.epoch;
            self.reached.push(v);
        }
        self.dist[i] = cost;
        self.parent[i] = parent;
    }

    #[inline]
    pub fn is_reached(&self, v: NodeId) -> bool {
        self.reached_epoch[v as usize] == self.epoch
    }

    #[inline]
    pub fn is_settled(&self, v: NodeId) -> bool {
        self.settled_epoch[v as usize] == self.epoch
    }

    /// Tentative (or final, once settled) cost of `v`.
    #[inline]
    pub fn dist(&self, v: NodeId) -> Option<Weight> {
        self.is_reached(v).then(|| self.dist[v as usize])
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> Option<Parent> {
        if !self.is_reached(v) {
            return None;
        }
        let p = self.parent[v as usize];
        (p.node != NO_NODE).then_some(p)
    }

    /// Nodes reached in the current run, in first-reach order.
    pub fn reached_nodes(&self) -> &[NodeId] {
        &self.reached
    }

    pub fn settled_count(&self) -> usize {
        self.settled_count
    }

    /// Smallest key still in the queue, dropping stale entries.
    pub fn min_key(&mut self) -> Option<Weight> {
        while let Some(&Reverse((cost, v))) = self.heap.peek() {
            if self.is_settled(v) || cost != self.dist[v as usize] {
                self.heap.pop();
            } else {
                return Some(cost);
            }
        }
        None
    }

    /// Settles and returns the next node.
    pub fn pop(&mut self) -> Option<(NodeId, Weight)> {
        while let Some(Reverse((cost, v))) = self.heap.pop() {
            if self.is_settled(v) || cost != self.dist[v as usize] {
                continue;
            }
            self.settled_epoch[v as usize] = self.epoch;
            self.settled_count += 1;
            return Some((v, cost));
        }
        None
    }

    /// Offers the label `cost` for `to`, reached from `from` over `arc`.
    pub fn relax(&mut self, from: NodeId, to: NodeId, arc: ArcId, cost: Weight) -> Relaxed {
        let parent = Parent { node: from, arc };
        if !self.is_reached(to) {
            self.touch(to, cost, parent);
            self.heap.push(Reverse((cost, to)));
            return Relaxed::Inserted;
        }
        if self.is_settled(to) {
            return Relaxed::Unchanged;
        }
        let i = to as usize;
        if !label_improves(cost, parent, self.dist[i], self.parent[i]) {
            return Relaxed::Unchanged;
        }
        if cost < self.dist[i] {
            self.touch(to, cost, parent);
            self.heap.push(Reverse((cost, to)));
            Relaxed::Decreased
        } else {
            self.parent[i] = parent;
            Relaxed::Reparented
        }
    }

    /// Arcs from the root to `v` along parent links, root side first.
    pub fn arc_path(&self, v: NodeId) -> Option<Vec<ArcId>> {
        if !self.is_reached(v) {
            return None;
        }
        let mut arcs = Vec::new();
        let mut x = v;
        while let Some(p) = self.parent(x) {
            arcs.push(p.arc);
            x = p.node;
        }
        arcs.reverse();
        Some(arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_cost_prefers_lower_predecessor() {
        // 0 -> 2 -> 1 and 0 -> 3 -> 1 both cost 2; 2 < 3 wins regardless of order.
        let mut d = Dijkstra::new(4);
        d.start(0);
        assert_eq!(d.pop(), Some((0, 0)));
        d.relax(0, 3, 1, 1);
        d.relax(0, 2, 0, 1);
        assert_eq!(d.pop(), Some((2, 1)));
        assert_eq!(d.relax(2, 1, 2, 2), Relaxed::Inserted);
        assert_eq!(d.pop(), Some((3, 1)));
        assert_eq!(d.relax(3, 1, 3, 2), Relaxed::Unchanged);
        assert_eq!(d.parent(1), Some(Parent { node: 2, arc: 2 }));
    }

    #[test]
    fn reparent_on_tie_with_lower_node() {
        let mut d = Dijkstra::new(4);
        d.start(0);
        d.pop();
        d.relax(0, 3, 5, 1);
        d.relax(3, 1, 7, 4);
        assert_eq!(d.relax(2, 1, 9, 4), Relaxed::Reparented);
        assert_eq!(d.parent(1), Some(Parent { node: 2, arc: 9 }));
        assert_eq!(d.relax(2, 1, 8, 4), Relaxed::Reparented);
        assert_eq!(d.relax(2, 1, 10, 4), Relaxed::Unchanged);
    }

    #[test]
    fn restart_clears_state() {
        let mut d = Dijkstra::new(3);
        d.start(0);
        d.pop();
        d.relax(0, 1, 0, 4);
        d.start(2);
        assert!(!d.is_reached(1));
        assert_eq!(d.reached_nodes(), &[2]);
        assert_eq!(d.min_key(), Some(0));
    }
}
