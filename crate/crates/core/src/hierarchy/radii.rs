use rayon::prelude::*;

use super::level::LevelGraph;
use crate::dijkstra::Dijkstra;
use crate::graph::{Direction, NodeId, Weight, INFINITY};

/// Forward and reverse neighbourhood radii of one level, indexed by node id.
/// Nodes outside the level carry [`INFINITY`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRadii {
    pub forward: Vec<Weight>,
    pub backward: Vec<Weight>,
}

impl LevelRadii {
    pub fn get(&self, direction: Direction) -> &[Weight] {
        match direction {
            Direction::Forward => &self.forward,
            Direction::Backward => &self.backward,
        }
    }
}

/// Radii plus explicit member lists for one direction.
///
/// The member list of `v` is every node at distance at most `radius(v)`,
/// so it may exceed `h` entries when several nodes tie with the `h`-th
/// settled one. With that convention `u ∈ N(v) ⟺ d(v,u) ≤ radius(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhoods {
    direction: Direction,
    radius: Vec<Weight>,
    members: Vec<Vec<NodeId>>,
}

impl Neighborhoods {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn radius(&self, v: NodeId) -> Weight {
        self.radius[v as usize]
    }

    pub fn radii(&self) -> &[Weight] {
        &self.radius
    }

    /// Sorted member list of `v`; empty for nodes outside the level.
    pub fn members(&self, v: NodeId) -> &[NodeId] {
        &self.members[v as usize]
    }

    pub fn contains(&self, v: NodeId, u: NodeId) -> bool {
        self.members[v as usize].binary_search(&u).is_ok()
    }

    pub fn into_radii(self) -> Vec<Weight> {
        self.radius
    }
}

/// Runs the bounded search from `v` and returns its radius and members.
pub(crate) fn neighborhood_of(
    level: &LevelGraph,
    direction: Direction,
    v: NodeId,
    h: usize,
    dijkstra: &mut Dijkstra,
) -> (Weight, Vec<NodeId>) {
    assert!(h >= 1, "neighbourhood size must be positive");
    dijkstra.start(v);
    let mut members = Vec::with_capacity(h);
    let mut radius = INFINITY;
    while let Some(key) = dijkstra.min_key() {
        if members.len() >= h && key > radius {
            break;
        }
        let (u, du) = dijkstra.pop().unwrap();
        members.push(u);
        if members.len() == h {
            radius = du;
        }
        for e in level.arcs_from(direction, u) {
            dijkstra.relax(u, e.node, e.arc, du + e.weight);
        }
    }
    members.sort_unstable();
    (radius, members)
}

pub fn compute_neighborhoods(level: &LevelGraph, direction: Direction, h: usize) -> Neighborhoods {
    let n = level.id_space();
    let results: Vec<(Weight, Vec<NodeId>)> = level
        .nodes()
        .par_iter()
        .map_init(
            || Dijkstra::new(n),
            |d, &v| neighborhood_of(level, direction, v, h, d),
        )
        .collect();
    let mut radius = vec![INFINITY; n];
    let mut members = vec![Vec::new(); n];
    for (&v, (r, m)) in level.nodes().iter().zip(results) {
        radius[v as usize] = r;
        members[v as usize] = m;
    }
    Neighborhoods {
        direction,
        radius,
        members,
    }
}

/// Forward and reverse radii of every node in `level`.
pub fn compute_radii(level: &LevelGraph, h: usize) -> LevelRadii {
    LevelRadii {
        forward: compute_neighborhoods(level, Direction::Forward, h).into_radii(),
        backward: compute_neighborhoods(level, Direction::Backward, h).into_radii(),
    }
}

/// Size of `a ∩ b` for sorted slices, counting no further than `cap`.
pub(crate) fn intersection_size_capped(a: &[NodeId], b: &[NodeId], cap: usize) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() && count < cap {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}
