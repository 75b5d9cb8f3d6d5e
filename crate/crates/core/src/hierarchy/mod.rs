//! Hierarchy construction: neighbourhood radii, partial trees, arc
//! promotion and contraction, repeated level by level.

pub mod contract;
mod io;
pub mod level;
pub mod lift;
pub mod radii;
pub mod spt;

use rayon::prelude::*;

pub use contract::{contract_level, BypassPolicy, Contraction, NewShortcut};
pub use io::{
    deserialize_hierarchy, read_hierarchy_file, serialize_hierarchy, write_hierarchy_file,
    HierarchyIoError,
};
pub use level::LevelGraph;
pub use lift::{lift_arcs_direct, lift_arcs_slack, lift_arcs_slack_forward_init};
pub use radii::{compute_neighborhoods, compute_radii, LevelRadii, Neighborhoods};
pub use spt::{
    build_partial_spt, build_partial_spt_with, PartialSpt, PassiveRule, SptScratch, Status,
    TreeNode,
};

use crate::graph::{AdjEntry, ArcId, ArcWeights, Csr, Direction, Graph, NodeId, Weight, INFINITY};

/// Levels are stored as `u8`.
pub const MAX_LEVELS: u32 = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HierarchyParams {
    /// Neighbourhood size H.
    pub neighborhood_size: u32,
    /// Number of levels L built above the base graph.
    pub levels: u32,
    pub bypass: BypassPolicy,
}

impl HierarchyParams {
    pub fn new(neighborhood_size: u32, levels: u32) -> HierarchyParams {
        HierarchyParams {
            neighborhood_size,
            levels,
            bypass: BypassPolicy::default(),
        }
    }
}

/// An arc of the hierarchy. Ids below the original arc count are the
/// graph's own arcs; shortcuts follow in creation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HierarchyArc {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: Weight,
    /// Highest level the arc belongs to.
    pub max_level: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortcut {
    /// Level whose contraction created the shortcut.
    pub level: u8,
    /// Hierarchy arcs of the bypassed path; may themselves be shortcuts.
    pub constituents: Vec<ArcId>,
}

/// One row of the level size table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelSize {
    pub level: u32,
    /// Nodes of the level graph before contraction.
    pub nodes: usize,
    /// Nodes left after contraction.
    pub core_nodes: usize,
    pub original_arcs: usize,
    pub shortcut_arcs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighwayHierarchy {
    graph: Graph,
    params: HierarchyParams,
    arcs: Vec<HierarchyArc>,
    shortcuts: Vec<Shortcut>,
    core_level: Vec<u8>,
    bypass_level: Vec<u8>,
    radii: Vec<LevelRadii>,
    expansion_first: Vec<usize>,
    expansion: Vec<ArcId>,
    forward: Csr,
    backward: Csr,
}

pub fn build_hierarchy(graph: &Graph, params: HierarchyParams) -> HighwayHierarchy {
    assert!(
        params.neighborhood_size >= 1,
        "neighbourhood size must be positive"
    );
    assert!(params.levels <= MAX_LEVELS, "at most {MAX_LEVELS} levels");
    let n = graph.node_count();
    let h = params.neighborhood_size as usize;
    let mut arcs: Vec<HierarchyArc> = graph
        .arcs()
        .iter()
        .map(|a| HierarchyArc {
            tail: a.tail,
            head: a.head,
            weight: a.weight,
            max_level: 0,
        })
        .collect();
    let mut shortcuts = Vec::new();
    let mut core_level = vec![0u8; n];
    let mut bypass_level = vec![0u8; n];
    let mut radii = Vec::with_capacity(params.levels as usize);

    for l in 0..params.levels as u8 {
        let member: Vec<bool> = core_level.iter().map(|&c| c >= l).collect();
        let level = LevelGraph::new(
            member,
            &level_arcs(&arcs, l, |v| core_level[v as usize] >= l),
        );
        let forward = compute_neighborhoods(&level, Direction::Forward, h);
        let backward = compute_neighborhoods(&level, Direction::Backward, h).into_radii();

        let promoted: Vec<Vec<ArcId>> = level
            .nodes()
            .par_iter()
            .map_init(
                || SptScratch::new(n),
                |scratch, &root| {
                    let rule = PassiveRule::ReverseRadius(&backward);
                    let tree = build_partial_spt_with(&level, root, &forward, rule, scratch);
                    lift_arcs_slack(&tree, forward.radii(), &backward)
                },
            )
            .collect();
        for a in promoted.into_iter().flatten() {
            arcs[a as usize].max_level = l + 1;
        }
        radii.push(LevelRadii {
            forward: forward.into_radii(),
            backward,
        });

        let mut next_member = vec![false; n];
        for a in arcs.iter().filter(|a| a.max_level > l) {
            next_member[a.tail as usize] = true;
            next_member[a.head as usize] = true;
        }
        let next_arcs = level_arcs(&arcs, l + 1, |_| true);
        let next = LevelGraph::new(next_member, &next_arcs);
        let contraction = contract_level(&next, params.bypass);
        for &b in &contraction.bypassed {
            bypass_level[b as usize] = l + 1;
        }
        for &v in next.nodes() {
            if bypass_level[v as usize] != l + 1 {
                core_level[v as usize] = l + 1;
            }
        }
        for sc in contraction.shortcuts {
            arcs.push(HierarchyArc {
                tail: sc.tail,
                head: sc.head,
                weight: sc.weight,
                max_level: l + 1,
            });
            shortcuts.push(Shortcut {
                level: l + 1,
                constituents: sc.path,
            });
        }
    }

    HighwayHierarchy::assemble(
        graph.clone(),
        params,
        arcs,
        shortcuts,
        core_level,
        bypass_level,
        radii,
    )
}

fn level_arcs(
    arcs: &[HierarchyArc],
    level: u8,
    keep: impl Fn(NodeId) -> bool,
) -> Vec<(ArcId, NodeId, NodeId, Weight)> {
    arcs.iter()
        .enumerate()
        .filter(|(_, a)| a.max_level >= level && keep(a.tail) && keep(a.head))
        .map(|(i, a)| (i as ArcId, a.tail, a.head, a.weight))
        .collect()
}

impl HighwayHierarchy {
    fn assemble(
        graph: Graph,
        params: HierarchyParams,
        arcs: Vec<HierarchyArc>,
        shortcuts: Vec<Shortcut>,
        core_level: Vec<u8>,
        bypass_level: Vec<u8>,
        radii: Vec<LevelRadii>,
    ) -> HighwayHierarchy {
        let m = graph.arc_count();
        let mut expansion_first = Vec::with_capacity(arcs.len() + 1);
        let mut expansion = Vec::with_capacity(m);
        expansion_first.push(0);
        for a in 0..arcs.len() {
            if a < m {
                expansion.push(a as ArcId);
            } else {
                for &c in &shortcuts[a - m].constituents {
                    let (lo, hi) = (expansion_first[c as usize], expansion_first[c as usize + 1]);
                    expansion.extend_from_within(lo..hi);
                }
            }
            expansion_first.push(expansion.len());
        }
        let mut out = Vec::with_capacity(arcs.len());
        let mut inc = Vec::with_capacity(arcs.len());
        for (i, a) in arcs.iter().enumerate() {
            let arc = i as ArcId;
            out.push((
                a.tail,
                AdjEntry {
                    node: a.head,
                    arc,
                    weight: a.weight,
                },
            ));
            inc.push((
                a.head,
                AdjEntry {
                    node: a.tail,
                    arc,
                    weight: a.weight,
                },
            ));
        }
        let n = graph.node_count();
        HighwayHierarchy {
            graph,
            params,
            arcs,
            shortcuts,
            core_level,
            bypass_level,
            radii,
            expansion_first,
            expansion,
            forward: Csr::build(n, out),
            backward: Csr::build(n, inc),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn params(&self) -> HierarchyParams {
        self.params
    }

    /// Number of levels above the base graph.
    pub fn levels(&self) -> u8 {
        self.params.levels as u8
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Original arcs plus shortcuts.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn original_arc_count(&self) -> usize {
        self.graph.arc_count()
    }

    pub fn arcs(&self) -> &[HierarchyArc] {
        &self.arcs
    }

    #[inline]
    pub fn arc(&self, a: ArcId) -> HierarchyArc {
        self.arcs[a as usize]
    }

    #[inline]
    pub fn is_shortcut(&self, a: ArcId) -> bool {
        a as usize >= self.graph.arc_count()
    }

    pub fn shortcut(&self, a: ArcId) -> Option<&Shortcut> {
        (a as usize)
            .checked_sub(self.graph.arc_count())
            .map(|i| &self.shortcuts[i])
    }

    pub fn shortcuts(&self) -> &[Shortcut] {
        &self.shortcuts
    }

    /// Original arcs an arc stands for, in path order.
    #[inline]
    pub fn expansion(&self, a: ArcId) -> &[ArcId] {
        let a = a as usize;
        &self.expansion[self.expansion_first[a]..self.expansion_first[a + 1]]
    }

    /// Replaces every shortcut in `arcs` by the original arcs it stands for.
    pub fn unpack_path(&self, arcs: &[ArcId]) -> Vec<ArcId> {
        arcs.iter()
            .flat_map(|&a| self.expansion(a).iter().copied())
            .collect()
    }

    /// Dynamic cost of any hierarchy arc: the sum over its expansion.
    #[inline]
    pub fn arc_cost<W: ArcWeights>(&self, weights: &W, a: ArcId) -> Weight {
        if self.is_shortcut(a) {
            self.expansion(a).iter().map(|&o| weights.weight(o)).sum()
        } else {
            weights.weight(a)
        }
    }

    /// Highest level whose core contains `v` (0 for every node).
    #[inline]
    pub fn core_level(&self, v: NodeId) -> u8 {
        self.core_level[v as usize]
    }

    /// Level at which `v` was bypassed, 0 if never.
    #[inline]
    pub fn bypass_level(&self, v: NodeId) -> u8 {
        self.bypass_level[v as usize]
    }

    /// Membership in the level graph before contraction.
    pub fn in_level(&self, v: NodeId, level: u8) -> bool {
        self.core_level(v) >= level || self.bypass_level(v) == level
    }

    #[inline]
    pub fn in_core(&self, v: NodeId, level: u8) -> bool {
        self.core_level(v) >= level
    }

    /// Neighbourhood radius of `v` in the given level's core; infinite on
    /// the top level and for nodes outside the core.
    #[inline]
    pub fn radius(&self, direction: Direction, v: NodeId, level: u8) -> Weight {
        match self.radii.get(level as usize) {
            Some(r) => r.get(direction)[v as usize],
            None => INFINITY,
        }
    }

    pub fn level_radii(&self) -> &[LevelRadii] {
        &self.radii
    }

    pub(crate) fn csr(&self, direction: Direction) -> &Csr {
        match direction {
            Direction::Forward => &self.forward,
            Direction::Backward => &self.backward,
        }
    }

    pub fn level_sizes(&self) -> Vec<LevelSize> {
        (0..=self.levels())
            .map(|l| {
                let nodes = (0..self.node_count() as NodeId)
                    .filter(|&v| self.in_level(v, l))
                    .count();
                let core_nodes = self.core_level.iter().filter(|&&c| c >= l).count();
                let m = self.original_arc_count();
                let original_arcs = self.arcs[..m].iter().filter(|a| a.max_level >= l).count();
                let shortcut_arcs = self.arcs[m..].iter().filter(|a| a.max_level >= l).count();
                LevelSize {
                    level: l as u32,
                    nodes,
                    core_nodes,
                    original_arcs,
                    shortcut_arcs,
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn example_promotes_two_arcs() {
        let g = fixtures::example_graph();
        let h = build_hierarchy(&g, HierarchyParams::new(3, 1));
        let top: Vec<_> = (0..g.arc_count() as ArcId)
            .filter(|&a| h.arc(a).max_level == 1)
            .map(|a| (h.arc(a).tail, h.arc(a).head))
            .collect();
        assert_eq!(top, vec![(1, 6), (2, 4)]);
        let sizes = h.level_sizes();
        assert_eq!((sizes[0].nodes, sizes[0].original_arcs), (7, 14));
        assert_eq!((sizes[1].nodes, sizes[1].original_arcs), (4, 2));
    }

    #[test]
    fn zero_levels_is_the_graph() {
        let g = fixtures::example_graph();
        let h = build_hierarchy(&g, HierarchyParams::new(3, 0));
        assert_eq!(h.arc_count(), g.arc_count());
        assert_eq!(h.level_sizes().len(), 1);
        assert_eq!(h.radius(Direction::Forward, 0, 0), INFINITY);
    }

    #[test]
    fn shortcut_expansion_is_flat() {
        let g = fixtures::example_graph();
        let h = build_hierarchy(&g, HierarchyParams::new(2, 3));
        for a in 0..h.arc_count() as ArcId {
            let e = h.expansion(a);
            assert!(e.iter().all(|&o| (o as usize) < g.arc_count()));
            assert_eq!(
                e.iter().map(|&o| g.arc(o).weight).sum::<Weight>(),
                h.arc(a).weight
            );
        }
    }
}
