use super::radii::Neighborhoods;
use super::spt::PartialSpt;
use crate::graph::{ArcId, Weight, INFINITY};

/// Arc promotion by walking every leaf branch with explicit neighbourhoods.
///
/// For a leaf `t` of the tree rooted at `v`, the tree arc `(u, w)` on the
/// branch to `t` is promoted when `u` is outside the reverse neighbourhood
/// of `t` and `w` is outside the forward neighbourhood of `v`.
pub fn lift_arcs_direct(
    tree: &PartialSpt,
    forward: &Neighborhoods,
    backward: &Neighborhoods,
) -> Vec<ArcId> {
    let root = tree.root();
    let nodes = tree.settled();
    let mut lifted = Vec::new();
    for (i, t) in nodes.iter().enumerate() {
        if !tree.is_leaf_index(i) {
            continue;
        }
        let mut x = i;
        while let Some((p, arc, _)) = nodes[x].parent {
            let (u, w) = (nodes[p].node, nodes[x].node);
            if !backward.contains(t.node, u) && !forward.contains(root, w) {
                lifted.push(arc);
            }
            x = p;
        }
    }
    lifted.sort_unstable();
    lifted.dedup();
    lifted
}

/// Arc promotion from slack values propagated towards the root.
///
/// Leaves start with their reverse radius, inner nodes with +∞, and each
/// node hands `Δ(u) − w(p, u)` to its parent. The arc `(p, u)` is promoted
/// when that value is negative and `u` lies outside the root's forward
/// neighbourhood. Only radii are needed.
pub fn lift_arcs_slack(
    tree: &PartialSpt,
    forward_radius: &[Weight],
    backward_radius: &[Weight],
) -> Vec<ArcId> {
    slack_lift(tree, forward_radius, backward_radius)
}

/// Same propagation, but leaves start from their forward radius. This is
/// the undirected formulation; on directed graphs it can disagree with
/// [`lift_arcs_direct`].
pub fn lift_arcs_slack_forward_init(tree: &PartialSpt, forward_radius: &[Weight]) -> Vec<ArcId> {
    slack_lift(tree, forward_radius, forward_radius)
}

fn slack_lift(tree: &PartialSpt, forward_radius: &[Weight], leaf_radius: &[Weight]) -> Vec<ArcId> {
    const UNBOUNDED: i128 = i128::MAX;
    let nodes = tree.settled();
    let root_radius = forward_radius[tree.root() as usize];
    let mut slack: Vec<i128> = (0..nodes.len())
        .map(|i| {
            let r = leaf_radius[nodes[i].node as usize];
            if tree.is_leaf_index(i) && r != INFINITY {
                r as i128
            } else {
                UNBOUNDED
            }
        })
        .collect();
    let mut lifted = Vec::new();
    // Settle order is non-decreasing in distance, so walking it backwards
    // finishes every child before its parent.
    for i in (1..nodes.len()).rev() {
        let (p, arc, w) = nodes[i].parent.expect("non-root tree nodes have a parent");
        if slack[i] == UNBOUNDED {
            continue;
        }
        let handed = slack[i] - w as i128;
        // A root with infinite radius contains everything it reaches.
        let outside_root = root_radius != INFINITY && nodes[i].dist > root_radius;
        if handed < 0 && outside_root {
            lifted.push(arc);
        }
        slack[p] = slack[p].min(handed);
    }
    lifted.sort_unstable();
    lifted
}
