use super::level::LevelGraph;
use crate::dijkstra::Dijkstra;
use crate::graph::{ArcId, Direction, NodeId, Weight};

/// Degree limits for bypassable nodes: at most `max_in` incoming and
/// `max_out` outgoing arcs, and `in · out ≤ in + out + slack`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BypassPolicy {
    pub max_in: u32,
    pub max_out: u32,
    pub slack: u32,
}

impl Default for BypassPolicy {
    fn default() -> Self {
        BypassPolicy {
            max_in: 4,
            max_out: 4,
            slack: 2,
        }
    }
}

impl BypassPolicy {
    /// Accepts only nodes without arcs. Levels above 0 consist of arc
    /// endpoints, so nothing is bypassed there.
    pub fn disabled() -> BypassPolicy {
        BypassPolicy {
            max_in: 0,
            max_out: 0,
            slack: 0,
        }
    }

    pub fn accepts(&self, in_degree: usize, out_degree: usize) -> bool {
        let (i, o) = (in_degree as u64, out_degree as u64);
        i <= self.max_in as u64 && o <= self.max_out as u64 && i * o <= i + o + self.slack as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewShortcut {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: Weight,
    /// Arcs of the bypassed path in the level being contracted.
    pub path: Vec<ArcId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    /// Bypassed nodes, ascending.
    pub bypassed: Vec<NodeId>,
    /// Nodes that met the degree rule but were kept to break cycles, ascending.
    pub withdrawn: Vec<NodeId>,
    /// Ordered by `(tail, head)`.
    pub shortcuts: Vec<NewShortcut>,
}

/// Picks the bypassed set of `level` and the shortcuts replacing every path
/// whose interior consists of bypassed nodes only. Per `(s, t)` pair only a
/// cheapest such path gets a shortcut, and none is added when a direct arc
/// is already a cheapest connection.
pub fn contract_level(level: &LevelGraph, policy: BypassPolicy) -> Contraction {
    let n = level.id_space();
    let mut bypass = vec![false; n];
    for &v in level.nodes() {
        bypass[v as usize] = policy.accepts(level.in_degree(v), level.out_degree(v));
    }
    let mut withdrawn = Vec::new();
    loop {
        let cyclic = cyclic_components(level, &bypass);
        if cyclic.is_empty() {
            break;
        }
        for comp in cyclic {
            let v = *comp.iter().min().unwrap();
            bypass[v as usize] = false;
            withdrawn.push(v);
        }
    }
    withdrawn.sort_unstable();

    let mut shortcuts = Vec::new();
    let mut dijkstra = Dijkstra::new(n);
    for &s in level.nodes() {
        if bypass[s as usize] {
            continue;
        }
        let touches_bypass = level
            .arcs_from(Direction::Forward, s)
            .iter()
            .any(|e| bypass[e.node as usize]);
        if !touches_bypass {
            continue;
        }
        dijkstra.start(s);
        let mut targets = Vec::new();
        while let Some((u, du)) = dijkstra.pop() {
            if u != s && !bypass[u as usize] {
                targets.push(u);
                continue;
            }
            for e in level.arcs_from(Direction::Forward, u) {
                dijkstra.relax(u, e.node, e.arc, du + e.weight);
            }
        }
        targets.sort_unstable();
        for t in targets {
            let parent = dijkstra.parent(t).unwrap();
            if parent.node == s {
                continue;
            }
            shortcuts.push(NewShortcut {
                tail: s,
                head: t,
                weight: dijkstra.dist(t).unwrap(),
                path: dijkstra.arc_path(t).unwrap(),
            });
        }
    }

    let bypassed = level
        .nodes()
        .iter()
        .copied()
        .filter(|&v| bypass[v as usize])
        .collect();
    Contraction {
        bypassed,
        withdrawn,
        shortcuts,
    }
}

/// Strongly connected components of the subgraph induced by `inside` that
/// contain a cycle.
fn cyclic_components(level: &LevelGraph, inside: &[bool]) -> Vec<Vec<NodeId>> {
    const UNVISITED: u32 = u32::MAX;
    let n = level.id_space();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<NodeId> = Vec::new();
    let mut next_index = 0u32;
    let mut out = Vec::new();
    // (node, position in its adjacency list)
    let mut call: Vec<(NodeId, usize)> = Vec::new();

    for &root in level.nodes() {
        if !inside[root as usize] || index[root as usize] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let arcs = level.arcs_from(Direction::Forward, v);
            if *pos < arcs.len() {
                let w = arcs[*pos].node;
                *pos += 1;
                let wi = w as usize;
                if !inside[wi] {
                    continue;
                }
                if index[wi] == UNVISITED {
                    index[wi] = next_index;
                    low[wi] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[wi] = true;
                    call.push((w, 0));
                } else if on_stack[wi] {
                    low[v as usize] = low[v as usize].min(index[wi]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent as usize] = low[parent as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                let mut comp = Vec::new();
                loop {
                    let x = stack.pop().unwrap();
                    on_stack[x as usize] = false;
                    comp.push(x);
                    if x == v {
                        break;
                    }
                }
                // Without self-loops a single node can't form a cycle.
                if comp.len() > 1 {
                    out.push(comp);
                }
            }
        }
    }
    out
}
