use crate::graph::{AdjEntry, ArcId, Csr, Direction, Graph, NodeId, Weight};

/// One level of the hierarchy as seen by the construction: a subset of the
/// original node ids plus the arcs (original or shortcut) running between
/// them. Node ids stay global so results can be merged without translation.
#[derive(Debug, Clone)]
pub struct LevelGraph {
    member: Vec<bool>,
    nodes: Vec<NodeId>,
    arc_count: usize,
    forward: Csr,
    backward: Csr,
}

impl LevelGraph {
    /// `arcs` are `(arc id, tail, head, static weight)`; both endpoints must
    /// be members.
    pub fn new(member: Vec<bool>, arcs: &[(ArcId, NodeId, NodeId, Weight)]) -> LevelGraph {
        let n = member.len();
        let mut out = Vec::with_capacity(arcs.len());
        let mut inc = Vec::with_capacity(arcs.len());
        for &(arc, tail, head, weight) in arcs {
            debug_assert!(member[tail as usize] && member[head as usize]);
            out.push((
                tail,
                AdjEntry {
                    node: head,
                    arc,
                    weight,
                },
            ));
            inc.push((
                head,
                AdjEntry {
                    node: tail,
                    arc,
                    weight,
                },
            ));
        }
        let nodes = (0..n as NodeId).filter(|&v| member[v as usize]).collect();
        LevelGraph {
            member,
            nodes,
            arc_count: arcs.len(),
            forward: Csr::build(n, out),
            backward: Csr::build(n, inc),
        }
    }

    /// The whole graph as a level.
    pub fn from_graph(graph: &Graph) -> LevelGraph {
        let arcs: Vec<_> = graph
            .arcs()
            .iter()
            .enumerate()
            .map(|(i, a)| (i as ArcId, a.tail, a.head, a.weight))
            .collect();
        LevelGraph::new(vec![true; graph.node_count()], &arcs)
    }

    /// Size of the global id space.
    pub fn id_space(&self) -> usize {
        self.member.len()
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.member[v as usize]
    }

    /// Member nodes, ascending.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    #[inline]
    pub fn arcs_from(&self, direction: Direction, v: NodeId) -> &[AdjEntry] {
        match direction {
            Direction::Forward => self.forward.neighbors(v),
            Direction::Backward => self.backward.neighbors(v),
        }
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.forward.degree(v)
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.backward.degree(v)
    }
}
