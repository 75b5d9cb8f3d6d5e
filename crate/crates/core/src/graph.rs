//! Immutable directed road graph with static arc weights.
//!
//! Arcs keep the order in which they were supplied, so an [`ArcId`] is simply
//! the position of the arc in the input. Adjacency is stored twice in
//! compressed offset-array form: once grouped by tail (forward) and once
//! grouped by head (backward). Within a node's range, entries are sorted by
//! ascending `ArcId`.

use std::io::{BufRead, Write};

use thiserror::Error;

pub type NodeId = u32;
pub type ArcId = u32;
/// Travel time in milliseconds.
pub type Weight = u64;

/// Sentinel for "unbounded" distances and radii.
pub const INFINITY: Weight = Weight::MAX;

/// Largest total weight a graph may carry. Any simple path sums to at most
/// this, which leaves headroom below [`INFINITY`] for tentative sums.
pub const MAX_TOTAL_WEIGHT: Weight = Weight::MAX / 4;

/// Source of per-arc travel times; the graph itself supplies static ones.
pub trait ArcWeights {
    fn weight(&self, arc: ArcId) -> Weight;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArcData {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: Weight,
}

/// One adjacency entry: the node at the other end of the arc, the arc id and
/// its static weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjEntry {
    pub node: NodeId,
    pub arc: ArcId,
    pub weight: Weight,
}

/// Compressed adjacency: `entries[first[v]..first[v + 1]]` are the arcs of `v`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Csr {
    first: Vec<u32>,
    entries: Vec<AdjEntry>,
}

impl Csr {
    /// Groups `(owner, entry)` pairs by owner. Entries of one owner keep
    /// ascending arc order.
    pub fn build(node_count: usize, mut items: Vec<(NodeId, AdjEntry)>) -> Csr {
        items.sort_by_key(|(owner, e)| (*owner, e.arc));
        let mut first = vec![0u32; node_count + 1];
        for (owner, _) in &items {
            first[*owner as usize + 1] += 1;
        }
        for v in 0..node_count {
            first[v + 1] += first[v];
        }
        Csr {
            first,
            entries: items.into_iter().map(|(_, e)| e).collect(),
        }
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[AdjEntry] {
        let v = v as usize;
        &self.entries[self.first[v] as usize..self.first[v + 1] as usize]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        (self.first[v + 1] - self.first[v]) as usize
    }

    pub fn node_count(&self) -> usize {
        self.first.len().saturating_sub(1)
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("arc {arc}: node {node} out of range (node count {node_count})")]
    NodeOutOfRange {
        arc: usize,
        node: u64,
        node_count: usize,
    },
    #[error("arc {arc}: self-loop on node {node}")]
    SelfLoop { arc: usize, node: NodeId },
    #[error("sum of arc weights exceeds {MAX_TOTAL_WEIGHT}")]
    WeightOverflow,
    #[error("graph too large: {0}")]
    TooLarge(String),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: node {node} out of range (node count {node_count})")]
    NodeOutOfRange {
        line: usize,
        node: u64,
        node_count: usize,
    },
    #[error("line {line}: negative weight {weight}")]
    NegativeWeight { line: usize, weight: i128 },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: NodeId },
    #[error("expected {expected} arcs, found {found}")]
    ArcCount { expected: usize, found: usize },
    #[error("sum of arc weights exceeds {MAX_TOTAL_WEIGHT}")]
    WeightOverflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    arcs: Vec<ArcData>,
    forward: Csr,
    backward: Csr,
}

impl Graph {
    pub fn new(node_count: usize, arcs: Vec<ArcData>) -> Result<Graph, GraphError> {
        if node_count > NodeId::MAX as usize || arcs.len() > ArcId::MAX as usize {
            return Err(GraphError::TooLarge(format!(
                "{node_count} nodes, {} arcs",
                arcs.len()
            )));
        }
        let mut total: Weight = 0;
        for (i, a) in arcs.iter().enumerate() {
            for node in [a.tail, a.head] {
                if node as usize >= node_count {
                    return Err(GraphError::NodeOutOfRange {
                        arc: i,
                        node: node as u64,
                        node_count,
                    });
                }
            }
            if a.tail == a.head {
                return Err(GraphError::SelfLoop {
                    arc: i,
                    node: a.tail,
                });
            }
            total = total
                .checked_add(a.weight)
                .filter(|t| *t <= MAX_TOTAL_WEIGHT)
                .ok_or(GraphError::WeightOverflow)?;
        }
        let (forward, backward) = build_adjacency(node_count, &arcs);
        Ok(Graph {
            node_count,
            arcs,
            forward,
            backward,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[ArcData] {
        &self.arcs
    }

    #[inline]
    pub fn arc(&self, a: ArcId) -> ArcData {
        self.arcs[a as usize]
    }

    /// Outgoing arcs of `v` as `(arc, head, weight)`, ascending by arc id.
    pub fn out_arcs(&self, v: NodeId) -> impl Iterator<Item = (ArcId, NodeId, Weight)> + '_ {
        self.forward
            .neighbors(v)
            .iter()
            .map(|e| (e.arc, e.node, e.weight))
    }

    /// Incoming arcs of `v` as `(arc, tail, weight)`, ascending by arc id.
    pub fn in_arcs(&self, v: NodeId) -> impl Iterator<Item = (ArcId, NodeId, Weight)> + '_ {
        self.backward
            .neighbors(v)
            .iter()
            .map(|e| (e.arc, e.node, e.weight))
    }

    pub fn forward_view(&self) -> GraphView<'_> {
        GraphView {
            graph: self,
            direction: Direction::Forward,
        }
    }

    /// The graph with every arc reversed. Arc ids and weights are unchanged.
    pub fn reverse_view(&self) -> GraphView<'_> {
        GraphView {
            graph: self,
            direction: Direction::Backward,
        }
    }

    pub(crate) fn csr(&self, direction: Direction) -> &Csr {
        match direction {
            Direction::Forward => &self.forward,
            Direction::Backward => &self.backward,
        }
    }
}

impl ArcWeights for Graph {
    #[inline]
    fn weight(&self, arc: ArcId) -> Weight {
        self.arcs[arc as usize].weight
    }
}

pub(crate) fn build_adjacency(node_count: usize, arcs: &[ArcData]) -> (Csr, Csr) {
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
    (Csr::build(node_count, out), Csr::build(node_count, inc))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// A directional view of a [`Graph`]; `arcs_from(v)` walks forward arcs or,
/// for the reverse view, the in-arcs of `v` as if they pointed away from it.
#[derive(Debug, Clone, Copy)]
pub struct GraphView<'a> {
    graph: &'a Graph,
    direction: Direction,
}

impl<'a> GraphView<'a> {
    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn reverse(self) -> GraphView<'a> {
        GraphView {
            graph: self.graph,
            direction: self.direction.opposite(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count
    }

    pub fn arcs_from(&self, v: NodeId) -> &'a [AdjEntry] {
        self.graph.csr(self.direction).neighbors(v)
    }

    /// The view's arcs as `(tail, head, weight)` in arc-id order.
    pub fn arc_list(&self) -> Vec<(NodeId, NodeId, Weight)> {
        self.graph
            .arcs
            .iter()
            .map(|a| match self.direction {
                Direction::Forward => (a.tail, a.head, a.weight),
                Direction::Backward => (a.head, a.tail, a.weight),
            })
            .collect()
    }
}

fn parse_u64(token: &str, line: usize, what: &str) -> Result<u64, ParseError> {
    token.parse::<u64>().map_err(|_| ParseError::Malformed {
        line,
        message: format!("invalid {what} {token:?}"),
    })
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = Result<(usize, String), std::io::Error>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(e)),
            Ok(l) => {
                let t = l.trim();
                if t.is_empty() || t.starts_with('#') {
                    None
                } else {
                    Some(Ok((i + 1, t.to_string())))
                }
            }
        })
}

/// Reads the edge-list text format: a `<node_count> <arc_count>` header
/// followed by one `<tail> <head> <weight_ms>` line per arc.
pub fn parse_graph<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut lines = content_lines(reader);
    let (line, header) = match lines.next() {
        None => {
            return Err(ParseError::Malformed {
                line: 1,
                message: "missing header".into(),
            })
        }
        Some(r) => r?,
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(ParseError::Malformed {
            line,
            message: "header must be `<node_count> <arc_count>`".into(),
        });
    }
    let node_count = parse_u64(fields[0], line, "node count")? as usize;
    let arc_count = parse_u64(fields[1], line, "arc count")? as usize;
    if node_count > NodeId::MAX as usize {
        return Err(ParseError::Malformed {
            line,
            message: format!("node count {node_count} too large"),
        });
    }

    let mut arcs = Vec::with_capacity(arc_count.min(1 << 24));
    let mut total: Weight = 0;
    for item in lines {
        let (line, text) = item?;
        if arcs.len() == arc_count {
            return Err(ParseError::ArcCount {
                expected: arc_count,
                found: arcs.len() + 1,
            });
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(ParseError::Malformed {
                line,
                message: "arc line must be `<tail> <head> <weight_ms>`".into(),
            });
        }
        let mut ends = [0 as NodeId; 2];
        for (slot, token) in ends.iter_mut().zip(&fields[..2]) {
            let node = parse_u64(token, line, "node")?;
            if node >= node_count as u64 {
                return Err(ParseError::NodeOutOfRange {
                    line,
                    node,
                    node_count,
                });
            }
            *slot = node as NodeId;
        }
        let weight = match fields[2].parse::<i128>() {
            Ok(w) if w < 0 => return Err(ParseError::NegativeWeight { line, weight: w }),
            Ok(w) if w > MAX_TOTAL_WEIGHT as i128 => return Err(ParseError::WeightOverflow),
            Ok(w) => w as Weight,
            Err(_) => {
                return Err(ParseError::Malformed {
                    line,
                    message: format!("invalid weight {:?}", fields[2]),
                })
            }
        };
        if ends[0] == ends[1] {
            return Err(ParseError::SelfLoop {
                line,
                node: ends[0],
            });
        }
        total = total
            .checked_add(weight)
            .filter(|t| *t <= MAX_TOTAL_WEIGHT)
            .ok_or(ParseError::WeightOverflow)?;
        arcs.push(ArcData {
            tail: ends[0],
            head: ends[1],
            weight,
        });
    }
    if arcs.len() != arc_count {
        return Err(ParseError::ArcCount {
            expected: arc_count,
            found: arcs.len(),
        });
    }
    // All per-arc checks already happened with line numbers attached.
    Ok(Graph::new(node_count, arcs).expect("arcs validated while parsing"))
}

pub fn write_graph<W: Write>(graph: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", graph.node_count, graph.arcs.len())?;
    for a in &graph.arcs {
        writeln!(out, "{} {} {}", a.tail, a.head, a.weight)?;
    }
    Ok(())
}
