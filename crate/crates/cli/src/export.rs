//! Path files for external plotting or inspection.

use std::io::{self, BufRead, Write};

use dynhh::{ArcId, ArcWeights, Graph, NodeId, QueryResult, Weight};

use crate::args::PathFormat;

/// One arc of an exported path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathArc {
    pub arc: ArcId,
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: Weight,
}

pub fn write_path<W: ArcWeights, O: Write>(
    result: &QueryResult,
    graph: &Graph,
    weights: &W,
    format: PathFormat,
    mut out: O,
) -> io::Result<()> {
    match format {
        PathFormat::Nodes => {
            for v in result.nodes(graph) {
                writeln!(out, "{v}")?;
            }
        }
        PathFormat::Arcs => {
            for &a in &result.arcs {
                let arc = graph.arc(a);
                writeln!(out, "{a} {} {} {}", arc.tail, arc.head, weights.weight(a))?;
            }
        }
    }
    Ok(())
}

fn fields<R: BufRead>(reader: R) -> impl Iterator<Item = io::Result<(usize, Vec<u64>)>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line = match line {
            Ok(l) => l,
            Err(e) => return Some(Err(e)),
        };
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            return None;
        }
        let parsed: Result<Vec<u64>, _> = text.split_whitespace().map(str::parse).collect();
        Some(
            parsed
                .map(|f| (i + 1, f))
                .map_err(|_| bad_line(i + 1, text)),
        )
    })
}

fn bad_line(line: usize, text: &str) -> io::Error {
    io::Error::new(
        io::ErrorKind::InvalidData,
        format!("line {line}: unexpected {text:?}"),
    )
}

/// Reads a file written with [`PathFormat::Nodes`].
pub fn read_path_nodes<R: BufRead>(reader: R) -> io::Result<Vec<NodeId>> {
    fields(reader)
        .map(|item| {
            let (line, f) = item?;
            match f[..] {
                [v] if v <= NodeId::MAX as u64 => Ok(v as NodeId),
                _ => Err(bad_line(line, &format!("{f:?}"))),
            }
        })
        .collect()
}

/// Reads a file written with [`PathFormat::Arcs`].
pub fn read_path_arcs<R: BufRead>(reader: R) -> io::Result<Vec<PathArc>> {
    fields(reader)
        .map(|item| {
            let (line, f) = item?;
            match f[..] {
                [a, t, h, w] if a.max(t).max(h) <= u32::MAX as u64 => Ok(PathArc {
                    arc: a as ArcId,
                    tail: t as NodeId,
                    head: h as NodeId,
                    weight: w,
                }),
                _ => Err(bad_line(line, &format!("{f:?}"))),
            }
        })
        .collect()
}
