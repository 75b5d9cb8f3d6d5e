//! Binary hierarchy files. All integers little-endian:
//!
//! ```text
//! "HHDG"  version:u16
//! H:u32  L:u32  bypass max_in:u32 max_out:u32 slack:u32
//! node_count:u64  arc_count:u64
//! arc_count × (tail:u32 head:u32 weight:u64)
//! shortcut_count:u64
//! shortcut_count × (tail:u32 head:u32 weight:u64 level:u8 len:u32 len × arc:u32)
//! (arc_count + shortcut_count) × max_level:u8
//! node_count × core_level:u8   node_count × bypass_level:u8
//! L × (node_count × forward radius:u64, node_count × reverse radius:u64)
//! ```
//!
//! Shortcuts take ids `arc_count..` in file order.

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use super::{
    BypassPolicy, HierarchyArc, HierarchyParams, HighwayHierarchy, LevelRadii, Shortcut, MAX_LEVELS,
};
use crate::graph::{ArcData, Graph, NodeId, Weight, INFINITY};

const MAGIC: &[u8; 4] = b"HHDG";
pub const FORMAT_VERSION: u16 = 1;

#[derive(Debug, Error)]
pub enum HierarchyIoError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("not a hierarchy file (bad magic)")]
    BadMagic,
    #[error("unsupported hierarchy format version {0} (expected {FORMAT_VERSION})")]
    UnsupportedVersion(u16),
    #[error("hierarchy file truncated")]
    Truncated,
    #[error("invalid hierarchy file: {0}")]
    Invalid(String),
    #[error("{0} unexpected trailing bytes")]
    TrailingBytes(usize),
}

pub fn serialize_hierarchy(h: &HighwayHierarchy) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    let p = h.params;
    for x in [
        p.neighborhood_size,
        p.levels,
        p.bypass.max_in,
        p.bypass.max_out,
        p.bypass.slack,
    ] {
        out.extend_from_slice(&x.to_le_bytes());
    }
    let m = h.graph.arc_count();
    out.extend_from_slice(&(h.graph.node_count() as u64).to_le_bytes());
    out.extend_from_slice(&(m as u64).to_le_bytes());
    for a in h.graph.arcs() {
        out.extend_from_slice(&a.tail.to_le_bytes());
        out.extend_from_slice(&a.head.to_le_bytes());
        out.extend_from_slice(&a.weight.to_le_bytes());
    }
    out.extend_from_slice(&(h.shortcuts.len() as u64).to_le_bytes());
    for (a, s) in h.arcs[m..].iter().zip(&h.shortcuts) {
        out.extend_from_slice(&a.tail.to_le_bytes());
        out.extend_from_slice(&a.head.to_le_bytes());
        out.extend_from_slice(&a.weight.to_le_bytes());
        out.push(s.level);
        out.extend_from_slice(&(s.constituents.len() as u32).to_le_bytes());
        for c in &s.constituents {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
    out.extend(h.arcs.iter().map(|a| a.max_level));
    out.extend_from_slice(&h.core_level);
    out.extend_from_slice(&h.bypass_level);
    for r in &h.radii {
        for w in r.forward.iter().chain(&r.backward) {
            out.extend_from_slice(&w.to_le_bytes());
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8], HierarchyIoError> {
        let end = self.pos.checked_add(k).ok_or(HierarchyIoError::Truncated)?;
        let s = self
            .bytes
            .get(self.pos..end)
            .ok_or(HierarchyIoError::Truncated)?;
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, HierarchyIoError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, HierarchyIoError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, HierarchyIoError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, HierarchyIoError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// A count whose items need at least `item_size` bytes each; rejects
    /// counts the remaining input cannot possibly hold.
    fn count(&mut self, item_size: usize) -> Result<usize, HierarchyIoError> {
        let c = self.u64()?;
        let remaining = (self.bytes.len() - self.pos) as u64;
        if c.saturating_mul(item_size as u64) > remaining {
            return Err(HierarchyIoError::Truncated);
        }
        Ok(c as usize)
    }
}

fn invalid(msg: impl Into<String>) -> HierarchyIoError {
    HierarchyIoError::Invalid(msg.into())
}

pub fn deserialize_hierarchy(bytes: &[u8]) -> Result<HighwayHierarchy, HierarchyIoError> {
    let mut r = Reader { bytes, pos: 0 };
    if bytes.len() < MAGIC.len() || &bytes[..4] != MAGIC {
        return Err(HierarchyIoError::BadMagic);
    }
    r.take(4)?;
    let version = r.u16()?;
    if version != FORMAT_VERSION {
        return Err(HierarchyIoError::UnsupportedVersion(version));
    }
    let params = HierarchyParams {
        neighborhood_size: r.u32()?,
        levels: r.u32()?,
        bypass: BypassPolicy {
            max_in: r.u32()?,
            max_out: r.u32()?,
            slack: r.u32()?,
        },
    };
    if params.neighborhood_size == 0 {
        return Err(invalid("neighbourhood size 0"));
    }
    if params.levels > MAX_LEVELS {
        return Err(invalid(format!("{} levels", params.levels)));
    }
    let top = params.levels as u8;

    let n = r.u64()?;
    if n > NodeId::MAX as u64 {
        return Err(invalid("node count too large"));
    }
    let n = n as usize;
    let m = r.count(16)?;
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        arcs.push(ArcData {
            tail: r.u32()?,
            head: r.u32()?,
            weight: r.u64()?,
        });
    }
    let graph = Graph::new(n, arcs).map_err(|e| invalid(e.to_string()))?;

    let mut harcs: Vec<HierarchyArc> = graph
        .arcs()
        .iter()
        .map(|a| HierarchyArc {
            tail: a.tail,
            head: a.head,
            weight: a.weight,
            max_level: 0,
        })
        .collect();
    let s = r.count(21)?;
    let mut shortcuts = Vec::with_capacity(s);
    for i in 0..s {
        let id = m + i;
        let (tail, head, weight, level) = (r.u32()?, r.u32()?, r.u64()?, r.u8()?);
        let len = r.u32()? as usize;
        let mut constituents = Vec::with_capacity(len.min(1 << 16));
        for _ in 0..len {
            constituents.push(r.u32()?);
        }
        if tail as usize >= n || head as usize >= n || tail == head {
            return Err(invalid(format!("shortcut {id}: bad endpoints")));
        }
        if level == 0 || level > top {
            return Err(invalid(format!("shortcut {id}: level {level}")));
        }
        if constituents.len() < 2 {
            return Err(invalid(format!(
                "shortcut {id}: fewer than two constituents"
            )));
        }
        let mut at = tail;
        let mut sum: Weight = 0;
        for &c in &constituents {
            let Some(arc) = harcs.get(c as usize) else {
                return Err(invalid(format!(
                    "shortcut {id}: constituent {c} not defined before it"
                )));
            };
            if arc.tail != at {
                return Err(invalid(format!(
                    "shortcut {id}: constituents not connected"
                )));
            }
            at = arc.head;
            sum = sum.saturating_add(arc.weight);
        }
        if at != head || sum != weight {
            return Err(invalid(format!("shortcut {id}: path does not match arc")));
        }
        harcs.push(HierarchyArc {
            tail,
            head,
            weight,
            max_level: 0,
        });
        shortcuts.push(Shortcut {
            level,
            constituents,
        });
    }

    for (i, a) in harcs.iter_mut().enumerate() {
        a.max_level = r.u8()?;
        if a.max_level > top {
            return Err(invalid(format!("arc {i}: level {} above top", a.max_level)));
        }
        if i >= m && a.max_level < shortcuts[i - m].level {
            return Err(invalid(format!("arc {i}: level below creation level")));
        }
    }
    let core_level = r.take(n)?.to_vec();
    let bypass_level = r.take(n)?.to_vec();
    for v in 0..n {
        let (c, b) = (core_level[v], bypass_level[v]);
        if c > top || b > top || (b != 0 && c as u16 + 1 != b as u16) {
            return Err(invalid(format!("node {v}: inconsistent levels")));
        }
    }
    let mut radii = Vec::with_capacity(top as usize);
    for _ in 0..top {
        let read = |r: &mut Reader| -> Result<Vec<Weight>, HierarchyIoError> {
            (0..n).map(|_| r.u64()).collect()
        };
        let forward = read(&mut r)?;
        let backward = read(&mut r)?;
        radii.push(LevelRadii { forward, backward });
    }
    for (l, lr) in radii.iter().enumerate() {
        for (v, &core) in core_level.iter().enumerate() {
            let in_core = core as usize >= l;
            if !in_core && (lr.forward[v] != INFINITY || lr.backward[v] != INFINITY) {
                return Err(invalid(format!(
                    "node {v}: radius outside core at level {l}"
                )));
            }
        }
    }
    if r.pos != bytes.len() {
        return Err(HierarchyIoError::TrailingBytes(bytes.len() - r.pos));
    }
    Ok(HighwayHierarchy::assemble(
        graph,
        params,
        harcs,
        shortcuts,
        core_level,
        bypass_level,
        radii,
    ))
}

pub fn write_hierarchy_file(h: &HighwayHierarchy, path: &Path) -> io::Result<()> {
    fs::write(path, serialize_hierarchy(h))
}

pub fn read_hierarchy_file(path: &Path) -> Result<HighwayHierarchy, HierarchyIoError> {
    deserialize_hierarchy(&fs::read(path)?)
}
