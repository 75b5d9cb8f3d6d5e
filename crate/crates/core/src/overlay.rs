//! Dynamic travel times layered over the static weights.

use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{content_lines, ArcId, ArcWeights, Graph, Weight, MAX_TOTAL_WEIGHT};
use crate::hierarchy::HighwayHierarchy;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OverlayError {
    #[error("arc {arc} out of range ({arc_count} arcs)")]
    ArcOutOfRange { arc: u64, arc_count: usize },
    #[error("arc {0} is a shortcut; only original arcs take dynamic weights")]
    ShortcutArc(ArcId),
    #[error("dynamic weights sum past {MAX_TOTAL_WEIGHT}")]
    WeightOverflow,
}

/// A set of weight changes for original arcs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightUpdateBatch {
    pub label: String,
    pub updates: Vec<(ArcId, Weight)>,
}

impl WeightUpdateBatch {
    pub fn new(label: impl Into<String>, updates: Vec<(ArcId, Weight)>) -> WeightUpdateBatch {
        WeightUpdateBatch {
            label: label.into(),
            updates,
        }
    }
}

/// Immutable snapshot of the dynamic weight of every original arc.
///
/// Applying a batch copies the table, so a snapshot held by a running query
/// never changes underneath it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightOverlay {
    weights: Arc<[Weight]>,
    version: u64,
    /// Arc ids at or above the original count but below this are shortcuts.
    hierarchy_arc_count: usize,
}

impl WeightOverlay {
    /// All-static snapshot for a plain graph.
    pub fn new(graph: &Graph) -> WeightOverlay {
        WeightOverlay {
            weights: graph.arcs().iter().map(|a| a.weight).collect(),
            version: 0,
            hierarchy_arc_count: graph.arc_count(),
        }
    }

    /// All-static snapshot that recognises the hierarchy's shortcut ids.
    pub fn for_hierarchy(h: &HighwayHierarchy) -> WeightOverlay {
        WeightOverlay {
            hierarchy_arc_count: h.arc_count(),
            ..WeightOverlay::new(h.graph())
        }
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn original_arc_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn apply_batch(&self, batch: &WeightUpdateBatch) -> Result<WeightOverlay, OverlayError> {
        let mut weights = self.weights.to_vec();
        for &(arc, w) in &batch.updates {
            let i = arc as usize;
            if i >= weights.len() {
                return Err(if i < self.hierarchy_arc_count {
                    OverlayError::ShortcutArc(arc)
                } else {
                    OverlayError::ArcOutOfRange {
                        arc: arc as u64,
                        arc_count: weights.len(),
                    }
                });
            }
            weights[i] = w;
        }
        let mut total: Weight = 0;
        for &w in &weights {
            total = total
                .checked_add(w)
                .filter(|&t| t <= MAX_TOTAL_WEIGHT)
                .ok_or(OverlayError::WeightOverflow)?;
        }
        Ok(WeightOverlay {
            weights: weights.into(),
            version: self.version + 1,
            hierarchy_arc_count: self.hierarchy_arc_count,
        })
    }

    /// Dynamic weight of any hierarchy arc; shortcuts cost the sum of the
    /// original arcs they stand for.
    pub fn dynamic_weight(&self, h: &HighwayHierarchy, arc: ArcId) -> Weight {
        h.arc_cost(self, arc)
    }
}

impl ArcWeights for WeightOverlay {
    #[inline]
    fn weight(&self, arc: ArcId) -> Weight {
        self.weights[arc as usize]
    }
}

/// Draws, for every arc not in `exclude`, a weight uniformly from
/// `[min_factor · w, max_factor · w]` where `w` is the static weight.
pub fn sample_random_weights(
    graph: &Graph,
    seed: u64,
    min_factor: u64,
    max_factor: u64,
    exclude: &[ArcId],
) -> WeightUpdateBatch {
    assert!(
        1 <= min_factor && min_factor <= max_factor,
        "need 1 ≤ min_factor ≤ max_factor"
    );
    let skip: HashSet<ArcId> = exclude.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let updates = graph
        .arcs()
        .iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(&(*i as ArcId)))
        .map(|(i, a)| {
            let lo = a.weight.saturating_mul(min_factor);
            let hi = a.weight.saturating_mul(max_factor);
            (i as ArcId, rng.gen_range(lo..=hi))
        })
        .collect();
    WeightUpdateBatch::new(
        format!("seed {seed}, factors [{min_factor}, {max_factor}]"),
        updates,
    )
}

#[derive(Debug, Error)]
pub enum WeightFileError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Reads `<arc_id> <weight_ms>` lines; `#` lines and blank lines are skipped.
pub fn parse_weight_file<R: BufRead>(reader: R) -> Result<WeightUpdateBatch, WeightFileError> {
    let mut updates = Vec::new();
    for item in content_lines(reader) {
        let (line, text) = item?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        let malformed = |message: String| WeightFileError::Malformed { line, message };
        if fields.len() != 2 {
            return Err(malformed(format!(
                "expected `<arc_id> <weight_ms>`, got {:?}",
                text
            )));
        }
        let arc: ArcId = fields[0]
            .parse()
            .map_err(|_| malformed(format!("bad arc id {:?}", fields[0])))?;
        let weight: Weight = fields[1]
            .parse()
            .map_err(|_| malformed(format!("bad weight {:?}", fields[1])))?;
        updates.push((arc, weight));
    }
    Ok(WeightUpdateBatch::new("file", updates))
}

pub fn write_weight_file<W: Write>(batch: &WeightUpdateBatch, mut out: W) -> std::io::Result<()> {
    if !batch.label.is_empty() {
        writeln!(out, "# {}", batch.label)?;
    }
    for &(a, w) in &batch.updates {
        writeln!(out, "{a} {w}")?;
    }
    Ok(())
}
