//! Seeded synthetic graphs for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{ArcData, Graph, NodeId, Weight};

/// `arc_count` arcs between uniformly random distinct endpoints with
/// weights in `min_weight..=max_weight`. Parallel arcs may occur.
pub fn random_graph(
    node_count: usize,
    arc_count: usize,
    min_weight: Weight,
    max_weight: Weight,
    seed: u64,
) -> Graph {
    assert!(node_count >= 2 || arc_count == 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs = (0..arc_count)
        .map(|_| {
            let tail = rng.gen_range(0..node_count as NodeId);
            let mut head = rng.gen_range(0..node_count as NodeId - 1);
            if head >= tail {
                head += 1;
            }
            ArcData {
                tail,
                head,
                weight: rng.gen_range(min_weight..=max_weight),
            }
        })
        .collect();
    Graph::new(node_count, arcs).expect("generated graph is valid")
}

/// Road-like grid of `width × height` junctions.
///
/// Neighbouring junctions are joined in both directions with independently
/// drawn travel times (so the graph is asymmetric). Every tenth row and
/// column is an arterial road about four times faster than the side
/// streets. A small share of side-street links is one-way.
pub fn road_grid(width: usize, height: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |x: usize, y: usize| (y * width + x) as NodeId;
    let mut arcs = Vec::new();
    let mut link = |rng: &mut ChaCha8Rng, a: NodeId, b: NodeId, arterial: bool| {
        let (lo, hi) = if arterial {
            (2_000, 4_000)
        } else {
            (8_000, 16_000)
        };
        let one_way = !arterial && rng.gen_bool(0.08);
        let forward_only = rng.gen_bool(0.5);
        for (t, h) in [(a, b), (b, a)] {
            if one_way && ((t == a) != forward_only) {
                continue;
            }
            arcs.push(ArcData {
                tail: t,
                head: h,
                weight: rng.gen_range(lo..=hi),
            });
        }
    };
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width {
                link(&mut rng, id(x, y), id(x + 1, y), y % 10 == 0);
            }
            if y + 1 < height {
                link(&mut rng, id(x, y), id(x, y + 1), x % 10 == 0);
            }
        }
    }
    Graph::new(width * height, arcs).expect("generated grid is valid")
}
