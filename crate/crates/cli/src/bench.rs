//! Side-by-side comparison of the exact search, the hierarchy heuristic and
//! the naive re-costing approach under random travel-time scenarios.

use std::fmt::Write as _;
use std::time::Duration;

use dynhh::oracle::{dijkstra_p2p, dijkstra_sssp};
use dynhh::overlay::{sample_random_weights, OverlayError};
use dynhh::query::naive_with;
use dynhh::{ArcId, HighwayHierarchy, NodeId, QueryEngine, QueryOutcome, Weight, WeightOverlay};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub queries: usize,
    pub seed: u64,
    pub min_factor: u64,
    pub max_factor: u64,
    /// Targets must be settled at this position or later by a static
    /// Dijkstra search from the source.
    pub min_rank: Option<usize>,
    /// Arcs that keep their static weight.
    pub exclude: Vec<ArcId>,
    /// Time each query three times and keep the median duration.
    pub median_of_3: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Oracle,
    Heuristic,
    Naive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Oracle, Algorithm::Heuristic, Algorithm::Naive];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Heuristic => "heuristic",
            Algorithm::Naive => "naive",
        }
    }
}

/// Outcome of one algorithm on one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub cost: Weight,
    pub settled: usize,
    pub explored: usize,
    pub duration: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryRecord {
    pub source: NodeId,
    pub target: NodeId,
    /// Indexed like [`Algorithm::ALL`].
    pub runs: [Run; 3],
}

impl QueryRecord {
    pub fn run(&self, a: Algorithm) -> Run {
        self.runs[a as usize]
    }

    /// `(cost − optimum) / optimum` in percent; 0 for a zero-cost optimum.
    pub fn error_pct(&self, a: Algorithm) -> f64 {
        let best = self.run(Algorithm::Oracle).cost;
        if best == 0 {
            return 0.0;
        }
        (self.run(a).cost - best) as f64 / best as f64 * 100.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean_settled: f64,
    pub mean_explored: f64,
    pub mean_time: Duration,
    pub mean_error_pct: f64,
    pub error_variance: f64,
    pub max_error_pct: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub neighborhood_size: u32,
    pub levels: u32,
    pub node_count: usize,
    pub arc_count: usize,
    /// Drawn pairs without a path; they are replaced by new draws.
    pub unreachable: usize,
    pub records: Vec<QueryRecord>,
}

/// Gives up drawing after this many attempts per requested query.
const MAX_ATTEMPTS_PER_QUERY: usize = 100;

pub fn run_bench(h: &HighwayHierarchy, config: &BenchConfig) -> Result<BenchReport, OverlayError> {
    assert!(config.queries >= 1, "need at least one query");
    let g = h.graph();
    let n = g.node_count();
    let base = WeightOverlay::for_hierarchy(h);
    let mut engine = QueryEngine::new(h);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records = Vec::with_capacity(config.queries);
    let mut unreachable = 0;
    let mut attempts = 0;

    while records.len() < config.queries
        && n > 0
        && attempts < config.queries * MAX_ATTEMPTS_PER_QUERY
    {
        attempts += 1;
        let source = rng.gen_range(0..n as NodeId);
        let target = match config.min_rank {
            None => rng.gen_range(0..n as NodeId),
            Some(rank) => {
                let order = dijkstra_sssp(g, g, source).settle_order().to_vec();
                if order.len() <= rank {
                    continue;
                }
                order[rng.gen_range(rank..order.len())]
            }
        };
        let scenario = sample_random_weights(
            g,
            rng.gen(),
            config.min_factor,
            config.max_factor,
            &config.exclude,
        );
        let overlay = base.apply_batch(&scenario)?;

        let repeats = if config.median_of_3 { 3 } else { 1 };
        let runs: Option<Vec<Run>> = Algorithm::ALL
            .iter()
            .map(|&a| {
                let mut timed: Vec<QueryOutcome> = (0..repeats)
                    .map(|_| match a {
                        Algorithm::Oracle => dijkstra_p2p(g, &overlay, source, target),
                        Algorithm::Heuristic => engine.query(&overlay, source, target),
                        Algorithm::Naive => naive_with(&mut engine, &overlay, source, target),
                    })
                    .collect();
                timed.sort_by_key(|o| o.stats().duration);
                let r = timed.swap_remove(repeats / 2).into_found()?;
                Some(Run {
                    cost: r.cost,
                    settled: r.stats.settled,
                    explored: r.stats.explored,
                    duration: r.stats.duration,
                })
            })
            .collect();
        match runs.and_then(|r| <[Run; 3]>::try_from(r).ok()) {
            Some(runs) => records.push(QueryRecord {
                source,
                target,
                runs,
            }),
            None => unreachable += 1,
        }
    }

    Ok(BenchReport {
        config: config.clone(),
        neighborhood_size: h.params().neighborhood_size,
        levels: h.params().levels,
        node_count: n,
        arc_count: g.arc_count(),
        unreachable,
        records,
    })
}

impl BenchReport {
    pub fn summary(&self, a: Algorithm) -> Summary {
        let k = self.records.len().max(1) as f64;
        let runs = || self.records.iter().map(|r| r.run(a));
        let errors: Vec<f64> = self.records.iter().map(|r| r.error_pct(a)).collect();
        let mean_error = errors.iter().sum::<f64>() / k;
        Summary {
            mean_settled: runs().map(|r| r.settled as f64).sum::<f64>() / k,
            mean_explored: runs().map(|r| r.explored as f64).sum::<f64>() / k,
            mean_time: runs().map(|r| r.duration).sum::<Duration>()
                / self.records.len().max(1) as u32,
            mean_error_pct: mean_error,
            error_variance: errors.iter().map(|e| (e - mean_error).powi(2)).sum::<f64>() / k,
            max_error_pct: errors.iter().copied().fold(0.0, f64::max),
        }
    }

    /// `key=value` lines. Timings are left out so that the same seed and
    /// inputs always give the same bytes.
    pub fn machine_report(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let mut put = |k: &str, v: String| writeln!(out, "{k}={v}").unwrap();
        put("queries", self.records.len().to_string());
        put("requested_queries", c.queries.to_string());
        put("unreachable_draws", self.unreachable.to_string());
        put("seed", c.seed.to_string());
        put("min_factor", c.min_factor.to_string());
        put("max_factor", c.max_factor.to_string());
        put("min_rank", c.min_rank.unwrap_or(0).to_string());
        put("excluded_arcs", c.exclude.len().to_string());
        put("hh_H", self.neighborhood_size.to_string());
        put("levels", self.levels.to_string());
        put("nodes", self.node_count.to_string());
        put("arcs", self.arc_count.to_string());
        for a in Algorithm::ALL {
            let s = self.summary(a);
            let name = a.name();
            put(
                &format!("{name}.mean_settled"),
                format!("{:.3}", s.mean_settled),
            );
            put(
                &format!("{name}.mean_explored"),
                format!("{:.3}", s.mean_explored),
            );
            put(
                &format!("{name}.mean_error_pct"),
                format!("{:.6}", s.mean_error_pct),
            );
            put(
                &format!("{name}.error_variance"),
                format!("{:.6}", s.error_variance),
            );
            put(
                &format!("{name}.max_error_pct"),
                format!("{:.6}", s.max_error_pct),
            );
        }
        out
    }

    /// Aligned table with one row per algorithm.
    pub fn table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{} queries, seed {}, factors [{}, {}], H = {}, L = {}, {} nodes, {} arcs",
            self.records.len(),
            self.config.seed,
            self.config.min_factor,
            self.config.max_factor,
            self.neighborhood_size,
            self.levels,
            self.node_count,
            self.arc_count
        )
        .unwrap();
        writeln!(
            out,
            "{:<10} {:>12} {:>12} {:>11} {:>24} {:>12}",
            "", "settled", "explored", "time [ms]", "error % (variance)", "max error %"
        )
        .unwrap();
        for a in Algorithm::ALL {
            let s = self.summary(a);
            writeln!(
                out,
                "{:<10} {:>12.1} {:>12.1} {:>11.3} {:>24} {:>12.2}",
                a.name(),
                s.mean_settled,
                s.mean_explored,
                s.mean_time.as_secs_f64() * 1000.0,
                format!("{:.2} ({:.2})", s.mean_error_pct, s.error_variance),
                s.max_error_pct
            )
            .unwrap();
        }
        out
    }
}
