//! End-to-end acceptance checks. Prints one PASS or FAIL line per criterion
//! and exits non-zero if any criterion fails.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dynhh::hierarchy::{
    build_partial_spt, build_partial_spt_with, compute_neighborhoods, lift_arcs_direct,
    lift_arcs_slack, lift_arcs_slack_forward_init, LevelGraph, Neighborhoods, PassiveRule,
    SptScratch,
};
use dynhh::oracle::{dijkstra_p2p, dijkstra_sssp};
use dynhh::overlay::sample_random_weights;
use dynhh::{
    build_hierarchy, fixtures, synth, write_graph, ArcId, ArcWeights, Direction, Graph,
    HierarchyParams, HighwayHierarchy, NodeId, QueryEngine, Weight, WeightOverlay, INFINITY,
};
use dynhh_cli::bench::{run_bench, Algorithm, BenchConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, took: Duration) -> Result<(), String> {
    ensure(took <= limit, || {
        format!("took {took:.1?}, limit {limit:?}")
    })
}

fn level0(g: &Graph, h: usize) -> (LevelGraph, Neighborhoods, Neighborhoods) {
    let level = LevelGraph::from_graph(g);
    let fwd = compute_neighborhoods(&level, Direction::Forward, h);
    let bwd = compute_neighborhoods(&level, Direction::Backward, h);
    (level, fwd, bwd)
}

fn reversed(g: &Graph) -> Graph {
    let arcs: Vec<(NodeId, NodeId, Weight)> = g
        .arcs()
        .iter()
        .map(|a| (a.head, a.tail, a.weight))
        .collect();
    fixtures::graph_from(g.node_count(), &arcs)
}

/// The 10 000-node grid shared by the query criteria, with its hierarchy.
struct Grid {
    graph: Graph,
    hierarchy: HighwayHierarchy,
    build_time: Duration,
}

const GRID_H: u32 = 20;
const GRID_LEVELS: u32 = 6;

fn grid() -> Grid {
    let graph = synth::road_grid(100, 100, 1);
    let started = Instant::now();
    let hierarchy = build_hierarchy(&graph, HierarchyParams::new(GRID_H, GRID_LEVELS));
    Grid {
        graph,
        hierarchy,
        build_time: started.elapsed(),
    }
}

fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(NodeId, NodeId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (rng.gen_range(0..n as NodeId), rng.gen_range(0..n as NodeId)))
        .collect()
}

fn example_golden() -> Outcome {
    let started = Instant::now();
    let g = fixtures::example_graph();
    let (_, fwd, _) = level0(&g, 3);
    let table: [&[NodeId]; 7] = [
        &[0, 1, 2],
        &[0, 1, 2],
        &[0, 1, 2],
        &[3, 4, 5],
        &[3, 4, 5],
        &[3, 4, 5],
        &[3, 5, 6],
    ];
    for (v, members) in table.iter().enumerate() {
        ensure(fwd.members(v as NodeId) == *members, || {
            format!(
                "N(v{v}) = {:?}, expected {members:?}",
                fwd.members(v as NodeId)
            )
        })?;
    }
    let h = build_hierarchy(&g, HierarchyParams::new(3, 1));
    let mut lifted: Vec<(NodeId, NodeId)> = h
        .arcs()
        .iter()
        .filter(|a| a.max_level >= 1)
        .map(|a| (a.tail, a.head))
        .collect();
    lifted.sort();
    ensure(lifted == [(1, 6), (2, 4)], || format!("lifted {lifted:?}"))?;
    within(Duration::from_secs(1), started.elapsed())?;
    Ok(format!(
        "lifted arcs {lifted:?}, neighbourhood table matches"
    ))
}

fn slack_equals_direct() -> Outcome {
    let started = Instant::now();
    let mut roots = 0usize;
    for seed in 0..200u64 {
        let n = 2 + (seed as usize * 53) % 199;
        let g = synth::random_graph(n, n * (1 + seed as usize % 4), 1, 100, 50_000 + seed);
        let h = 1 + seed as usize % 10;
        let (level, fwd, bwd) = level0(&g, h);
        let mut scratch = SptScratch::new(n);
        for root in 0..n as NodeId {
            let trees = [
                build_partial_spt(&level, root, &fwd),
                build_partial_spt_with(
                    &level,
                    root,
                    &fwd,
                    PassiveRule::ReverseRadius(bwd.radii()),
                    &mut scratch,
                ),
            ];
            for tree in &trees {
                let slack = lift_arcs_slack(tree, fwd.radii(), bwd.radii());
                let direct = lift_arcs_direct(tree, &fwd, &bwd);
                ensure(slack == direct, || {
                    format!("graph {seed} root {root}: slack {slack:?} direct {direct:?}")
                })?;
            }
            roots += 1;
        }
    }
    within(Duration::from_secs(60), started.elapsed())?;
    Ok(format!("200 graphs, {roots} roots, full agreement"))
}

fn counterexample() -> Outcome {
    let g = fixtures::example_graph();
    let (level, fwd, bwd) = level0(&g, 3);
    let tree = build_partial_spt(&level, 0, &fwd);
    let ends = |arcs: Vec<ArcId>| -> Vec<(NodeId, NodeId)> {
        arcs.iter()
            .map(|&a| (g.arc(a).tail, g.arc(a).head))
            .collect()
    };
    let direct = ends(lift_arcs_direct(&tree, &fwd, &bwd));
    let forward_init = ends(lift_arcs_slack_forward_init(&tree, fwd.radii()));
    ensure(direct != forward_init, || format!("both lift {direct:?}"))?;
    Ok(format!(
        "example graph, root v0: forward-radius slack lifts {forward_init:?}, direct rule lifts {direct:?}"
    ))
}

fn leaf_radius_bound() -> Outcome {
    let mut triples = 0usize;
    for seed in 0..50u64 {
        let n = 10 + seed as usize % 60;
        let g = synth::random_graph(n, 3 * n, 1, 100, 70_000 + seed);
        let (level, fwd, bwd) = level0(&g, 2 + seed as usize % 6);
        let r = reversed(&g);
        let to: Vec<_> = (0..n as NodeId).map(|t| dijkstra_sssp(&r, &r, t)).collect();
        for s in 0..n as NodeId {
            for t in build_partial_spt(&level, s, &fwd).leaves() {
                let radius = bwd.radius(t);
                for u in 0..n as NodeId {
                    let Some(d) = to[t as usize].dist(u) else {
                        continue;
                    };
                    if bwd.contains(t, u) {
                        continue;
                    }
                    triples += 1;
                    ensure(
                        radius != INFINITY && (radius as i128) - (d as i128) < 0,
                        || {
                            format!(
                                "graph {seed}: s {s}, leaf {t}, u {u}: radius {radius}, d(u,t) {d}"
                            )
                        },
                    )?;
                }
            }
        }
    }
    Ok(format!(
        "50 graphs, {triples} (s, leaf, u) triples, no violation"
    ))
}

fn static_exactness(grid: &Grid) -> Outcome {
    let started = Instant::now();
    let mut engine = QueryEngine::new(&grid.hierarchy);
    let pairs = random_pairs(grid.graph.node_count(), 1000, 5);
    let mut wrong = Vec::new();
    for &(s, t) in &pairs {
        let hh = engine.query(&grid.graph, s, t).cost();
        let oracle = dijkstra_p2p(&grid.graph, &grid.graph, s, t).cost();
        if hh != oracle {
            wrong.push((s, t, hh, oracle));
        }
    }
    ensure(wrong.is_empty(), || {
        format!("{} wrong, first {:?}", wrong.len(), wrong[0])
    })?;
    let total = started.elapsed() + grid.build_time;
    within(Duration::from_secs(120), total)?;
    Ok(format!(
        "1000/1000 exact on {} nodes, build {:.1?}, total {total:.1?}",
        grid.graph.node_count(),
        grid.build_time
    ))
}

fn speedup(grid: &Grid) -> Outcome {
    let sizes = grid.hierarchy.level_sizes();
    ensure(sizes.len() >= 4, || format!("only {} levels", sizes.len()))?;
    for w in sizes.windows(2) {
        ensure(w[1].nodes < w[0].nodes, || {
            format!("level sizes do not shrink: {sizes:?}")
        })?;
    }
    let mut engine = QueryEngine::new(&grid.hierarchy);
    let mut runs: Vec<(Weight, usize, usize)> = Vec::new();
    for (s, t) in random_pairs(grid.graph.node_count(), 1000, 6) {
        let oracle = dijkstra_p2p(&grid.graph, &grid.graph, s, t);
        let Some(cost) = oracle.cost() else { continue };
        let hh = engine.query(&grid.graph, s, t);
        runs.push((cost, oracle.stats().settled, hh.stats().settled));
    }
    runs.sort_by_key(|r| std::cmp::Reverse(r.0));
    let top = &runs[..runs.len() / 4];
    let oracle = top.iter().map(|r| r.1).sum::<usize>() as f64 / top.len() as f64;
    let hh = top.iter().map(|r| r.2).sum::<usize>() as f64 / top.len() as f64;
    let ratio = hh / oracle;
    let detail = format!(
        "H={GRID_H}, L={GRID_LEVELS}, {} top-quartile pairs: bidirectional Dijkstra settles {oracle:.0}, hierarchy settles {hh:.0} (ratio {ratio:.3})",
        top.len()
    );
    ensure(ratio <= 0.2, || detail.clone())?;
    Ok(detail)
}

fn heuristic_quality(grid: &Grid) -> Outcome {
    let config = BenchConfig {
        queries: 500,
        seed: 17,
        min_factor: 1,
        max_factor: 15,
        min_rank: None,
        exclude: Vec::new(),
        median_of_3: false,
    };
    let report = run_bench(&grid.hierarchy, &config).map_err(|e| e.to_string())?;
    ensure(report.records.len() == 500, || {
        format!("only {} queries", report.records.len())
    })?;
    for r in &report.records {
        let best = r.run(Algorithm::Oracle).cost;
        for a in [Algorithm::Heuristic, Algorithm::Naive] {
            ensure(r.run(a).cost >= best, || {
                format!(
                    "{} {} -> {}: {} < {best}",
                    a.name(),
                    r.source,
                    r.target,
                    r.run(a).cost
                )
            })?;
        }
    }
    let heuristic = report.summary(Algorithm::Heuristic);
    let naive = report.summary(Algorithm::Naive);
    let detail = format!(
        "heuristic {:.2}% (variance {:.2}, max {:.2}%), naive {:.2}% (variance {:.2}, max {:.2}%)",
        heuristic.mean_error_pct,
        heuristic.error_variance,
        heuristic.max_error_pct,
        naive.mean_error_pct,
        naive.error_variance,
        naive.max_error_pct
    );
    ensure(heuristic.mean_error_pct <= naive.mean_error_pct, || {
        detail.clone()
    })?;
    Ok(detail)
}

/// Original arcs of `a`, expanded through the stored constituents.
fn expand(h: &HighwayHierarchy, a: ArcId, out: &mut Vec<ArcId>) {
    match h.shortcut(a) {
        Some(s) => s.constituents.iter().for_each(|&c| expand(h, c, out)),
        None => out.push(a),
    }
}

fn shortcut_conservation(grid: &Grid) -> Outcome {
    let mut hierarchies = vec![grid.hierarchy.clone()];
    hierarchies.push(build_hierarchy(
        &fixtures::example_graph(),
        HierarchyParams::new(3, 1),
    ));
    for seed in 0..30u64 {
        let n = 30 + seed as usize * 7;
        let g = synth::random_graph(n, 3 * n, 1, 100, 90_000 + seed);
        hierarchies.push(build_hierarchy(
            &g,
            HierarchyParams::new(2 + seed as u32 % 5, 1 + seed as u32 % 4),
        ));
    }
    hierarchies.push(build_hierarchy(
        &synth::road_grid(30, 30, 3),
        HierarchyParams::new(8, 5),
    ));
    let mut checked = 0usize;
    for (i, h) in hierarchies.iter().enumerate() {
        let g = h.graph();
        let dynamic = WeightOverlay::for_hierarchy(h)
            .apply_batch(&sample_random_weights(g, i as u64, 1, 15, &[]))
            .map_err(|e| e.to_string())?;
        for a in h.original_arc_count() as ArcId..h.arc_count() as ArcId {
            let mut parts = Vec::new();
            expand(h, a, &mut parts);
            ensure(parts == h.expansion(a), || {
                format!("hierarchy {i}, shortcut {a}: stored expansion differs")
            })?;
            let static_sum: Weight = parts.iter().map(|&o| g.weight(o)).sum();
            let dynamic_sum: Weight = parts.iter().map(|&o| dynamic.weight(o)).sum();
            ensure(h.arc(a).weight == static_sum, || {
                format!(
                    "hierarchy {i}, shortcut {a}: static {} vs {static_sum}",
                    h.arc(a).weight
                )
            })?;
            ensure(dynamic.dynamic_weight(h, a) == dynamic_sum, || {
                format!(
                    "hierarchy {i}, shortcut {a}: dynamic {} vs {dynamic_sum}",
                    dynamic.dynamic_weight(h, a)
                )
            })?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no shortcuts were built".into())?;
    Ok(format!(
        "{checked} shortcuts in {} hierarchies",
        hierarchies.len()
    ))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_dynhh"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(o.status.success(), || {
        format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr))
    })
}

fn determinism(grid: &Grid) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let mut text = Vec::new();
    write_graph(&grid.graph, &mut text).map_err(|e| e.to_string())?;
    fs::write(path("grid.txt"), text).map_err(|e| e.to_string())?;
    let (h, l) = (GRID_H.to_string(), GRID_LEVELS.to_string());
    for out in ["a.hh", "b.hh"] {
        run_cli(&[
            "preprocess",
            "--graph",
            &path("grid.txt"),
            "--hh-H",
            &h,
            "--levels",
            &l,
            "--out",
            &path(out),
        ])?;
    }
    for out in ["a.txt", "b.txt"] {
        run_cli(&[
            "bench",
            "--hh",
            &path("a.hh"),
            "--queries",
            "200",
            "--seed",
            "99",
            "--report",
            &path(out),
        ])?;
    }
    let read = |name: &str| fs::read(path(name)).map_err(|e| e.to_string());
    let (hh_a, hh_b) = (read("a.hh")?, read("b.hh")?);
    ensure(hh_a == hh_b, || "hierarchy files differ".into())?;
    ensure(read("a.txt")? == read("b.txt")?, || {
        "bench reports differ".into()
    })?;
    Ok(format!(
        "hierarchy files ({} bytes) and bench reports identical",
        hh_a.len()
    ))
}

fn nesting_violation(h: &HighwayHierarchy) -> Option<String> {
    let sizes = h.level_sizes();
    for w in sizes.windows(2) {
        if w[1].nodes > w[0].nodes || w[1].original_arcs > w[0].original_arcs {
            return Some(format!("level sizes grow: {sizes:?}"));
        }
    }
    for l in 0..h.levels() {
        for v in 0..h.node_count() as NodeId {
            if h.in_level(v, l + 1) && !(h.in_core(v, l) && h.in_level(v, l)) {
                return Some(format!(
                    "node {v} is in level {} but not in the level-{l} core",
                    l + 1
                ));
            }
        }
        for (a, arc) in h.arcs().iter().enumerate() {
            if arc.max_level > l && !(h.in_level(arc.tail, l + 1) && h.in_level(arc.head, l + 1)) {
                return Some(format!(
                    "arc {a} is in level {} without its endpoints",
                    l + 1
                ));
            }
        }
    }
    None
}

fn nesting(grid: &Grid) -> Outcome {
    let mut hierarchies = vec![grid.hierarchy.clone()];
    hierarchies.push(build_hierarchy(
        &fixtures::example_graph(),
        HierarchyParams::new(3, 1),
    ));
    hierarchies.push(build_hierarchy(&grid.graph, HierarchyParams::new(30, 4)));
    for seed in 0..40u64 {
        let n = 20 + seed as usize * 5;
        let g = synth::random_graph(n, n * (2 + seed as usize % 3), 1, 100, 110_000 + seed);
        hierarchies.push(build_hierarchy(
            &g,
            HierarchyParams::new(1 + seed as u32 % 6, 1 + seed as u32 % 5),
        ));
    }
    for (i, h) in hierarchies.iter().enumerate() {
        if let Some(v) = nesting_violation(h) {
            return Err(format!("hierarchy {i}: {v}"));
        }
    }
    Ok(format!("{} hierarchies nested", hierarchies.len()))
}

fn main() -> ExitCode {
    let grid = grid();
    let criteria: Vec<(&str, Check)> = vec![
        ("example golden fixture", Box::new(example_golden)),
        (
            "slack lifting equals direct lifting",
            Box::new(slack_equals_direct),
        ),
        (
            "forward-initialised slack counterexample",
            Box::new(counterexample),
        ),
        ("leaf radius bound", Box::new(leaf_radius_bound)),
        ("static exactness", Box::new(|| static_exactness(&grid))),
        ("settled-node speedup", Box::new(|| speedup(&grid))),
        (
            "heuristic quality direction",
            Box::new(|| heuristic_quality(&grid)),
        ),
        (
            "shortcut conservation",
            Box::new(|| shortcut_conservation(&grid)),
        ),
        ("determinism", Box::new(|| determinism(&grid))),
        ("hierarchy nesting", Box::new(|| nesting(&grid))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
