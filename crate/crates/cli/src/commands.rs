use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use dynhh::hierarchy::{read_hierarchy_file, write_hierarchy_file, HierarchyIoError, MAX_LEVELS};
use dynhh::oracle::dijkstra_p2p;
use dynhh::overlay::{
    parse_weight_file, sample_random_weights, write_weight_file, WeightFileError,
};
use dynhh::query::naive_with;
use dynhh::{
    build_hierarchy, parse_graph, ArcId, ArcWeights, BypassPolicy, Graph, HierarchyParams,
    HighwayHierarchy, NodeId, ParseError, QueryEngine, QueryOutcome, QueryResult, WeightOverlay,
};

use crate::args::{
    BenchArgs, Command, ExportPathArgs, GenWeightsArgs, Mode, OracleArgs, PreprocessArgs,
    QueryArgs, RouteArgs,
};
use crate::bench::{run_bench, BenchConfig};
use crate::error::CliError;
use crate::export::write_path;

pub(crate) fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Preprocess(a) => preprocess(&a, out),
        Command::Query(a) => query(&a, out),
        Command::Oracle(a) => oracle(&a, out),
        Command::Bench(a) => bench(&a, out),
        Command::GenWeights(a) => gen_weights(&a, out),
        Command::ExportPath(a) => export_path(&a, out),
    }
}

fn stdout_error(e: io::Error) -> CliError {
    CliError::io(Path::new("<stdout>"), e)
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::io(path, e))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(open(path)?).map_err(|e| match e {
        ParseError::Io(e) => CliError::io(path, e),
        e => CliError::format(path, e),
    })
}

fn load_hierarchy(path: &Path) -> Result<HighwayHierarchy, CliError> {
    read_hierarchy_file(path).map_err(|e| match e {
        HierarchyIoError::Io(e) => CliError::io(path, e),
        e => CliError::format(path, e),
    })
}

/// Applies a weight file on top of `base`, or returns `base` unchanged.
fn load_weights(path: Option<&Path>, base: WeightOverlay) -> Result<WeightOverlay, CliError> {
    let Some(path) = path else { return Ok(base) };
    let batch = parse_weight_file(open(path)?).map_err(|e| match e {
        WeightFileError::Io(e) => CliError::io(path, e),
        e => CliError::format(path, e),
    })?;
    base.apply_batch(&batch)
        .map_err(|e| CliError::format(path, e))
}

/// Reads arc ids, one per line; `#` lines and blank lines are skipped.
fn load_exclusions(path: Option<&Path>, arc_count: usize) -> Result<Vec<ArcId>, CliError> {
    let Some(path) = path else {
        return Ok(Vec::new());
    };
    let mut ids = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        match text.parse::<ArcId>() {
            Ok(a) if (a as usize) < arc_count => ids.push(a),
            _ => {
                return Err(CliError::format(
                    path,
                    format!(
                        "line {}: expected an arc id below {arc_count}, got {text:?}",
                        i + 1
                    ),
                ))
            }
        }
    }
    Ok(ids)
}

fn check_node(graph: &Graph, what: &str, v: NodeId) -> Result<(), CliError> {
    if (v as usize) < graph.node_count() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{what} {v} out of range ({} nodes)",
            graph.node_count()
        )))
    }
}

fn check_factors(min: u64, max: u64) -> Result<(), CliError> {
    if 1 <= min && min <= max {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "need 1 <= min-factor <= max-factor, got {min} and {max}"
        )))
    }
}

fn preprocess(a: &PreprocessArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.neighborhood_size == 0 {
        return Err(CliError::Usage("--hh-H must be at least 1".into()));
    }
    if a.levels > MAX_LEVELS {
        return Err(CliError::Usage(format!(
            "--levels must be at most {MAX_LEVELS}"
        )));
    }
    let graph = load_graph(&a.graph)?;
    let params = HierarchyParams {
        neighborhood_size: a.neighborhood_size,
        levels: a.levels,
        bypass: BypassPolicy {
            max_in: a.max_in,
            max_out: a.max_out,
            slack: a.bypass_slack,
        },
    };
    let h = build_hierarchy(&graph, params);
    write_hierarchy_file(&h, &a.out).map_err(|e| CliError::io(&a.out, e))?;

    let sizes = h.level_sizes();
    let mut text = format!(
        "{:>5} {:>10} {:>10} {:>13} {:>13}\n",
        "level", "nodes", "core nodes", "original arcs", "shortcut arcs"
    );
    for s in &sizes {
        text += &format!(
            "{:>5} {:>10} {:>10} {:>13} {:>13}\n",
            s.level, s.nodes, s.core_nodes, s.original_arcs, s.shortcut_arcs
        );
    }
    text.push('\n');
    for s in &sizes {
        text += &format!(
            "level={} nodes={} core_nodes={} original_arcs={} shortcut_arcs={}\n",
            s.level, s.nodes, s.core_nodes, s.original_arcs, s.shortcut_arcs
        );
    }
    out.write_all(text.as_bytes()).map_err(stdout_error)
}

/// Runs the query described by `a` and returns the hierarchy and weights it
/// was answered with.
fn route(a: &RouteArgs) -> Result<(HighwayHierarchy, WeightOverlay, QueryResult), CliError> {
    let h = load_hierarchy(&a.hh)?;
    check_node(h.graph(), "source", a.source)?;
    check_node(h.graph(), "target", a.target)?;
    let weights = load_weights(a.weights.as_deref(), WeightOverlay::for_hierarchy(&h))?;
    let outcome = match a.mode {
        Mode::Heuristic => QueryEngine::new(&h).query(&weights, a.source, a.target),
        Mode::Naive => naive_with(&mut QueryEngine::new(&h), &weights, a.source, a.target),
        Mode::Oracle => dijkstra_p2p(h.graph(), &weights, a.source, a.target),
    };
    let result = found(outcome, a.source, a.target)?;
    Ok((h, weights, result))
}

fn found(outcome: QueryOutcome, source: NodeId, target: NodeId) -> Result<QueryResult, CliError> {
    outcome.into_found().ok_or(CliError::NoPath {
        from: source,
        to: target,
    })
}

fn print_route<W: ArcWeights>(
    graph: &Graph,
    weights: &W,
    r: &QueryResult,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let nodes: Vec<String> = r.nodes(graph).iter().map(ToString::to_string).collect();
    let mut text = format!("cost: {}\npath: {}\n", r.cost, nodes.join(" "));
    for &a in &r.arcs {
        let arc = graph.arc(a);
        text += &format!(
            "  arc {a}: {} -> {} cost {}\n",
            arc.tail,
            arc.head,
            weights.weight(a)
        );
    }
    text += &format!(
        "settled: {}\nexplored: {}\nhops: {}\ntime_ms: {:.3}\n",
        r.stats.settled,
        r.stats.explored,
        r.hops,
        r.stats.duration.as_secs_f64() * 1000.0
    );
    out.write_all(text.as_bytes()).map_err(stdout_error)
}

fn query(a: &QueryArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (h, weights, result) = route(&a.route)?;
    print_route(h.graph(), &weights, &result, out)
}

fn oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let graph = load_graph(&a.graph)?;
    check_node(&graph, "source", a.source)?;
    check_node(&graph, "target", a.target)?;
    let weights = load_weights(a.weights.as_deref(), WeightOverlay::new(&graph))?;
    let result = found(
        dijkstra_p2p(&graph, &weights, a.source, a.target),
        a.source,
        a.target,
    )?;
    print_route(&graph, &weights, &result, out)
}

fn bench(a: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.queries == 0 {
        return Err(CliError::Usage("--queries must be at least 1".into()));
    }
    check_factors(a.min_factor, a.max_factor)?;
    let h = load_hierarchy(&a.hh)?;
    let config = BenchConfig {
        queries: a.queries,
        seed: a.seed,
        min_factor: a.min_factor,
        max_factor: a.max_factor,
        min_rank: a.min_rank,
        exclude: load_exclusions(a.exclude.as_deref(), h.original_arc_count())?,
        median_of_3: a.median_of_3,
    };
    let report = run_bench(&h, &config).map_err(|e| CliError::format(&a.hh, e))?;
    let machine = report.machine_report();
    if let Some(path) = &a.report {
        fs::write(path, &machine).map_err(|e| CliError::io(path, e))?;
    }
    write!(out, "{}\n{}", report.table(), machine).map_err(stdout_error)
}

fn gen_weights(a: &GenWeightsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    check_factors(a.min_factor, a.max_factor)?;
    let graph = load_graph(&a.graph)?;
    let exclude = load_exclusions(a.exclude.as_deref(), graph.arc_count())?;
    let batch = sample_random_weights(&graph, a.seed, a.min_factor, a.max_factor, &exclude);
    let file = File::create(&a.out).map_err(|e| CliError::io(&a.out, e))?;
    let mut w = BufWriter::new(file);
    write_weight_file(&batch, &mut w)
        .and_then(|()| w.flush())
        .map_err(|e| CliError::io(&a.out, e))?;
    writeln!(
        out,
        "wrote {} arc weights to {}",
        batch.updates.len(),
        a.out.display()
    )
    .map_err(stdout_error)
}

fn export_path(a: &ExportPathArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (h, weights, result) = route(&a.route)?;
    let file = File::create(&a.out).map_err(|e| CliError::io(&a.out, e))?;
    let mut w = BufWriter::new(file);
    write_path(&result, h.graph(), &weights, a.format, &mut w)
        .and_then(|()| w.flush())
        .map_err(|e| CliError::io(&a.out, e))?;
    writeln!(
        out,
        "cost: {}\nwrote {} arcs to {}",
        result.cost,
        result.arcs.len(),
        a.out.display()
    )
    .map_err(stdout_error)
}
