use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use parcore::generate::{
    core_stratum_edges, generate_graph, random_existing_edges, random_non_edges, rng, GraphModel,
};
use parcore::io::{
    intern_pairs, load_edge_list, read_cores, read_pairs, write_cores, write_edge_list, LoadedGraph,
};
use parcore::{
    peel, sequential_baseline, superior_delete, superior_insert, BatchMode, BenchReport, ChangeLog,
    CoreMap, Edge, EdgeBatch, EngineOptions, Graph, IdMap,
};

use crate::{BenchArgs, Command, GenArgs, ModelArg, Synthetic, UpdateArgs, VerifyArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: parcore::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("vertex {vertex}: expected core {expected}, found {found}")]
    Mismatch {
        vertex: u64,
        expected: u32,
        found: String,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Mismatch { .. } => 3,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T>;
}

impl<T> Context<T> for parcore::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|source| CliError::Core {
            context: what(),
            source,
        })
    }
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Insert(args) => update(args, BatchMode::Insert),
        Command::Delete(args) => update(args, BatchMode::Delete),
        Command::Verify(args) => verify(args),
        Command::Bench(args) => bench(args),
        Command::Gen(args) => gen(args),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| CliError::File {
            path: path.to_owned(),
            source,
        })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::File {
            path: path.to_owned(),
            source,
        })
}

fn load_graph(path: &Path) -> Result<LoadedGraph> {
    load_edge_list(open(path)?).context(|| path.display().to_string())
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run_engine(
    g: &mut Graph,
    cores: &mut CoreMap,
    batch: &mut EdgeBatch,
    mode: BatchMode,
    workers: usize,
    baseline: bool,
) -> parcore::Result<ChangeLog> {
    let opts = EngineOptions::with_workers(workers);
    match (baseline, mode) {
        (true, _) => sequential_baseline(g, cores, batch, mode),
        (false, BatchMode::Insert) => superior_insert(g, cores, batch, &opts),
        (false, BatchMode::Delete) => superior_delete(g, cores, batch, &opts),
    }
}

fn update(args: UpdateArgs, mode: BatchMode) -> Result<()> {
    let LoadedGraph {
        mut graph, mut ids, ..
    } = load_graph(&args.graph)?;
    let pairs = read_pairs(open(&args.batch)?).context(|| args.batch.display().to_string())?;
    let (edges, self_loops) = match mode {
        BatchMode::Insert => {
            let (edges, loops) = intern_pairs(&pairs, &mut ids);
            graph.ensure_vertex_count(ids.len());
            (edges, loops)
        }
        BatchMode::Delete => lookup_pairs(&pairs, &ids)?,
    };
    if self_loops > 0 {
        eprintln!("parcore: skipped {self_loops} self-loop(s) in the batch");
    }

    let mut cores = peel(&graph);
    let mut batch = match mode {
        BatchMode::Insert => EdgeBatch::for_insert(&graph, edges),
        BatchMode::Delete => {
            EdgeBatch::for_delete(&graph, edges).context(|| args.batch.display().to_string())?
        }
    };
    let size = batch.len();
    let workers = if args.baseline {
        1
    } else {
        usize::from(args.threads)
    };
    let start = Instant::now();
    let log = run_engine(
        &mut graph,
        &mut cores,
        &mut batch,
        mode,
        workers,
        args.baseline,
    )
    .context(|| format!("{} failed", mode.as_str()))?;
    let report = BenchReport::from_log(
        dataset_name(&args.graph),
        size,
        workers,
        start.elapsed(),
        &log,
    );

    if let Some(path) = &args.out_cores {
        let mut out = create(path)?;
        write_cores(&cores, &ids, &mut out).context(|| path.display().to_string())?;
        out.flush()?;
    }
    if let Some(path) = &args.log {
        let mut out = create(path)?;
        log.write_text(Some(&ids), &mut out)
            .context(|| path.display().to_string())?;
        out.flush()?;
    }
    let mut stdout = io::stdout().lock();
    writeln!(stdout, "{}", BenchReport::HEADER)?;
    writeln!(stdout, "{report}")?;
    Ok(())
}

/// Deletion batches may only name vertices the graph already has.
fn lookup_pairs(pairs: &[(u64, u64)], ids: &IdMap) -> Result<(Vec<Edge>, usize)> {
    let mut edges = Vec::with_capacity(pairs.len());
    let mut self_loops = 0;
    for &(a, b) in pairs {
        let (Some(x), Some(y)) = (ids.internal(a), ids.internal(b)) else {
            return Err(CliError::Core {
                context: "delete batch".into(),
                source: parcore::Error::InvalidParameter(format!(
                    "edge {a}-{b} names a vertex not in the graph"
                )),
            });
        };
        match Edge::new(x, y) {
            Ok(e) => edges.push(e),
            Err(_) => self_loops += 1,
        }
    }
    Ok((edges, self_loops))
}

fn verify(args: VerifyArgs) -> Result<()> {
    let LoadedGraph { graph, ids, .. } = load_graph(&args.graph)?;
    let claimed = read_cores(open(&args.cores)?).context(|| args.cores.display().to_string())?;
    let expected = peel(&graph);

    // Rows of (external id, expected, found) that disagree.
    let mut rows: Vec<(u64, u32, Option<u32>)> = Vec::new();
    let mut found: Vec<Option<u32>> = vec![None; graph.vertex_count()];
    for (id, core) in claimed {
        match ids.internal(id) {
            Some(v) => found[v as usize] = Some(core),
            // Ids absent from the edge list are isolated vertices.
            None if core != 0 => rows.push((id, 0, Some(core))),
            None => {}
        }
    }
    rows.extend(
        (0..graph.vertex_count() as u32)
            .map(|v| (ids.external(v), expected.get(v), found[v as usize]))
            .filter(|&(_, want, got)| got != Some(want)),
    );
    match rows.into_iter().min_by_key(|r| r.0) {
        None => {
            println!("ok: {} vertices match", graph.vertex_count());
            Ok(())
        }
        Some((vertex, expected, got)) => Err(CliError::Mismatch {
            vertex,
            expected,
            found: got.map_or_else(|| "nothing".to_string(), |c| c.to_string()),
        }),
    }
}

fn synthesize(s: &Synthetic) -> Result<(Graph, String)> {
    let model = s.model.unwrap_or(ModelArg::Er);
    let name = match model {
        ModelArg::Er => "er",
        ModelArg::Ba => "ba",
    };
    let g = generate_graph(GraphModel::from(model), s.n, s.deg, s.seed)
        .context(|| format!("generating {name}"))
        .map_err(usage_if_param)?;
    Ok((g, format!("{name}-{}-{}", s.n, s.deg)))
}

/// Bad generator parameters are a usage problem, not a runtime one.
fn usage_if_param(err: CliError) -> CliError {
    match err {
        CliError::Core {
            context,
            source: parcore::Error::InvalidParameter(msg),
        } => CliError::Usage(format!("{context}: {msg}")),
        other => other,
    }
}

fn sample_batch(
    graph: &mut Graph,
    mode: BatchMode,
    size: usize,
    stratum: Option<(u32, f64)>,
    seed: u64,
) -> Result<Vec<Edge>> {
    let mut r = rng(seed ^ 0xba7c);
    match stratum {
        Some((k, fraction)) => {
            let cores = peel(graph);
            let edges = core_stratum_edges(graph, &cores, k, fraction, &mut r);
            if mode == BatchMode::Insert {
                // Inserting the stratum back into the graph without it.
                for &e in &edges {
                    graph.remove_edge(e);
                }
            }
            Ok(edges)
        }
        None => match mode {
            BatchMode::Insert => random_non_edges(graph, size, &mut r),
            BatchMode::Delete => random_existing_edges(graph, size, &mut r),
        }
        .context(|| "sampling batch".into())
        .map_err(usage_if_param),
    }
}

fn bench(args: BenchArgs) -> Result<()> {
    let (mut graph, dataset) = match &args.graph {
        Some(path) => (load_graph(path)?.graph, dataset_name(path)),
        None => synthesize(&args.synthetic)?,
    };
    if !(0.0..=1.0).contains(&args.stratum_fraction) {
        return Err(CliError::Usage(
            "--stratum-fraction must lie in [0, 1]".into(),
        ));
    }
    let mode = BatchMode::from(args.mode);
    let stratum = args.core_stratum.map(|k| (k, args.stratum_fraction));
    let edges = sample_batch(
        &mut graph,
        mode,
        args.batch_size,
        stratum,
        args.synthetic.seed,
    )?;
    let cores = peel(&graph);

    let baseline_per_edge = if args.baseline {
        let take = args.baseline_sample.unwrap_or(edges.len()).min(edges.len());
        let report = time_run(&graph, &cores, &edges[..take], mode, 1, true, &dataset)?;
        Some(report)
    } else {
        None
    };

    let mut stdout = io::stdout().lock();
    writeln!(stdout, "{}", BenchReport::HEADER)?;
    if let Some(report) = &baseline_per_edge {
        writeln!(
            stdout,
            "{}",
            BenchReport {
                dataset: format!("{dataset}/baseline"),
                ..report.clone()
            }
        )?;
    }
    for &workers in &args.threads {
        let mut report = time_run(
            &graph,
            &cores,
            &edges,
            mode,
            usize::from(workers),
            false,
            &dataset,
        )?;
        if let Some(base) = &baseline_per_edge {
            report = report.with_baseline(base.per_edge());
        }
        writeln!(stdout, "{report}")?;
        stdout.flush()?;
    }
    Ok(())
}

fn time_run(
    graph: &Graph,
    cores: &CoreMap,
    edges: &[Edge],
    mode: BatchMode,
    workers: usize,
    baseline: bool,
    dataset: &str,
) -> Result<BenchReport> {
    let (mut g, mut c) = (graph.clone(), cores.clone());
    let mut batch = match mode {
        BatchMode::Insert => EdgeBatch::for_insert(&g, edges.iter().copied()),
        BatchMode::Delete => {
            EdgeBatch::for_delete(&g, edges.iter().copied()).context(|| "batch".into())?
        }
    };
    let size = batch.len();
    let start = Instant::now();
    let log = run_engine(&mut g, &mut c, &mut batch, mode, workers, baseline)
        .context(|| format!("{} with {workers} worker(s)", mode.as_str()))?;
    let elapsed: Duration = start.elapsed();
    Ok(BenchReport::from_log(dataset, size, workers, elapsed, &log))
}

fn gen(args: GenArgs) -> Result<()> {
    let (mut graph, _) = synthesize(&args.synthetic)?;
    let ids = IdMap::identity(graph.vertex_count());
    let batch = match (&args.batch, args.batch_size) {
        (Some(path), Some(size)) => {
            let mode = BatchMode::from(args.mode);
            Some((
                path,
                sample_batch(&mut graph, mode, size, None, args.synthetic.seed)?,
            ))
        }
        _ => None,
    };
    match &args.out {
        Some(path) => {
            let mut out = create(path)?;
            write_edge_list(&graph, &ids, &mut out).context(|| path.display().to_string())?;
            out.flush()?;
        }
        None => {
            let mut out = BufWriter::new(io::stdout().lock());
            write_edge_list(&graph, &ids, &mut out).context(|| "stdout".into())?;
            out.flush()?;
        }
    }
    if let Some((path, edges)) = batch {
        let mut out = create(path)?;
        for e in edges {
            writeln!(out, "{} {}", e.u(), e.v())?;
        }
        out.flush()?;
    }
    Ok(())
}
