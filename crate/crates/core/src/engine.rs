//! Round driver shared by batch insertion and deletion.
//!
//! Each round: plan a superior edge set from the pending batch, mutate the
//! graph, run one task per level against the frozen graph and cores, then
//! move every reported vertex by one. Core updates are applied only after
//! every level task of the round succeeded; on failure the round's graph
//! mutation is undone and its edges go back to the batch.

use rustc_hash::FxHashSet;

use crate::changelog::{ChangeLog, RoundRecord};
use crate::decremental::delete_level_task;
use crate::error::{Error, Result};
use crate::graph::{AddStatus, Edge, Graph, RemoveStatus, VertexId};
use crate::incremental::insert_level_task;
use crate::partition::{edge_core, plan_round, BatchMode, EdgeBatch, LevelEdges, RoundPlan};
use crate::runtime::{run_level_tasks, LevelJob, LevelTaskResult, TaskCounters};
use crate::static_core::{peel, CoreMap};
use crate::task::{ScratchPool, TaskState};

/// Environment variable consulted by front ends for the default worker count.
pub const WORKERS_ENV: &str = "PARCORE_THREADS";

#[derive(Clone, Debug)]
pub struct EngineOptions {
    /// Maximum number of level tasks running at once.
    pub workers: usize,
    fault_level: Option<u32>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            workers: 1,
            fault_level: None,
        }
    }
}

impl EngineOptions {
    pub fn with_workers(workers: usize) -> Self {
        EngineOptions {
            workers,
            ..Self::default()
        }
    }

    /// Makes the level task at `level` fail. Only meant for exercising round
    /// rollback.
    #[doc(hidden)]
    pub fn inject_fault(mut self, level: u32) -> Self {
        self.fault_level = Some(level);
        self
    }
}

/// What an observer sees after each committed round.
pub struct RoundView<'a> {
    pub record: &'a RoundRecord,
    pub graph: &'a Graph,
    pub before: &'a CoreMap,
    pub after: &'a CoreMap,
}

pub type RoundObserver<'o> = &'o mut dyn FnMut(&RoundView<'_>);

fn mutate(g: &mut Graph, mode: BatchMode, e: Edge) -> bool {
    match mode {
        BatchMode::Insert => g.add_edge(e) == AddStatus::New,
        BatchMode::Delete => g.remove_edge(e) == RemoveStatus::Removed,
    }
}

fn undo(g: &mut Graph, mode: BatchMode, e: Edge) {
    match mode {
        BatchMode::Insert => {
            g.remove_edge(e);
        }
        BatchMode::Delete => {
            g.add_edge(e);
        }
    }
}

/// Applies one planned round. Returns `None` if every planned edge turned out
/// to be a no-op for the graph; `dropped` counts such edges.
#[allow(clippy::too_many_arguments)]
pub(crate) fn apply_round(
    g: &mut Graph,
    cores: &mut CoreMap,
    plan: &RoundPlan,
    mode: BatchMode,
    opts: &EngineOptions,
    index: usize,
    dropped: &mut usize,
    pool: &ScratchPool,
) -> Result<Option<RoundRecord>> {
    let mut levels: Vec<LevelEdges> = Vec::with_capacity(plan.levels.len());
    for lvl in &plan.levels {
        let mut edges = Vec::with_capacity(lvl.edges.len());
        for &e in &lvl.edges {
            if mutate(g, mode, e) {
                edges.push(e);
            } else {
                *dropped += 1;
            }
        }
        if !edges.is_empty() {
            levels.push(LevelEdges {
                level: lvl.level,
                edges,
            });
        }
    }
    if levels.is_empty() {
        return Ok(None);
    }
    cores.ensure_len(g.vertex_count());

    let jobs: Vec<LevelJob> = levels
        .iter()
        .map(|l| LevelJob {
            level: l.level,
            weight: l.edges.len(),
        })
        .collect();
    let outcome = {
        let (graph, frozen) = (&*g, &*cores);
        let levels = &levels;
        run_level_tasks(&jobs, opts.workers, |k| {
            if opts.fault_level == Some(k) {
                return Err(Error::TaskFailed {
                    level: k,
                    message: "injected fault".into(),
                });
            }
            let idx = levels
                .binary_search_by_key(&k, |l| l.level)
                .expect("job level is planned");
            let mut state = TaskState::with_scratch(graph, frozen, k, pool.take());
            let res = match mode {
                BatchMode::Insert => insert_level_task(&mut state, &levels[idx].edges),
                BatchMode::Delete => delete_level_task(&mut state, &levels[idx].edges),
            };
            pool.give(state.into_scratch());
            Ok(res)
        })
    };
    let results = match outcome.and_then(|r| check_results(cores, &r, mode, index).map(|_| r)) {
        Ok(r) => r,
        Err(err) => {
            for lvl in &levels {
                for &e in &lvl.edges {
                    undo(g, mode, e);
                }
            }
            return Err(err);
        }
    };

    let mut changed = Vec::new();
    let mut counters = TaskCounters::default();
    for res in results {
        counters += res.counters;
        for &v in &res.vertices {
            let c = cores.get(v);
            cores.set(
                v,
                match mode {
                    BatchMode::Insert => c + 1,
                    BatchMode::Delete => c - 1,
                },
            );
        }
        changed.extend(res.vertices);
    }
    changed.sort_unstable();
    Ok(Some(RoundRecord {
        index,
        levels: levels.iter().map(|l| l.level).collect(),
        edges: levels
            .iter()
            .flat_map(|l| l.edges.iter().copied())
            .collect(),
        changed,
        counters,
    }))
}

/// Every reported vertex must sit at its task's level, once, and a deletion
/// can never lower a core below zero.
fn check_results(
    cores: &CoreMap,
    results: &[LevelTaskResult],
    mode: BatchMode,
    round: usize,
) -> Result<()> {
    let mut seen: FxHashSet<VertexId> = FxHashSet::default();
    for res in results {
        for &v in &res.vertices {
            let c = cores.get(v);
            let bad = if c != res.level {
                Some(format!(
                    "vertex {v} has core {c} but was reported by level {}",
                    res.level
                ))
            } else if !seen.insert(v) {
                Some(format!("vertex {v} reported twice"))
            } else if mode == BatchMode::Delete && c == 0 {
                Some(format!("vertex {v} would drop below core 0"))
            } else {
                None
            };
            if let Some(message) = bad {
                return Err(Error::InvariantViolation { round, message });
            }
        }
    }
    Ok(())
}

fn run_batch(
    g: &mut Graph,
    cores: &mut CoreMap,
    batch: &mut EdgeBatch,
    mode: BatchMode,
    opts: &EngineOptions,
    mut observer: Option<RoundObserver<'_>>,
) -> Result<ChangeLog> {
    let mut log = ChangeLog::new(mode);
    log.dropped = batch.dropped();
    let pool = ScratchPool::default();
    cores.ensure_len(g.vertex_count());
    while !batch.is_empty() {
        let plan = plan_round(batch, cores);
        let before = observer.as_ref().map(|_| cores.clone());
        let index = log.rounds.len();
        match apply_round(g, cores, &plan, mode, opts, index, &mut log.dropped, &pool) {
            Ok(Some(record)) => {
                if let (Some(obs), Some(before)) = (observer.as_mut(), before.as_ref()) {
                    obs(&RoundView {
                        record: &record,
                        graph: g,
                        before,
                        after: cores,
                    });
                }
                log.rounds.push(record);
            }
            Ok(None) => {}
            Err(err) => {
                batch.restore(plan.edges());
                return Err(err);
            }
        }
    }
    Ok(log)
}

/// Inserts every pending edge of `batch` into `g`, keeping `cores` exact.
/// `cores` must be the core map of `g` on entry.
pub fn superior_insert(
    g: &mut Graph,
    cores: &mut CoreMap,
    batch: &mut EdgeBatch,
    opts: &EngineOptions,
) -> Result<ChangeLog> {
    run_batch(g, cores, batch, BatchMode::Insert, opts, None)
}

/// [`superior_insert`] with a callback after every committed round.
pub fn superior_insert_observed(
    g: &mut Graph,
    cores: &mut CoreMap,
    batch: &mut EdgeBatch,
    opts: &EngineOptions,
    observer: RoundObserver<'_>,
) -> Result<ChangeLog> {
    run_batch(g, cores, batch, BatchMode::Insert, opts, Some(observer))
}

/// Deletes every pending edge of `batch` from `g`, keeping `cores` exact.
pub fn superior_delete(
    g: &mut Graph,
    cores: &mut CoreMap,
    batch: &mut EdgeBatch,
    opts: &EngineOptions,
) -> Result<ChangeLog> {
    run_batch(g, cores, batch, BatchMode::Delete, opts, None)
}

pub fn superior_delete_observed(
    g: &mut Graph,
    cores: &mut CoreMap,
    batch: &mut EdgeBatch,
    opts: &EngineOptions,
    observer: RoundObserver<'_>,
) -> Result<ChangeLog> {
    run_batch(g, cores, batch, BatchMode::Delete, opts, Some(observer))
}

/// Applies `batch` one edge at a time, each edge forming its own round
/// through the same level-task path. This is the per-edge traversal
/// baseline the batched engine is compared against.
pub fn sequential_baseline(
    g: &mut Graph,
    cores: &mut CoreMap,
    batch: &mut EdgeBatch,
    mode: BatchMode,
) -> Result<ChangeLog> {
    let opts = EngineOptions::default();
    let mut log = ChangeLog::new(mode);
    log.dropped = batch.dropped();
    let pool = ScratchPool::default();
    cores.ensure_len(g.vertex_count());
    let edges: Vec<Edge> = batch.pending().collect();
    for (i, &e) in edges.iter().enumerate() {
        let plan = RoundPlan {
            levels: vec![LevelEdges {
                level: edge_core(cores, e),
                edges: vec![e],
            }],
        };
        let index = log.rounds.len();
        match apply_round(g, cores, &plan, mode, &opts, index, &mut log.dropped, &pool) {
            Ok(Some(record)) => log.rounds.push(record),
            Ok(None) => {}
            Err(err) => {
                *batch = EdgeBatch::new(edges[i..].iter().copied());
                return Err(err);
            }
        }
    }
    *batch = EdgeBatch::default();
    Ok(log)
}

/// A graph together with its maintained core numbers.
#[derive(Clone, Debug)]
pub struct Maintainer {
    graph: Graph,
    cores: CoreMap,
    opts: EngineOptions,
}

impl Maintainer {
    /// Takes ownership of `graph` and computes its cores by peeling.
    pub fn new(graph: Graph, opts: EngineOptions) -> Self {
        let cores = peel(&graph);
        Maintainer { graph, cores, opts }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cores(&self) -> &CoreMap {
        &self.cores
    }

    pub fn options(&self) -> &EngineOptions {
        &self.opts
    }

    pub fn into_parts(self) -> (Graph, CoreMap) {
        (self.graph, self.cores)
    }

    /// Inserts edges; ones already in the graph are dropped.
    pub fn insert_edges<I: IntoIterator<Item = Edge>>(&mut self, edges: I) -> Result<ChangeLog> {
        let mut batch = EdgeBatch::for_insert(&self.graph, edges);
        superior_insert(&mut self.graph, &mut self.cores, &mut batch, &self.opts)
    }

    /// Deletes edges; fails without touching anything if one is absent.
    pub fn delete_edges<I: IntoIterator<Item = Edge>>(&mut self, edges: I) -> Result<ChangeLog> {
        let mut batch = EdgeBatch::for_delete(&self.graph, edges)?;
        superior_delete(&mut self.graph, &mut self.cores, &mut batch, &self.opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::static_core::naive_core_oracle;

    fn e(a: VertexId, b: VertexId) -> Edge {
        Edge::new(a, b).unwrap()
    }

    fn k4_minus_edge() -> Graph {
        Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn empty_batch_changes_nothing() {
        let mut g = k4_minus_edge();
        let mut cores = peel(&g);
        let before = cores.clone();
        let log = superior_insert(
            &mut g,
            &mut cores,
            &mut EdgeBatch::default(),
            &EngineOptions::default(),
        )
        .unwrap();
        assert_eq!(log.round_count(), 0);
        assert_eq!(cores, before);
        assert_eq!(g.edge_count(), 5);
        let log = superior_delete(
            &mut g,
            &mut cores,
            &mut EdgeBatch::default(),
            &EngineOptions::default(),
        )
        .unwrap();
        assert_eq!(log.round_count(), 0);
        assert_eq!(cores, before);
    }

    #[test]
    fn insert_then_delete_round_trip() {
        let mut m = Maintainer::new(k4_minus_edge(), EngineOptions::default());
        let log = m.insert_edges([e(2, 3), e(3, 4), e(4, 5)]).unwrap();
        assert_eq!(m.cores(), &naive_core_oracle(m.graph()));
        assert!(log.round_count() >= 1);
        m.delete_edges([e(2, 3), e(3, 4), e(4, 5)]).unwrap();
        assert_eq!(m.cores(), &naive_core_oracle(m.graph()));
        // stranded vertices stay with core 0
        assert_eq!(m.graph().vertex_count(), 6);
        assert_eq!(m.cores().get(5), 0);
    }

    #[test]
    fn deleting_everything_zeroes_cores() {
        let g = Graph::from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let edges = g.edges();
        let mut m = Maintainer::new(g, EngineOptions::with_workers(4));
        m.delete_edges(edges).unwrap();
        assert_eq!(m.graph().edge_count(), 0);
        assert!(m.cores().as_slice().iter().all(|&c| c == 0));
    }

    #[test]
    fn missing_delete_edge_is_rejected_before_mutation() {
        let mut m = Maintainer::new(k4_minus_edge(), EngineOptions::default());
        let err = m.delete_edges([e(0, 1), e(2, 3)]).unwrap_err();
        assert!(matches!(err, Error::MissingEdges(ref v) if v == &vec![e(2, 3)]));
        assert_eq!(m.graph().edge_count(), 5);
    }

    #[test]
    fn failed_round_rolls_back() {
        // levels {1, 2, 3}: pendant 4 off vertex 0 gives level 1
        let mut g = k4_minus_edge();
        g.add_edge(e(0, 4));
        let mut cores = peel(&g);
        let (g0, c0) = (g.clone(), cores.clone());
        // (2,3) at level 2, (4,5) at level 0 for the new vertex 5, (1,4) at level 1
        let mut batch = EdgeBatch::for_insert(&g, [e(2, 3), e(4, 5), e(1, 4)]);
        let opts = EngineOptions::with_workers(2).inject_fault(1);
        let err = superior_insert(&mut g, &mut cores, &mut batch, &opts).unwrap_err();
        assert!(matches!(err, Error::TaskFailed { level: 1, .. }));
        assert_eq!(batch.len(), 3);
        assert_eq!(g.edges(), g0.edges());
        assert_eq!(cores.first_mismatch(&c0), None);

        // the same batch then goes through cleanly
        let log = superior_insert(
            &mut g,
            &mut cores,
            &mut batch,
            &EngineOptions::with_workers(2),
        )
        .unwrap();
        assert_eq!(log.edges_applied(), 3);
        assert_eq!(cores, peel(&g));
    }

    #[test]
    fn observer_sees_every_round() {
        let mut g = k4_minus_edge();
        let mut cores = peel(&g);
        let mut batch = EdgeBatch::for_insert(&g, [e(2, 3), e(3, 4), e(3, 5), e(3, 6)]);
        let mut seen = Vec::new();
        let log = superior_insert_observed(
            &mut g,
            &mut cores,
            &mut batch,
            &EngineOptions::default(),
            &mut |view| {
                for v in 0..view.after.len() as VertexId {
                    assert!(view.after.get(v) - view.before.get(v) <= 1);
                }
                seen.push(view.record.index);
            },
        )
        .unwrap();
        assert_eq!(seen, (0..log.round_count()).collect::<Vec<_>>());
        assert_eq!(cores, peel(&g));
    }

    #[test]
    fn baseline_matches_engine() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let adds = [e(1, 3), e(3, 4), e(4, 0), e(4, 1)];
        let mut g1 = g.clone();
        let mut c1 = peel(&g1);
        superior_insert(
            &mut g1,
            &mut c1,
            &mut EdgeBatch::for_insert(&g, adds),
            &EngineOptions::default(),
        )
        .unwrap();
        let mut g2 = g.clone();
        let mut c2 = peel(&g2);
        let log = sequential_baseline(
            &mut g2,
            &mut c2,
            &mut EdgeBatch::for_insert(&g, adds),
            BatchMode::Insert,
        )
        .unwrap();
        assert_eq!(log.round_count(), 4);
        assert_eq!(c1, c2);
        assert_eq!(c1, peel(&g1));
    }
}
