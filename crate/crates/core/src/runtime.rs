//! Per-level task fan-out.
//!
//! Level tasks of one round read the frozen graph and core map and return
//! owned results; nothing mutable is shared between them. Levels are assigned
//! statically to at most `worker_limit` scoped threads, heaviest first, and
//! results come back in ascending level order whatever the schedule was.

use std::any::Any;
use std::ops::AddAssign;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::thread;

use crate::error::{Error, Result};
use crate::graph::VertexId;

/// Work counters of one level task.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TaskCounters {
    /// Vertices marked visited.
    pub visited: u64,
    /// `cd` decrements issued by the removal cascades.
    pub negative_touches: u64,
    pub sd_computations: u64,
    pub csd_computations: u64,
}

impl AddAssign for TaskCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.visited += rhs.visited;
        self.negative_touches += rhs.negative_touches;
        self.sd_computations += rhs.sd_computations;
        self.csd_computations += rhs.csd_computations;
    }
}

/// Output of one level task: the vertices whose core moves, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelTaskResult {
    pub level: u32,
    pub vertices: Vec<VertexId>,
    pub counters: TaskCounters,
}

/// A level to run and its estimated cost (number of planned edges).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelJob {
    pub level: u32,
    pub weight: usize,
}

fn panic_message(payload: Box<dyn Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "task panicked".to_string()
    }
}

fn run_one<T, F>(task: &F, level: u32) -> Result<T>
where
    F: Fn(u32) -> Result<T>,
{
    match catch_unwind(AssertUnwindSafe(|| task(level))) {
        Ok(Ok(v)) => Ok(v),
        Ok(Err(Error::TaskFailed { level, message })) => Err(Error::TaskFailed { level, message }),
        Ok(Err(e)) => Err(Error::TaskFailed {
            level,
            message: e.to_string(),
        }),
        Err(payload) => Err(Error::TaskFailed {
            level,
            message: panic_message(payload),
        }),
    }
}

/// Longest-processing-time assignment of jobs onto `workers` bins.
fn assign(jobs: &[LevelJob], workers: usize) -> Vec<Vec<u32>> {
    let mut order: Vec<LevelJob> = jobs.to_vec();
    order.sort_by(|a, b| b.weight.cmp(&a.weight).then(a.level.cmp(&b.level)));
    let mut load = vec![0usize; workers];
    let mut bins = vec![Vec::new(); workers];
    for job in order {
        let (slot, _) = load
            .iter()
            .enumerate()
            .min_by_key(|&(i, &l)| (l, i))
            .expect("at least one worker");
        load[slot] += job.weight.max(1);
        bins[slot].push(job.level);
    }
    bins
}

/// Runs `task` once per job with at most `worker_limit` running at a time.
///
/// Results are returned in ascending level order. If any task fails or
/// panics, the error of the lowest failing level is returned and no results
/// are handed back.
pub fn run_level_tasks<T, F>(jobs: &[LevelJob], worker_limit: usize, task: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u32) -> Result<T> + Sync,
{
    if worker_limit == 0 {
        return Err(Error::InvalidParameter(
            "worker limit must be at least 1".into(),
        ));
    }
    let mut outcomes: Vec<(u32, Result<T>)> = if worker_limit == 1 || jobs.len() <= 1 {
        jobs.iter()
            .map(|j| (j.level, run_one(&task, j.level)))
            .collect()
    } else {
        let bins = assign(jobs, worker_limit.min(jobs.len()));
        let task = &task;
        thread::scope(|scope| {
            let handles: Vec<_> = bins
                .into_iter()
                .map(|levels| {
                    scope.spawn(move || {
                        levels
                            .into_iter()
                            .map(|k| (k, run_one(task, k)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("level worker panicked outside a task"))
                .collect()
        })
    };
    outcomes.sort_by_key(|(k, _)| *k);
    outcomes.into_iter().map(|(_, r)| r).collect()
}
