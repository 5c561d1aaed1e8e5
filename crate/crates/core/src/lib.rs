//! Batch maintenance of k-core numbers in dynamic graphs.
//!
//! A batch of edge insertions or deletions is split into rounds. Each round
//! applies a *superior edge set*: per core level `k`, a set of edges whose
//! lower endpoint has core `k` and in which no core-`k` vertex appears twice.
//! Applying such a set moves every core number by at most one, and different
//! levels touch disjoint vertex classes, so each level is processed by an
//! independent task.
//!
//! ```
//! use parcore::{Edge, EngineOptions, Graph, Maintainer};
//!
//! let g = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
//! let mut m = Maintainer::new(g, EngineOptions::with_workers(2));
//! m.insert_edges([Edge::new(2, 3).unwrap()]).unwrap();
//! assert_eq!(m.cores().as_slice(), &[3, 3, 3, 3]);
//! ```

pub mod changelog;
pub mod decremental;
pub mod engine;
pub mod error;
pub mod generate;
pub mod graph;
pub mod incremental;
pub mod io;
pub mod partition;
pub mod report;
pub mod runtime;
pub mod static_core;
pub mod task;

pub use changelog::{ChangeLog, RoundRecord};
pub use engine::{
    sequential_baseline, superior_delete, superior_delete_observed, superior_insert,
    superior_insert_observed, EngineOptions, Maintainer, RoundView, WORKERS_ENV,
};
pub use error::{Error, Result};
pub use graph::{AddStatus, Edge, Graph, RemoveStatus, VertexId};
pub use io::IdMap;
pub use partition::{edge_core, plan_round, BatchMode, EdgeBatch, RoundPlan};
pub use report::BenchReport;
pub use runtime::{run_level_tasks, LevelJob, LevelTaskResult, TaskCounters};
pub use static_core::{naive_core_oracle, peel, CoreMap};
