//! Per-round record of a maintenance run and its line-oriented text form.
//!
//! ```text
//! # mode insert rounds 2 dropped 0
//! round 0 levels 2,3 edges 1-2,4-5 raised 1,4
//! round 1 levels 2 edges 2-3 raised -
//! ```
//!
//! Deletion logs use `lowered` in place of `raised`; `-` marks an empty list.

use std::fmt::Display;
use std::io::Write;

use crate::error::Result;
use crate::graph::{Edge, VertexId};
use crate::io::IdMap;
use crate::partition::BatchMode;
use crate::runtime::TaskCounters;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub index: usize,
    pub levels: Vec<u32>,
    /// Edges applied to the graph this round, level by level.
    pub edges: Vec<Edge>,
    /// Vertices whose core moved by one, ascending.
    pub changed: Vec<VertexId>,
    pub counters: TaskCounters,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeLog {
    pub mode: BatchMode,
    pub rounds: Vec<RoundRecord>,
    /// Batch edges skipped because they were already present (insert) or
    /// already gone (delete) when their round came.
    pub dropped: usize,
}

impl ChangeLog {
    pub fn new(mode: BatchMode) -> Self {
        ChangeLog {
            mode,
            rounds: Vec::new(),
            dropped: 0,
        }
    }

    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }

    pub fn edges_applied(&self) -> usize {
        self.rounds.iter().map(|r| r.edges.len()).sum()
    }

    pub fn counters(&self) -> TaskCounters {
        let mut total = TaskCounters::default();
        for r in &self.rounds {
            total += r.counters;
        }
        total
    }

    /// Serializes the log; with `ids`, vertex ids are written as external ids.
    pub fn write_text<W: Write>(&self, ids: Option<&IdMap>, mut out: W) -> Result<()> {
        let name = |v: VertexId| -> u64 { ids.map_or(v as u64, |m| m.external(v)) };
        writeln!(
            out,
            "# mode {} rounds {} dropped {}",
            self.mode.as_str(),
            self.rounds.len(),
            self.dropped
        )?;
        let verb = match self.mode {
            BatchMode::Insert => "raised",
            BatchMode::Delete => "lowered",
        };
        for r in &self.rounds {
            let edges: Vec<String> = r
                .edges
                .iter()
                .map(|e| format!("{}-{}", name(e.u()), name(e.v())))
                .collect();
            let changed: Vec<u64> = r.changed.iter().map(|&v| name(v)).collect();
            writeln!(
                out,
                "round {} levels {} edges {} {} {}",
                r.index,
                join(&r.levels),
                join(&edges),
                verb,
                join(&changed)
            )?;
        }
        Ok(())
    }
}

fn join<T: Display>(items: &[T]) -> String {
    if items.is_empty() {
        return "-".to_string();
    }
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
