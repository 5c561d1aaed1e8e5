//! Splitting a pending batch into superior edge sets.
//!
//! An edge is a superior edge for its lower-core endpoint; its level is
//! `min(core(u), core(v))`. Each round takes, per level `k`, a set of level-`k`
//! edges in which no core-`k` vertex appears twice. The union over levels is
//! applied as one round, and core numbers move by at most one per round.

use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::static_core::CoreMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BatchMode {
    Insert,
    Delete,
}

impl BatchMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            BatchMode::Insert => "insert",
            BatchMode::Delete => "delete",
        }
    }
}

/// Pending edges of one batch plus per-vertex pending multiplicity.
#[derive(Clone, Debug, Default)]
pub struct EdgeBatch {
    pending: BTreeSet<Edge>,
    multiplicity: FxHashMap<VertexId, u32>,
    dropped: usize,
}

impl EdgeBatch {
    /// Deduplicated batch; repeated edges count as dropped.
    pub fn new<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        let mut batch = EdgeBatch::default();
        for e in edges {
            if batch.pending.insert(e) {
                for x in e.endpoints() {
                    *batch.multiplicity.entry(x).or_default() += 1;
                }
            } else {
                batch.dropped += 1;
            }
        }
        batch
    }

    /// Insertion batch: edges already present in `g` are dropped and counted.
    pub fn for_insert<I: IntoIterator<Item = Edge>>(g: &Graph, edges: I) -> Self {
        let mut dropped = 0;
        let fresh: Vec<Edge> = edges
            .into_iter()
            .filter(|&e| {
                let present = g.has_edge(e);
                dropped += present as usize;
                !present
            })
            .collect();
        let mut batch = EdgeBatch::new(fresh);
        batch.dropped += dropped;
        batch
    }

    /// Deletion batch: every edge must currently exist in `g`.
    pub fn for_delete<I: IntoIterator<Item = Edge>>(g: &Graph, edges: I) -> Result<Self> {
        let batch = EdgeBatch::new(edges);
        let missing: Vec<Edge> = batch
            .pending
            .iter()
            .copied()
            .filter(|&e| !g.has_edge(e))
            .collect();
        if missing.is_empty() {
            Ok(batch)
        } else {
            Err(Error::MissingEdges(missing))
        }
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    /// Pending edges in ascending canonical order.
    pub fn pending(&self) -> impl Iterator<Item = Edge> + '_ {
        self.pending.iter().copied()
    }

    /// Vertices incident to at least one pending edge, ascending.
    pub fn touched(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.multiplicity.keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn multiplicity(&self, v: VertexId) -> u32 {
        self.multiplicity.get(&v).copied().unwrap_or(0)
    }

    /// Maximum number of pending edges incident to one vertex.
    pub fn max_multiplicity(&self) -> u32 {
        self.multiplicity.values().copied().max().unwrap_or(0)
    }

    /// Edges discarded as duplicates (of each other or of the graph).
    pub fn dropped(&self) -> usize {
        self.dropped
    }

    fn take(&mut self, e: Edge) -> bool {
        if !self.pending.remove(&e) {
            return false;
        }
        for x in e.endpoints() {
            let slot = self.multiplicity.get_mut(&x).expect("endpoint tracked");
            *slot -= 1;
            if *slot == 0 {
                self.multiplicity.remove(&x);
            }
        }
        true
    }

    /// Puts edges back, used when a round is rolled back.
    pub(crate) fn restore<I: IntoIterator<Item = Edge>>(&mut self, edges: I) {
        for e in edges {
            if self.pending.insert(e) {
                for x in e.endpoints() {
                    *self.multiplicity.entry(x).or_default() += 1;
                }
            }
        }
    }
}

/// Level of an edge: the smaller core of its endpoints.
#[inline]
pub fn edge_core(cores: &CoreMap, e: Edge) -> u32 {
    cores.get(e.u()).min(cores.get(e.v()))
}

/// Distinct levels of the pending edges under the current cores.
pub fn collect_core_levels(batch: &EdgeBatch, cores: &CoreMap) -> BTreeSet<u32> {
    batch.pending().map(|e| edge_core(cores, e)).collect()
}

/// Greedy scan over `candidates` (all of level `k`, ascending). An edge is
/// taken unless one of its core-`k` endpoints is already covered; taking it
/// covers every core-`k` endpoint.
fn select_level(candidates: impl Iterator<Item = Edge>, cores: &CoreMap, k: u32) -> Vec<Edge> {
    let mut covered: FxHashSet<VertexId> = FxHashSet::default();
    let mut selected = Vec::new();
    for e in candidates {
        let low: Vec<VertexId> = e
            .endpoints()
            .into_iter()
            .filter(|&x| cores.get(x) == k)
            .collect();
        if low.iter().any(|x| covered.contains(x)) {
            continue;
        }
        covered.extend(low);
        selected.push(e);
    }
    selected
}

/// The `k`-superior edge set chosen from the pending batch.
pub fn compute_superior_edge_set(batch: &EdgeBatch, cores: &CoreMap, k: u32) -> Vec<Edge> {
    select_level(
        batch.pending().filter(|&e| edge_core(cores, e) == k),
        cores,
        k,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelEdges {
    pub level: u32,
    pub edges: Vec<Edge>,
}

/// One superior edge set: a `k`-superior edge set per distinct level, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundPlan {
    pub levels: Vec<LevelEdges>,
}

impl RoundPlan {
    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level_values(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.level).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.levels.iter().map(|l| l.edges.len()).sum()
    }

    /// All edges of the round, level by level.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.levels.iter().flat_map(|l| l.edges.iter().copied())
    }

    /// Checks the superior edge set conditions against `cores`.
    pub fn validate(&self, cores: &CoreMap) -> std::result::Result<(), String> {
        let mut seen_edges = FxHashSet::default();
        for pair in self.levels.windows(2) {
            if pair[0].level >= pair[1].level {
                return Err(format!(
                    "levels not strictly ascending: {} then {}",
                    pair[0].level, pair[1].level
                ));
            }
        }
        for lvl in &self.levels {
            let k = lvl.level;
            let mut low_seen = FxHashSet::default();
            for &e in &lvl.edges {
                if edge_core(cores, e) != k {
                    return Err(format!(
                        "edge {e} has level {} but is planned at {k}",
                        edge_core(cores, e)
                    ));
                }
                if !seen_edges.insert(e) {
                    return Err(format!("edge {e} planned twice"));
                }
                for x in e.endpoints() {
                    if cores.get(x) == k && !low_seen.insert(x) {
                        return Err(format!("core-{k} vertex {x} has two edges at level {k}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Extracts the next superior edge set and removes its edges from `batch`.
/// Levels are derived from the current `cores`.
pub fn plan_round(batch: &mut EdgeBatch, cores: &CoreMap) -> RoundPlan {
    let mut by_level: BTreeMap<u32, Vec<Edge>> = BTreeMap::new();
    for e in batch.pending() {
        by_level.entry(edge_core(cores, e)).or_default().push(e);
    }
    let levels: Vec<LevelEdges> = by_level
        .into_iter()
        .map(|(level, candidates)| LevelEdges {
            level,
            edges: select_level(candidates.into_iter(), cores, level),
        })
        .collect();
    for lvl in &levels {
        for &e in &lvl.edges {
            batch.take(e);
        }
    }
    RoundPlan { levels }
}
