//! Edge-list and core-number text formats.
//!
//! Edge lists are SNAP-style: one whitespace-separated pair of non-negative
//! integer ids per line, `#` starts a comment line. Sparse external ids are
//! remapped to dense internal ids through an [`IdMap`].

use std::collections::hash_map::Entry;
use std::io::{BufRead, Write};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{AddStatus, Edge, Graph, VertexId};
use crate::static_core::CoreMap;

pub type ExternalId = u64;

/// Bidirectional mapping between external ids and dense internal ids.
#[derive(Clone, Debug, Default)]
pub struct IdMap {
    to_internal: FxHashMap<ExternalId, VertexId>,
    to_external: Vec<ExternalId>,
}

impl IdMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Identity mapping for `0..n`.
    pub fn identity(n: usize) -> Self {
        let mut ids = IdMap::new();
        for i in 0..n as ExternalId {
            ids.intern(i);
        }
        ids
    }

    pub fn intern(&mut self, external: ExternalId) -> VertexId {
        match self.to_internal.entry(external) {
            Entry::Occupied(o) => *o.get(),
            Entry::Vacant(slot) => {
                let id = self.to_external.len() as VertexId;
                self.to_external.push(external);
                slot.insert(id);
                id
            }
        }
    }

    pub fn internal(&self, external: ExternalId) -> Option<VertexId> {
        self.to_internal.get(&external).copied()
    }

    pub fn external(&self, internal: VertexId) -> ExternalId {
        self.to_external[internal as usize]
    }

    pub fn len(&self) -> usize {
        self.to_external.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_external.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub edges: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub ids: IdMap,
    pub stats: LoadStats,
}

fn parse_id(token: &str, line: usize) -> Result<ExternalId> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a non-negative integer vertex id, found {token:?}"),
    })
}

/// Reads raw external id pairs, skipping comments and blank lines.
pub fn read_pairs<R: BufRead>(source: R) -> Result<Vec<(ExternalId, ExternalId)>> {
    let mut pairs = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: "expected exactly two vertex ids".to_string(),
            });
        };
        pairs.push((parse_id(a, lineno)?, parse_id(b, lineno)?));
    }
    Ok(pairs)
}

/// Parses an edge list into a fresh graph. Self-loops and repeated edges are
/// dropped and counted.
pub fn load_edge_list<R: BufRead>(source: R) -> Result<LoadedGraph> {
    let pairs = read_pairs(source)?;
    let mut ids = IdMap::new();
    let mut graph = Graph::new();
    let mut stats = LoadStats::default();
    for (a, b) in pairs {
        let (a, b) = (ids.intern(a), ids.intern(b));
        graph.ensure_vertex_count(ids.len());
        if a == b {
            stats.self_loops += 1;
            continue;
        }
        match graph.add_edge(Edge::new(a, b)?) {
            AddStatus::New => stats.edges += 1,
            AddStatus::Duplicate => stats.duplicates += 1,
        }
    }
    Ok(LoadedGraph { graph, ids, stats })
}

/// Maps external pairs onto internal edges, interning unseen ids.
/// Self-loops are silently skipped; the returned count says how many.
pub fn intern_pairs(pairs: &[(ExternalId, ExternalId)], ids: &mut IdMap) -> (Vec<Edge>, usize) {
    let mut edges = Vec::with_capacity(pairs.len());
    let mut self_loops = 0;
    for &(a, b) in pairs {
        match Edge::new(ids.intern(a), ids.intern(b)) {
            Ok(e) => edges.push(e),
            Err(_) => self_loops += 1,
        }
    }
    (edges, self_loops)
}

/// Writes every edge once as `min max` in external ids, ascending.
pub fn write_edge_list<W: Write>(graph: &Graph, ids: &IdMap, mut out: W) -> Result<()> {
    let mut rows: Vec<(ExternalId, ExternalId)> = graph
        .edges()
        .into_iter()
        .map(|e| {
            let (a, b) = (ids.external(e.u()), ids.external(e.v()));
            (a.min(b), a.max(b))
        })
        .collect();
    rows.sort_unstable();
    for (a, b) in rows {
        writeln!(out, "{a} {b}")?;
    }
    Ok(())
}

/// Writes `external_id core` lines, ascending by external id.
pub fn write_cores<W: Write>(cores: &CoreMap, ids: &IdMap, mut out: W) -> Result<()> {
    let mut rows: Vec<(ExternalId, u32)> = (0..cores.len() as VertexId)
        .map(|v| (ids.external(v), cores.get(v)))
        .collect();
    rows.sort_unstable();
    for (id, core) in rows {
        writeln!(out, "{id} {core}")?;
    }
    Ok(())
}

/// Reads a core file written by [`write_cores`] as `(external_id, core)` rows.
pub fn read_cores<R: BufRead>(source: R) -> Result<Vec<(ExternalId, u32)>> {
    let pairs = read_pairs(source)?;
    pairs
        .into_iter()
        .enumerate()
        .map(|(i, (id, core))| {
            u32::try_from(core)
                .map(|c| (id, c))
                .map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("core number {core} out of range"),
                })
        })
        .collect()
}
