//! Per-level traversal state shared by the insertion and deletion tasks.

use std::sync::Mutex;

use rustc_hash::FxHashMap;

use crate::graph::{Graph, VertexId};
use crate::runtime::TaskCounters;
use crate::static_core::CoreMap;

/// Number of neighbours whose core is at least `core(u)`.
pub fn compute_sd(g: &Graph, cores: &CoreMap, u: VertexId) -> u32 {
    let cu = cores.get(u);
    g.neighbors(u).filter(|&w| cores.get(w) >= cu).count() as u32
}

/// Number of neighbours `w` with `core(w) > core(u)`, or `core(w) == core(u)`
/// and `SD(w) > core(u)`. Same-core `SD` values are read through `sd_cache`
/// and computed on first use.
pub fn compute_csd(
    g: &Graph,
    cores: &CoreMap,
    sd_cache: &mut FxHashMap<VertexId, u32>,
    u: VertexId,
) -> u32 {
    let cu = cores.get(u);
    let mut count = 0;
    for w in g.neighbors(u) {
        let cw = cores.get(w);
        if cw > cu {
            count += 1;
        } else if cw == cu {
            let sd = *sd_cache.entry(w).or_insert_with(|| compute_sd(g, cores, w));
            if sd > cu {
                count += 1;
            }
        }
    }
    count
}

const UNSET: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Slot {
    pub visited: bool,
    pub removed: bool,
    pub cd: i64,
    sd: u32,
    csd: u32,
}

impl Default for Slot {
    fn default() -> Self {
        Slot {
            visited: false,
            removed: false,
            cd: 0,
            sd: UNSET,
            csd: UNSET,
        }
    }
}

/// Dense per-vertex scratch reused across tasks. A slot is live only when its
/// stamp equals the current epoch, so starting a task costs O(1).
#[derive(Debug, Default)]
pub struct Scratch {
    epoch: u32,
    stamp: Vec<u32>,
    slots: Vec<Slot>,
    touched: Vec<VertexId>,
}

impl Scratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn begin(&mut self, n: usize) {
        if self.stamp.len() < n {
            self.stamp.resize(n, 0);
            self.slots.resize(n, Slot::default());
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.touched.clear();
    }

    #[inline]
    fn get(&self, v: VertexId) -> Option<&Slot> {
        let i = v as usize;
        (self.stamp[i] == self.epoch).then(|| &self.slots[i])
    }

    #[inline]
    fn get_mut(&mut self, v: VertexId) -> &mut Slot {
        let i = v as usize;
        if self.stamp[i] != self.epoch {
            self.stamp[i] = self.epoch;
            self.slots[i] = Slot::default();
            self.touched.push(v);
        }
        &mut self.slots[i]
    }
}

/// Scratches handed out to concurrent tasks and returned afterwards.
#[derive(Debug, Default)]
pub(crate) struct ScratchPool(Mutex<Vec<Scratch>>);

impl ScratchPool {
    pub(crate) fn take(&self) -> Scratch {
        self.0
            .lock()
            .map(|mut p| p.pop())
            .ok()
            .flatten()
            .unwrap_or_default()
    }

    pub(crate) fn give(&self, scratch: Scratch) {
        if let Ok(mut p) = self.0.lock() {
            p.push(scratch);
        }
    }
}

/// Scratch state of one level task. Only vertices of core `k` ever get a slot.
#[derive(Debug)]
pub struct TaskState<'a> {
    pub(crate) graph: &'a Graph,
    pub(crate) cores: &'a CoreMap,
    pub(crate) k: u32,
    scratch: Scratch,
    pub(crate) counters: TaskCounters,
}

impl<'a> TaskState<'a> {
    pub fn new(graph: &'a Graph, cores: &'a CoreMap, k: u32) -> Self {
        Self::with_scratch(graph, cores, k, Scratch::new())
    }

    /// Reuses `scratch` from an earlier task.
    pub fn with_scratch(
        graph: &'a Graph,
        cores: &'a CoreMap,
        k: u32,
        mut scratch: Scratch,
    ) -> Self {
        scratch.begin(graph.vertex_count());
        TaskState {
            graph,
            cores,
            k,
            scratch,
            counters: TaskCounters::default(),
        }
    }

    pub fn into_scratch(self) -> Scratch {
        self.scratch
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn visited(&self, v: VertexId) -> bool {
        self.scratch.get(v).is_some_and(|s| s.visited)
    }

    pub fn removed(&self, v: VertexId) -> bool {
        self.scratch.get(v).is_some_and(|s| s.removed)
    }

    pub fn cd(&self, v: VertexId) -> i64 {
        self.scratch.get(v).map_or(0, |s| s.cd)
    }

    /// Overrides `cd` and marks `v` visited.
    pub fn seed(&mut self, v: VertexId, cd: i64) {
        let slot = self.slot(v);
        slot.cd = cd;
        slot.visited = true;
    }

    pub fn counters(&self) -> TaskCounters {
        self.counters
    }

    #[inline]
    pub(crate) fn slot(&mut self, v: VertexId) -> &mut Slot {
        debug_assert_eq!(self.cores.get(v), self.k, "slot for vertex outside level");
        self.scratch.get_mut(v)
    }

    pub(crate) fn mark_visited(&mut self, v: VertexId) {
        self.slot(v).visited = true;
        self.counters.visited += 1;
    }

    pub(crate) fn sd(&mut self, v: VertexId) -> u32 {
        let cached = self.slot(v).sd;
        if cached != UNSET {
            return cached;
        }
        self.counters.sd_computations += 1;
        let sd = compute_sd(self.graph, self.cores, v);
        self.slot(v).sd = sd;
        sd
    }

    pub(crate) fn csd(&mut self, v: VertexId) -> u32 {
        let cached = self.slot(v).csd;
        if cached != UNSET {
            return cached;
        }
        self.counters.csd_computations += 1;
        let k = self.k;
        let graph = self.graph;
        let cores = self.cores;
        let mut csd = 0;
        for w in graph.neighbors(v) {
            let cw = cores.get(w);
            if cw > k || (cw == k && self.sd(w) > k) {
                csd += 1;
            }
        }
        self.slot(v).csd = csd;
        csd
    }

    /// Vertices whose flags match, ascending.
    pub(crate) fn collect(&self, visited: bool, removed: bool) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .scratch
            .touched
            .iter()
            .copied()
            .filter(|&v| {
                let s = &self.scratch.slots[v as usize];
                s.visited == visited && s.removed == removed
            })
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::static_core::peel;

    fn triangle_with_pendant() -> Graph {
        Graph::from_edges([(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn sd_values() {
        let mut g = triangle_with_pendant();
        g.ensure_vertex_count(5);
        let cores = peel(&g);
        assert_eq!(compute_sd(&g, &cores, 4), 0);
        assert_eq!(compute_sd(&g, &cores, 0), 2);
        assert_eq!(compute_sd(&g, &cores, 3), 1);
        // vertex 2 has two core-2 neighbours and a lower pendant
        assert_eq!(compute_sd(&g, &cores, 2), 2);
    }

    #[test]
    fn csd_values() {
        let mut g = Graph::from_edges([(0, 1), (1, 2), (0, 2)]).unwrap();
        g.ensure_vertex_count(4);
        let cores = peel(&g);
        let mut cache = FxHashMap::default();
        assert_eq!(compute_csd(&g, &cores, &mut cache, 3), 0);
        // every triangle vertex has SD 2, not above core 2
        assert_eq!(compute_csd(&g, &cores, &mut cache, 0), 0);
    }

    #[test]
    fn scratch_reuse_starts_clean() {
        let g = Graph::from_edges([(0, 1), (1, 2), (0, 2)]).unwrap();
        let cores = peel(&g);
        let mut state = TaskState::new(&g, &cores, 2);
        state.seed(1, 7);
        assert_eq!(state.csd(0), 0);
        let scratch = state.into_scratch();
        let mut state = TaskState::with_scratch(&g, &cores, 2, scratch);
        assert!(!state.visited(1));
        assert_eq!(state.cd(1), 0);
        assert_eq!(state.csd(0), 0);
        assert_eq!(state.counters().csd_computations, 1);
    }

    #[test]
    fn csd_counts_strictly_higher_neighbours() {
        // vertex 0 with core 1 attached to three vertices of core 3
        let g = Graph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        let cores = CoreMap::from(vec![1, 3, 3, 3]);
        let mut cache = FxHashMap::default();
        assert_eq!(compute_csd(&g, &cores, &mut cache, 0), 3);
        assert!(cache.is_empty());
    }
}
