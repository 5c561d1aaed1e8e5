//! Static core decomposition.
//!
//! [`peel`] is the linear-time bucket peeling used to initialise maintenance;
//! [`naive_core_oracle`] is a deliberately simple quadratic version kept as an
//! independent reference for tests and verification.

use crate::graph::{Graph, VertexId};

/// Core number per dense vertex id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CoreMap {
    core: Vec<u32>,
}

impl CoreMap {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.core.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.core.is_empty()
    }

    /// Core of `v`; vertices beyond the map are new and have core 0.
    #[inline]
    pub fn get(&self, v: VertexId) -> u32 {
        self.core.get(v as usize).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: VertexId, core: u32) {
        self.ensure_len(v as usize + 1);
        self.core[v as usize] = core;
    }

    /// Grows the map with core-0 entries for newly created vertices.
    pub fn ensure_len(&mut self, n: usize) {
        if self.core.len() < n {
            self.core.resize(n, 0);
        }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.core
    }

    pub fn max_core(&self) -> u32 {
        self.core.iter().copied().max().unwrap_or(0)
    }

    /// `histogram[k]` = number of vertices with core `k`.
    pub fn histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.max_core() as usize + 1];
        for &c in &self.core {
            hist[c as usize] += 1;
        }
        hist
    }

    /// First vertex whose core differs, treating missing entries as 0.
    pub fn first_mismatch(&self, other: &CoreMap) -> Option<VertexId> {
        let n = self.len().max(other.len()) as VertexId;
        (0..n).find(|&v| self.get(v) != other.get(v))
    }
}

impl From<Vec<u32>> for CoreMap {
    fn from(core: Vec<u32>) -> Self {
        CoreMap { core }
    }
}

/// Bucket peeling in O(n + m). Vertices are bucketed by remaining degree and,
/// within a bucket, processed in ascending id order.
pub fn peel(g: &Graph) -> CoreMap {
    let n = g.vertex_count();
    if n == 0 {
        return CoreMap::new();
    }
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin_start[d] = first position in `order` holding a vertex of degree d
    let mut bin_start = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin_start[d + 1] += 1;
    }
    for d in 1..bin_start.len() {
        bin_start[d] += bin_start[d - 1];
    }
    let mut order = vec![0 as VertexId; n];
    let mut pos = vec![0usize; n];
    {
        let mut next = bin_start.clone();
        for v in 0..n {
            let d = deg[v];
            pos[v] = next[d];
            order[next[d]] = v as VertexId;
            next[d] += 1;
        }
    }

    for i in 0..n {
        let v = order[i] as usize;
        for w in g.neighbors(v as VertexId) {
            let w = w as usize;
            if deg[w] > deg[v] {
                // swap w with the first vertex of its bin, then shrink the bin
                let dw = deg[w];
                let first = bin_start[dw];
                let u = order[first] as usize;
                if u != w {
                    order.swap(pos[w], first);
                    pos[u] = pos[w];
                    pos[w] = first;
                }
                bin_start[dw] += 1;
                deg[w] -= 1;
            }
        }
    }
    CoreMap::from(deg.into_iter().map(|d| d as u32).collect::<Vec<_>>())
}

/// Repeatedly deletes a minimum-degree vertex (smallest id on ties). A vertex
/// deleted while the running maximum of minimum degrees is `k` has core `k`.
pub fn naive_core_oracle(g: &Graph) -> CoreMap {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut core = vec![0u32; n];
    let mut running = 0usize;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("an alive vertex remains");
        running = running.max(deg[v]);
        core[v] = running as u32;
        alive[v] = false;
        for w in g.neighbors(v as VertexId) {
            if alive[w as usize] {
                deg[w as usize] -= 1;
            }
        }
    }
    CoreMap::from(core)
}
