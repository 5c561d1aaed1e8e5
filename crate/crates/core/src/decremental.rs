//! Vertices whose core drops after a `k`-superior edge set is deleted.
//!
//! Only a negative DFS is needed: a core-`k` vertex left with fewer than `k`
//! superior neighbours falls to `k - 1`, and its fall lowers the support of
//! its core-`k` neighbours.

use crate::graph::{Edge, VertexId};
use crate::runtime::LevelTaskResult;
use crate::task::TaskState;

fn visit(state: &mut TaskState<'_>, v: VertexId) {
    if !state.visited(v) {
        let sd = state.sd(v) as i64;
        state.mark_visited(v);
        state.slot(v).cd += sd;
    }
}

/// Negative DFS from `r`. Requires `r` visited, `cd[r] < k` and not removed.
pub fn delete_remove(state: &mut TaskState<'_>, r: VertexId) {
    let k = state.k as i64;
    let graph = state.graph;
    let cores = state.cores;
    state.slot(r).removed = true;
    let mut stack = vec![r];
    while let Some(v) = stack.pop() {
        for w in graph.neighbors(v) {
            if cores.get(w) != state.k {
                continue;
            }
            visit(state, w);
            state.counters.negative_touches += 1;
            let slot = state.slot(w);
            slot.cd -= 1;
            if slot.cd < k && !slot.removed {
                slot.removed = true;
                stack.push(w);
            }
        }
    }
}

fn check_root(state: &mut TaskState<'_>, r: VertexId) {
    visit(state, r);
    if !state.removed(r) && state.cd(r) < state.k as i64 {
        delete_remove(state, r);
    }
}

/// Vertices of core `k` that fall to `k - 1`. `edges` must already be gone
/// from the graph and each must have level `k` under `state`'s core map.
pub fn k_superior_delete(state: &mut TaskState<'_>, edges: &[Edge]) -> Vec<VertexId> {
    let cores = state.cores;
    for e in edges {
        let (u, v) = (e.u(), e.v());
        let (cu, cv) = (cores.get(u), cores.get(v));
        if cu != cv {
            let r = if cu >= cv { v } else { u };
            debug_assert_eq!(cores.get(r), state.k);
            check_root(state, r);
        } else {
            // u first; v may already have been removed by u's cascade
            check_root(state, u);
            check_root(state, v);
        }
    }
    state.collect(true, true)
}

pub(crate) fn delete_level_task(state: &mut TaskState<'_>, edges: &[Edge]) -> LevelTaskResult {
    let vertices = k_superior_delete(state, edges);
    LevelTaskResult {
        level: state.k,
        vertices,
        counters: state.counters(),
    }
}
