//! Vertices whose core rises after a `k`-superior edge set is inserted.
//!
//! A positive DFS from each edge's core-`k` endpoint walks same-core vertices
//! that could still reach `k + 1`; every vertex found unable to (its `cd`
//! dropped to `k` or below) is removed by a negative DFS that lowers the `cd`
//! of its core-`k` neighbours. Traversal state is shared by all edges of the
//! set, so overlapping regions are walked once.

use crate::graph::{Edge, VertexId};
use crate::runtime::LevelTaskResult;
use crate::task::TaskState;

/// Negative DFS from `r`. Requires `cd[r] <= k` and `r` not yet removed.
///
/// Unvisited neighbours may end up with a negative `cd`; the positive DFS
/// adds their `CSD` on top when it reaches them.
pub fn insert_remove(state: &mut TaskState<'_>, r: VertexId) {
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
            state.counters.negative_touches += 1;
            let slot = state.slot(w);
            slot.cd -= 1;
            if slot.cd == k && !slot.removed {
                slot.removed = true;
                stack.push(w);
            }
        }
    }
}

/// Vertices of core `k` that rise to `k + 1`. `edges` must already be in the
/// graph and each must have level `k` under `state`'s core map.
pub fn k_superior_insert(state: &mut TaskState<'_>, edges: &[Edge]) -> Vec<VertexId> {
    let k = state.k;
    let graph = state.graph;
    let cores = state.cores;
    let mut stack = Vec::new();
    for e in edges {
        let (u, v) = (e.u(), e.v());
        let r = if cores.get(u) >= cores.get(v) { v } else { u };
        debug_assert_eq!(cores.get(r), k);
        if state.visited(r) || state.removed(r) {
            continue;
        }
        let csd = state.csd(r) as i64;
        state.mark_visited(r);
        // cd may already be negative from earlier removals next to r
        let slot = state.slot(r);
        slot.cd = if slot.cd >= 0 { csd } else { slot.cd + csd };
        stack.push(r);

        while let Some(v) = stack.pop() {
            if state.cd(v) > k as i64 {
                for w in graph.neighbors(v) {
                    if cores.get(w) != k || state.visited(w) || state.sd(w) <= k {
                        continue;
                    }
                    let csd = state.csd(w) as i64;
                    state.mark_visited(w);
                    state.slot(w).cd += csd;
                    stack.push(w);
                }
            } else if !state.removed(v) {
                insert_remove(state, v);
            }
        }
    }
    state.collect(true, false)
}

/// Level task wrapper used by the round driver.
pub(crate) fn insert_level_task(state: &mut TaskState<'_>, edges: &[Edge]) -> LevelTaskResult {
    let vertices = k_superior_insert(state, edges);
    LevelTaskResult {
        level: state.k,
        vertices,
        counters: state.counters(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::static_core::{naive_core_oracle, CoreMap};

    fn e(a: VertexId, b: VertexId) -> Edge {
        Edge::new(a, b).unwrap()
    }

    /// Inserts `added` into `g`, runs the level-`k` task with the cores of
    /// the original graph and returns (V_k, oracle cores after insertion).
    fn run(mut g: Graph, added: &[Edge], k: u32) -> (Vec<VertexId>, CoreMap, CoreMap) {
        let before = naive_core_oracle(&g);
        for &x in added {
            g.add_edge(x);
        }
        let after = naive_core_oracle(&g);
        let mut state = TaskState::new(&g, &before, k);
        let raised = k_superior_insert(&mut state, added);
        (raised, before, after)
    }

    fn raised_by_oracle(before: &CoreMap, after: &CoreMap) -> Vec<VertexId> {
        (0..after.len() as VertexId)
            .filter(|&v| after.get(v) > before.get(v))
            .collect()
    }

    #[test]
    fn bridge_between_triangles_raises_nothing() {
        let g = Graph::from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let (raised, before, after) = run(g, &[e(2, 3)], 2);
        assert!(raised.is_empty());
        assert_eq!(before, after);
    }

    #[test]
    fn completing_k4_raises_all() {
        let g = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let (raised, before, after) = run(g, &[e(2, 3)], 2);
        assert_eq!(raised, vec![0, 1, 2, 3]);
        assert_eq!(raised, raised_by_oracle(&before, &after));
        assert_eq!(after.as_slice(), &[3; 4]);
    }

    #[test]
    fn pendant_joins_dense_block() {
        // vertices 0..=5 form K6 (core 5); 6 hangs off 0 (core 1); 7 is isolated
        let mut g = Graph::with_vertices(8);
        for a in 0..6 {
            for b in a + 1..6 {
                g.add_edge(e(a, b));
            }
        }
        g.add_edge(e(0, 6));
        let (raised, before, after) = run(g, &[e(3, 6)], 1);
        assert_eq!(before.get(6), 1);
        assert_eq!(raised, vec![6]);
        assert_eq!(raised, raised_by_oracle(&before, &after));
        assert_eq!(after.get(6), 2);
    }

    #[test]
    fn remove_without_core_k_neighbours() {
        let g = Graph::from_edges([(0, 1)]).unwrap();
        let cores = CoreMap::from(vec![1, 4]);
        let mut state = TaskState::new(&g, &cores, 1);
        state.seed(0, 1);
        insert_remove(&mut state, 0);
        assert!(state.removed(0));
        assert_eq!(state.counters().negative_touches, 0);
    }

    #[test]
    fn removal_cascades_down_a_chain() {
        let k = 2;
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap();
        let cores = CoreMap::from(vec![k; 4]);
        let mut state = TaskState::new(&g, &cores, k);
        for v in 0..4 {
            state.seed(v, k as i64 + 1);
        }
        state.seed(0, k as i64);
        insert_remove(&mut state, 0);
        for v in 0..4 {
            assert!(state.removed(v), "vertex {v} survived");
        }
    }

    #[test]
    fn removal_stops_above_threshold() {
        let k = 2;
        let g = Graph::from_edges([(0, 1)]).unwrap();
        let cores = CoreMap::from(vec![k, k]);
        let mut state = TaskState::new(&g, &cores, k);
        state.seed(0, 0);
        state.seed(1, k as i64 + 5);
        insert_remove(&mut state, 0);
        assert_eq!(state.cd(1), k as i64 + 4);
        assert!(!state.removed(1));
    }
}
