//! Seeded synthetic graphs and batch workloads.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::partition::edge_core;
use crate::static_core::CoreMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphModel {
    /// Erdős–Rényi `G(n, p)`.
    Er,
    /// Barabási–Albert preferential attachment.
    Ba,
}

impl std::str::FromStr for GraphModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "er" => Ok(GraphModel::Er),
            "ba" => Ok(GraphModel::Ba),
            other => Err(Error::InvalidParameter(format!(
                "unknown graph model {other:?}"
            ))),
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generates a graph on `n` vertices where `edges_per_vertex` is the number of
/// edges each vertex contributes: a BA vertex attaches that many edges, and
/// an ER graph gets the same expected total of `n * edges_per_vertex` edges
/// (mean degree `2 * edges_per_vertex`).
pub fn generate_graph(
    model: GraphModel,
    n: usize,
    edges_per_vertex: usize,
    seed: u64,
) -> Result<Graph> {
    match model {
        GraphModel::Er => {
            let p = if n < 2 {
                0.0
            } else {
                2.0 * edges_per_vertex as f64 / (n - 1) as f64
            };
            if p > 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "er: {edges_per_vertex} edges per vertex is too dense for n = {n}"
                )));
            }
            Ok(erdos_renyi(n, p, seed))
        }
        GraphModel::Ba => barabasi_albert(n, edges_per_vertex, seed),
    }
}

/// `G(n, p)` by geometric skipping over the pair sequence, O(n + m).
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut g = Graph::with_vertices(n);
    if n < 2 || p <= 0.0 {
        return g;
    }
    let mut rng = rng(seed);
    if p >= 1.0 {
        for a in 0..n as VertexId {
            for b in a + 1..n as VertexId {
                g.add_edge(Edge::new(a, b).expect("distinct"));
            }
        }
        return g;
    }
    let log_q = (1.0 - p).ln();
    let (mut v, mut w): (i64, i64) = (1, -1);
    let n = n as i64;
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            g.add_edge(Edge::new(v as VertexId, w as VertexId).expect("w < v"));
        }
    }
    g
}

/// Preferential attachment seeded with an `(m + 1)`-clique; each later vertex
/// attaches `m` edges to distinct earlier vertices chosen proportionally to
/// degree. Every vertex ends with core exactly `m`.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || n < m + 1 {
        return Err(Error::InvalidParameter(format!(
            "ba: need m >= 1 and n >= m + 1 (got n = {n}, m = {m})"
        )));
    }
    let mut rng = rng(seed);
    let mut g = Graph::with_vertices(n);
    // each edge contributes both endpoints, so sampling from this list is
    // sampling proportionally to degree
    let mut ends: Vec<VertexId> = Vec::with_capacity(2 * m * n);
    for a in 0..=m as VertexId {
        for b in a + 1..=m as VertexId {
            g.add_edge(Edge::new(a, b).expect("distinct"));
            ends.push(a);
            ends.push(b);
        }
    }
    let mut targets = FxHashSet::default();
    for v in (m + 1) as VertexId..n as VertexId {
        targets.clear();
        while targets.len() < m {
            targets.insert(ends[rng.gen_range(0..ends.len())]);
        }
        let mut chosen: Vec<VertexId> = targets.iter().copied().collect();
        chosen.sort_unstable();
        for t in chosen {
            g.add_edge(Edge::new(v, t).expect("t < v"));
            ends.push(v);
            ends.push(t);
        }
    }
    Ok(g)
}

/// `count` distinct uniformly random vertex pairs that are not edges of `g`.
pub fn random_non_edges<R: Rng>(g: &Graph, count: usize, rng: &mut R) -> Result<Vec<Edge>> {
    let n = g.vertex_count();
    let capacity = n * n.saturating_sub(1) / 2 - g.edge_count();
    if count > capacity {
        return Err(Error::InvalidParameter(format!(
            "only {capacity} non-edges available, {count} requested"
        )));
    }
    let mut picked = FxHashSet::default();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.gen_range(0..n) as VertexId;
        let b = rng.gen_range(0..n) as VertexId;
        let Ok(e) = Edge::new(a, b) else { continue };
        if !g.has_edge(e) && picked.insert(e) {
            out.push(e);
        }
    }
    Ok(out)
}

/// `count` distinct existing edges chosen uniformly.
pub fn random_existing_edges<R: Rng>(g: &Graph, count: usize, rng: &mut R) -> Result<Vec<Edge>> {
    let edges = g.edges();
    if count > edges.len() {
        return Err(Error::InvalidParameter(format!(
            "graph has {} edges, {count} requested",
            edges.len()
        )));
    }
    let mut out: Vec<Edge> = index::sample(rng, edges.len(), count)
        .into_iter()
        .map(|i| edges[i])
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// A random `fraction` of the existing edges whose level is `k`.
pub fn core_stratum_edges<R: Rng>(
    g: &Graph,
    cores: &CoreMap,
    k: u32,
    fraction: f64,
    rng: &mut R,
) -> Vec<Edge> {
    let mut stratum: Vec<Edge> = g
        .edges()
        .into_iter()
        .filter(|&e| edge_core(cores, e) == k)
        .collect();
    let take = ((stratum.len() as f64) * fraction).round() as usize;
    stratum.shuffle(rng);
    stratum.truncate(take);
    stratum.sort_unstable();
    stratum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::static_core::peel;

    #[test]
    fn er_with_zero_density_is_empty() {
        for seed in 0..5 {
            let g = generate_graph(GraphModel::Er, 10, 0, seed).unwrap();
            assert_eq!(g.vertex_count(), 10);
            assert_eq!(g.edge_count(), 0);
            assert!(peel(&g).as_slice().iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn er_is_deterministic_and_near_expected_size() {
        let a = generate_graph(GraphModel::Er, 2000, 4, 9).unwrap();
        let b = generate_graph(GraphModel::Er, 2000, 4, 9).unwrap();
        assert_eq!(a.edges(), b.edges());
        // expected 8000 edges, sd about 90
        let m = a.edge_count() as f64;
        assert!((m - 8000.0).abs() < 500.0, "{m}");
    }

    #[test]
    fn er_complete_when_p_is_one() {
        let g = erdos_renyi(6, 1.0, 0);
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn ba_every_core_equals_attachment_count() {
        let g = generate_graph(GraphModel::Ba, 1000, 8, 7).unwrap();
        let cores = peel(&g);
        assert!(cores.as_slice().iter().all(|&c| c == 8));
        assert_eq!(g.edge_count(), 36 + (1000 - 9) * 8);
    }

    #[test]
    fn ba_rejects_bad_parameters() {
        assert!(generate_graph(GraphModel::Ba, 5, 5, 0).is_err());
        assert!(generate_graph(GraphModel::Ba, 5, 0, 0).is_err());
        assert!(generate_graph(GraphModel::Er, 5, 3, 0).is_err());
        assert!("rmat".parse::<GraphModel>().is_err());
    }

    #[test]
    fn er_core_profile_at_default_density() {
        let g = generate_graph(GraphModel::Er, 1 << 15, 8, 1).unwrap();
        let cores = peel(&g);
        let max = cores.max_core();
        assert!((8..=12).contains(&max), "max core {max}");
        // most vertices sit close to the top
        let hist = cores.histogram();
        let near_top: usize = hist[(max as usize).saturating_sub(2)..].iter().sum();
        assert!(near_top * 2 > g.vertex_count(), "{hist:?}");
    }

    #[test]
    fn workloads_respect_graph() {
        let g = generate_graph(GraphModel::Er, 200, 3, 2).unwrap();
        let mut r = rng(3);
        let adds = random_non_edges(&g, 50, &mut r).unwrap();
        assert_eq!(adds.len(), 50);
        assert!(adds.iter().all(|&e| !g.has_edge(e)));
        let dels = random_existing_edges(&g, 40, &mut r).unwrap();
        assert!(dels.iter().all(|&e| g.has_edge(e)));
        assert_eq!(dels.iter().collect::<FxHashSet<_>>().len(), 40);

        let cores = peel(&g);
        let k = cores.max_core();
        let stratum = core_stratum_edges(&g, &cores, k, 0.2, &mut r);
        assert!(!stratum.is_empty());
        assert!(stratum.iter().all(|&e| edge_core(&cores, e) == k));
    }
}
