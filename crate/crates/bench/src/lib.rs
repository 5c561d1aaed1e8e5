//! Shared fixtures for the criterion benches.

use parcore::generate::{generate_graph, random_existing_edges, random_non_edges, rng, GraphModel};
use parcore::{peel, BatchMode, CoreMap, Edge, EdgeBatch, Graph};

/// A graph, its cores, and a batch sampled for one mode.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    pub cores: CoreMap,
    pub mode: BatchMode,
    pub edges: Vec<Edge>,
}

impl Fixture {
    pub fn new(
        model: GraphModel,
        n: usize,
        deg: usize,
        mode: BatchMode,
        batch: usize,
        seed: u64,
    ) -> Self {
        let graph = generate_graph(model, n, deg, seed).expect("valid generator parameters");
        let cores = peel(&graph);
        let mut r = rng(seed.wrapping_add(1));
        let edges = match mode {
            BatchMode::Insert => random_non_edges(&graph, batch, &mut r),
            BatchMode::Delete => random_existing_edges(&graph, batch, &mut r),
        }
        .expect("enough candidate edges");
        let tag = match model {
            GraphModel::Er => "er",
            GraphModel::Ba => "ba",
        };
        Fixture {
            name: format!("{tag}-{n}-{}-{batch}", mode.as_str()),
            graph,
            cores,
            mode,
            edges,
        }
    }

    /// Fresh copies to mutate in one measured iteration.
    pub fn state(&self) -> (Graph, CoreMap, EdgeBatch) {
        let g = self.graph.clone();
        let batch = match self.mode {
            BatchMode::Insert => EdgeBatch::for_insert(&g, self.edges.iter().copied()),
            BatchMode::Delete => {
                EdgeBatch::for_delete(&g, self.edges.iter().copied()).expect("edges exist")
            }
        };
        (g, self.cores.clone(), batch)
    }
}
