use std::io;

use thiserror::Error;

use crate::graph::{Edge, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {0} is not allowed in a simple graph")]
    SelfLoop(VertexId),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{} batch edge(s) not present in the graph: {}", .0.len(), format_edges(.0))]
    MissingEdges(Vec<Edge>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("level task {level} failed: {message}")]
    TaskFailed { level: u32, message: String },

    #[error("round {round} broke the per-round core invariant: {message}")]
    InvariantViolation { round: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

fn format_edges(edges: &[Edge]) -> String {
    const SHOWN: usize = 8;
    let mut out = edges
        .iter()
        .take(SHOWN)
        .map(|e| format!("({},{})", e.u(), e.v()))
        .collect::<Vec<_>>()
        .join(" ");
    if edges.len() > SHOWN {
        out.push_str(" ...");
    }
    out
}
