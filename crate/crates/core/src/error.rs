use thiserror::Error;

use crate::graph::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {0} is a loop")]
    LoopEdge(String),
    #[error("duplicate identifier {0}")]
    DuplicateId(String),
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("no edge {0}")]
    MissingEdge(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation at vertex {vertex} is not a permutation of its incident edges")]
    InvalidRotation { vertex: Vertex },
    #[error("rotation covers {found} vertices, graph has {expected}")]
    WrongVertexCount { expected: usize, found: usize },
    #[error("component containing vertex {vertex} fails the Euler check: V - E + F = {euler}")]
    NonPlanarEmbedding { vertex: Vertex, euler: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("search budget of {budget} nodes exhausted; optimum is at least {lower_bound}")]
    BudgetExhausted { budget: u64, lower_bound: usize },
    #[error("no solution with at most {max} colours")]
    Infeasible { max: usize },
}

/// Failures of the constructive colouring algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("graph must be simple")]
    NotSimple,
    #[error("frugality parameter must be at least {min}, got {k}")]
    BadFrugality { k: usize, min: usize },
    #[error("k must be even, got {0}")]
    OddK(usize),
    #[error("k must be odd, got {0}")]
    EvenK(usize),
    #[error("maximum degree {found} below required {required}")]
    DegreeTooSmall { required: usize, found: usize },
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("list assignment does not match the graph")]
    ListShape,
    #[error("list of item {item} has {size} colours, {required} required")]
    ListTooSmall { item: usize, size: usize, required: usize },
    #[error("no light vertex: graph is not a simple planar graph")]
    NoLightVertex,
    #[error("no reducible vertex: graph is not outerplanar")]
    NotReducible,
    #[error("no degree-2 vertex with at most {bound} vertices at distance two")]
    NoLightDegree2 { bound: usize },
    #[error("contraction produced maximum degree {found} above {bound}")]
    ContractionDegree { found: usize, bound: usize },
    #[error("no admissible colour left for vertex {0}")]
    ExtensionFailed(Vertex),
    #[error("vertex {0} has odd degree")]
    OddDegree(Vertex),
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not even-regular")]
    NotEvenRegular,
    #[error("graph is not bipartite along the given sides")]
    NotBipartite,
    #[error("no perfect matching found in a regular bipartite graph")]
    MatchingFailed,
    #[error("edge {0} ran out of list colours")]
    GalvinFailed(Edge),
    #[error("colouring is not {k}-frugal")]
    InvalidColouring { k: usize },
    #[error("class {class} could not be coloured: {source}")]
    ClassColouringBudgetExhausted { class: i64, source: ExactError },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
