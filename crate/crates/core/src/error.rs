use thiserror::Error;

/// Errors raised by graph, group, and cover operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` belongs to the spanning tree")]
    EdgeInTree(String),
    #[error("invalid spanning tree set: {0}")]
    InvalidTree(String),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("map is not a covering: {0}")]
    NotCovering(String),
    #[error("invalid group: {0}")]
    InvalidSpec(String),
    #[error("group mismatch: expected {expected} coordinates, found {found}")]
    SpecMismatch { expected: usize, found: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("the chosen group is infinite")]
    InfiniteGroup,
    #[error("vertex `{vertex}` does not lie over `{expected}`")]
    FiberMismatch { vertex: String, expected: String },
    #[error("permutation group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("common cover search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("brute-force search exceeded its budget: {0}")]
    SizeBudgetExceeded(String),
    #[error("voltage assignment is not condensed: tree edge `{0}` has nonzero voltage")]
    NotCondensed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
