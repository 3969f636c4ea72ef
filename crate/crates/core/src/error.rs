use thiserror::Error;

use crate::cuts::ViolatedConstraint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),

    #[error("expected {expected} weights, got {got}")]
    WeightLength { expected: usize, got: usize },

    #[error("negative weight at vertex {0}")]
    NegativeWeight(usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("vertices {0} and {1} are adjacent: no vertex cut exists")]
    NoVertexCut(usize, usize),

    #[error("graph is complete: no node separator exists")]
    NoSeparator,

    #[error("graph is complete: the separator capacity k is undefined, use pack_complete")]
    CompleteGraph,

    #[error("vertex set does not dominate the graph")]
    NotDominating,

    #[error("point is infeasible: {0}")]
    Infeasible(ViolatedConstraint),

    #[error("terminals lie in different components")]
    SteinerInfeasible,

    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),

    #[error("oracle budget exceeded: {0}")]
    Budget(String),

    #[error("inconsistent trace: {0}")]
    InconsistentTrace(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// `true` for errors that mean a resource cap was hit rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::IterationCap(_) | Error::Budget(_))
    }
}
