use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("inconsistent orientation: edge at {0:?} forced both ways")]
    InconsistentOrientation((u32, u8)),
    #[error("diagram is not oriented")]
    Unoriented,
    #[error("fusing strand {0} would delete the last vertex on its component")]
    LastVertexOnComponent(u32),
    #[error("no vertex with id {0}")]
    NoSuchVertex(u32),
    #[error("slot index {1} out of range for vertex {0}")]
    BadSlot(u32, u8),
    #[error("crossing already 1-smoothed at position {0}")]
    AlreadySmoothedOne(usize),
    #[error("bad permutation: {0}")]
    BadPermutation(String),
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a chain complex: d_out * d_in != 0")]
    NotAComplex,
    #[error("grading mismatch between chain elements")]
    GradingMismatch,
    #[error("chain elements live on different diagrams")]
    DifferentDiagram,
    #[error("loop through {0:?} passes through a crossing")]
    LoopHasCrossings((u32, u8)),
    #[error("saddle ends lie on the same edge in an incoherent way")]
    SameEdgeConflict,
    #[error("move locus does not bound a face; the move would leave the plane")]
    NotCoplanar,
    #[error("not a kink at {0:?}")]
    NotAKink((u32, u8)),
    #[error("not an R2 bigon at {0:?}, {1:?}")]
    NotABigon((u32, u8), (u32, u8)),
    #[error("not an R3 triangle")]
    NotATriangle,
    #[error("R3 configuration not covered by the tables")]
    UnsupportedConfiguration,
    #[error("movie has no empty end")]
    NoEmptyEnd,
    #[error("movies do not share boundary links")]
    BoundaryMismatch,
    #[error("simplification search exhausted at {crossings} crossings (depth {depth})")]
    SimplificationFailed { crossings: usize, depth: usize },
    #[error("propagated class not expressible in target homology basis")]
    TargetExpressionFailed,
    #[error("move invalid at stage {stage}: {source}")]
    MoveAtStage {
        stage: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("bad movie file: {0}")]
    BadMovieFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
