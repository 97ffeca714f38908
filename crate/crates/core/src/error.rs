use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    OutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vertex cost must be at least 1 (vertex {vertex} has cost {cost})")]
    InvalidCost { vertex: usize, cost: u64 },

    #[error("malformed parse tree: {0}")]
    MalformedTree(String),

    #[error("module {module}: capacity {capacity} below lower bound {lower}")]
    InconsistentBounds {
        module: usize,
        capacity: u32,
        lower: u32,
    },

    #[error("invalid root module {root}: {reason}")]
    InvalidRoot { root: usize, reason: &'static str },

    #[error("feasibility search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),

    #[error("module {0} is not reachable from the root in the support of x")]
    Unreachable(usize),

    #[error("cannot cut a cover of {vertices} vertices into {wanted} pieces")]
    TooFewVertices { vertices: usize, wanted: usize },

    #[error("cannot trim a cover of {pieces} pieces down to {wanted}")]
    TooManyPieces { pieces: usize, wanted: usize },

    #[error("no feasible cover found for a node of {0} vertices")]
    NoCover(usize),

    #[error("tree construction stuck with {0} unexplored vertices")]
    StuckExploration(usize),

    #[error("vertex {vertex} owes children but no first endpoint can be adopted")]
    NoAdoptableEndpoint { vertex: usize },

    #[error("instance too large: {n} exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cannot read {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug in the solver rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::StuckExploration(_)
                | Error::NoAdoptableEndpoint { .. }
                | Error::NoCover(_)
                | Error::Internal(_)
                | Error::SearchBudgetExceeded(_)
                | Error::MalformedTree(_)
        )
    }
}
