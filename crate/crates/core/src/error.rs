use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// point at the offending input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range (graph has {order} vertices)")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("vertex {0} listed twice")]
    RepeatedVertex(usize),
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("parameter {name} must be {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: String,
    },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix entry ({0}, {1}) is not finite")]
    NonFinite(usize, usize),
    #[error("matrix is not positive semidefinite (pivot {index} = {pivot:e})")]
    NotPositiveSemidefinite { index: usize, pivot: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vertices {0:?} do not form a positive clique")]
    NotPositiveClique(Vec<usize>),
    #[error("clique has {size} vertices, at least {required} required")]
    CliqueTooSmall { size: usize, required: usize },
    #[error(
        "vertex {vertex} lies in both the plus and minus neighborhood; induced K-tilde witness {witness:?}"
    )]
    NeighborhoodOverlap { vertex: usize, witness: Vec<usize> },
    #[error("clique relation violated: {0}")]
    CliqueRelationViolated(String),
    #[error("invalid Hoffman signed graph: {0}")]
    InvalidHoffman(String),
    #[error("vertex {0} is not slim")]
    NotSlim(usize),
    #[error("Hoffman graph is not fat: slim vertex {0} has no fat neighbor")]
    NotFat(usize),
    #[error("no representation of norm {norm}: smallest eigenvalue {lambda_min} < -{norm}")]
    NoRepresentation { norm: i64, lambda_min: f64 },
    #[error("Gram entry ({0}, {1}) = {2} is not integral")]
    NonIntegralGram(usize, usize, f64),
    #[error("Gram matrix is indefinite (smallest eigenvalue {0:e})")]
    IndefiniteGram(f64),
    #[error("lattice has no nonzero vector inside the search box")]
    ZeroLattice,
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, requirement: &'static str, value: impl ToString) -> Error {
    Error::InvalidParameter {
        name,
        requirement,
        value: value.to_string(),
    }
}
