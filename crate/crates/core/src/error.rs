use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Semantic { line: usize, msg: String },
    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("no edge {0}-{1}")]
    MissingEdge(usize, usize),
    #[error("contraction is only defined on unweighted graphs")]
    WeightedContraction,
    #[error("input graph is not planar")]
    NonPlanarInput,
    #[error("crossing edge {0}-{1} has weight {2}, expected 1")]
    WeightedCrossingEdge(usize, usize, String),
    #[error("gadget search exhausted without a match")]
    SearchExhausted,
    #[error("no general-position placement found after {0} attempts")]
    DegeneratePlacement(usize),
    #[error("degenerate drawing: {0}")]
    DegenerateDrawing(String),
    #[error("input graph must be unweighted")]
    WeightedInput,
    #[error("integer weight gadget needs a non-negative weight, got {0}")]
    NegativeWeight(i64),
    #[error("oracle precondition violated: {0}")]
    OraclePrecondition(String),
    #[error("oracle failed: {0}")]
    Oracle(String),
    #[error("minor search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),
    #[error("minor search handles at most 64 vertices, got {0}")]
    SearchTooLarge(usize),
    #[error("not a clique: {0}")]
    NotAClique(String),
    #[error("invalid minor model: {0}")]
    InvalidModel(String),
    #[error("inner clique has {0} vertices, at most 3 expected")]
    InnerCliqueTooLarge(usize),
    #[error("not a simple ring: {0}")]
    NotASimpleRing(String),
    #[error("ring is not triangulated: {0}")]
    NonTriangulated(String),
    #[error("case violation: {0}")]
    CaseViolation(String),
}
