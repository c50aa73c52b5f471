use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),

    #[error("unknown identifier `{0}`")]
    UnknownId(String),

    #[error("index {index} out of range for {what} of size {len}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("conflicting composition entries for ({g}, {f})")]
    ConflictingComposition { g: String, f: String },

    #[error("object `{0}` has no identity morphism")]
    MissingIdentity(String),

    #[error("functor mismatch: {0}")]
    FunctorMismatch(String),

    #[error("construction produced an invalid table: {0}")]
    Construction(String),

    #[error("pieces do not cover the base: {0:?} uncovered")]
    NotACover(Vec<String>),

    #[error("piece `{piece}` mentions `{point}`, which is not in the base")]
    PieceOutsideBase { piece: String, point: String },

    #[error("map is not surjective onto objects: {0:?} missed")]
    NotSurjective(Vec<String>),

    #[error("level {level} would hold {size} simplices, over the budget of {budget}")]
    BudgetExceeded {
        level: String,
        size: usize,
        budget: usize,
    },

    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),

    #[error("boundary of a boundary is nonzero in degree {0}")]
    BoundaryNotNilpotent(usize),

    #[error("not a chain map in degree {0}")]
    NotAChainMap(usize),

    #[error("truncation {truncation} too small: {reason}")]
    TruncationTooSmall { truncation: usize, reason: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("composition closure failed: {0}")]
    Closure(String),

    #[error("document error: {0}")]
    Document(String),
}
