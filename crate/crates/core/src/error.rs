use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge index {index} out of range (graph has {len} edges)")]
    EdgeIndex { index: usize, len: usize },

    #[error("edge subset has length {got}, expected {expected}")]
    SubsetLength { got: usize, expected: usize },

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("size {size} out of bounds for family `{family}` ({bounds})")]
    FamilySize {
        family: String,
        size: usize,
        bounds: String,
    },

    #[error("graph has {edges} edges, above the bound of {bound}")]
    TooManyEdges { edges: usize, bound: usize },

    #[error("polynomial division leaves a nonzero remainder")]
    InexactDivision,

    #[error("not a T-hat polynomial: {0}")]
    NotTutteHat(String),

    #[error("invalid coefficient system: {0}")]
    InvalidSystem(String),

    #[error("malformed cube edge label `{0}`")]
    CubeLabel(String),

    #[error("edge {0} is a loop")]
    LoopEdge(usize),

    #[error("edge {0} is not a loop")]
    NotLoop(usize),

    #[error("edge {0} is not a pendant edge")]
    NotPendant(usize),

    #[error("not a subgraph: {0}")]
    NotSubgraph(String),

    #[error("differential does not square to zero: {0}")]
    NotAComplex(String),

    #[error("map is not a chain map: {0}")]
    NotChainMap(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
