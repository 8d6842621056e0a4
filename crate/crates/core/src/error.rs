use thiserror::Error;

/// Errors produced by the sdiam toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate vertex {0} in vertex set")]
    DuplicateVertex(usize),
    #[error("graph order {n} exceeds the supported maximum {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("empty vertex set")]
    EmptySet,
    #[error("vertex {0} is a member of the target list")]
    VertexInList(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("k = {k} out of range {lo}..={hi}")]
    KOutOfRange { k: usize, lo: usize, hi: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("invalid record: {0}")]
    Record(String),
    #[error("{0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
