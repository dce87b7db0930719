use thiserror::Error;

/// Every failure the library can report.
///
/// `Precondition` is the domain error: the operation was called on inputs
/// outside its contract. The CLI maps it to exit code 1 and prints `name`.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arrow endpoint `{0}` is not a declared vertex")]
    DanglingEndpoint(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("quiver has an oriented cycle")]
    OrientedCycle,
    #[error("vector is not defined on the quiver's vertex set: {0}")]
    VertexSet(String),
    #[error("precondition `{name}` violated: {detail}")]
    Precondition { name: &'static str, detail: String },
    #[error("search cap `{what}` exhausted (limit {limit})")]
    Cap { what: &'static str, limit: u64 },
    #[error("internal consistency check failed: {0}")]
    Theory(String),
}

impl Error {
    pub(crate) fn pre(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition { name, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
