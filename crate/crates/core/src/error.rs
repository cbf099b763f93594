use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` is a loop")]
    Loop(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("too many edges ({0}); at most 64 are supported")]
    TooManyEdges(usize),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("ribbon graph is not plane (genus {0})")]
    NotPlane(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("step bound {0} exceeded")]
    StepBound(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that indicate a broken mathematical invariant rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::StepBound(_) | Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
