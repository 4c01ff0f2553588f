use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid label `{0}`: labels are nonempty ASCII identifiers [A-Za-z0-9_]+")]
    InvalidLabel(String),
    #[error("{what}: {got} exceeds the limit of {limit}")]
    Capacity { what: &'static str, limit: usize, got: usize },
    #[error("point {point} is outside a {size}-point space")]
    PointOutOfRange { point: usize, size: usize },
    #[error("set over a {set}-point universe used with a {space}-point space")]
    SetOutOfRange { set: usize, space: usize },
    #[error("the degenerate filter base (empty set) has no principal filter")]
    EmptyFilterBase,
    #[error("{0} requires a nonempty set")]
    EmptySet(&'static str),
    #[error("{0} requires a connected set")]
    Disconnected(&'static str),
    #[error("{0}")]
    Precondition(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn capacity(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        Err(Error::Capacity { what, limit, got })
    } else {
        Ok(())
    }
}
