use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` needs a domain of at least two labels")]
    DomainTooSmall(String),
    #[error("variable `{0}` has duplicate domain label `{1}`")]
    DuplicateLabel(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown domain label `{label}` for variable `{variable}`")]
    UnknownLabel { variable: String, label: String },
    #[error("expected {expected} table entries, got {got}")]
    TableSize { expected: usize, got: usize },
    #[error("negative probability {0}")]
    NegativeProbability(String),
    #[error("probabilities sum to {0}, expected exactly 1")]
    NotNormalized(String),
    #[error("conditional table row {row} of node `{node}` sums to {sum}, expected exactly 1")]
    CptRowNotNormalized { node: String, row: usize, sum: String },
    #[error("edge relation contains a cycle")]
    CyclicGraph,
    #[error("constraint has no nonzero coefficient")]
    TrivialConstraint,
    #[error("strategy sets range over different joint spaces")]
    SpaceMismatch,
    #[error("player `{0}`: {1}")]
    InvalidPlayer(String, String),
    #[error("game is improper: joint choice {choice:?} is {verdict}")]
    ImproperGame { choice: Vec<String>, verdict: String },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("cannot parse `{0}` as an exact rational")]
    BadRational(String),
}
