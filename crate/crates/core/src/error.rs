use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid skew shape: {0}")]
    InvalidShape(String),

    #[error("malformed tableau: {0}")]
    MalformedTableau(String),

    #[error("shape has {boxes} boxes but content has size {content}")]
    SizeMismatch { boxes: usize, content: usize },

    #[error("tableau does not satisfy the lattice property")]
    NotLattice,

    #[error("{what} exceeded the configured ceiling of {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("character {character} has no value on class {class}")]
    MissingClassValue { character: String, class: String },

    #[error(
        "character {character} is {ell}-modular but the unit order {order} is divisible by {ell}"
    )]
    BrauerCharacteristic {
        character: String,
        ell: u64,
        order: u64,
    },

    #[error("unknown {kind} {id:?}")]
    Unknown { kind: &'static str, id: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error("{} validation error(s):\n  {}", .0.len(), .0.join("\n  "))]
    Validation(Vec<String>),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn unknown(kind: &'static str, id: impl Into<String>) -> Self {
        Error::Unknown {
            kind,
            id: id.into(),
        }
    }
}
