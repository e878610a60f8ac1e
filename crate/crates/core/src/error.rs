use serde::Serialize;
use thiserror::Error;

/// A concrete counterexample: the offending elements (by label) and, when an
/// operation is involved, its name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operation: Option<String>,
    pub elements: Vec<String>,
}

impl Witness {
    pub fn elements<I, S>(elements: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Witness {
            operation: None,
            elements: elements.into_iter().map(Into::into).collect(),
        }
    }

    pub fn operation<I, S>(operation: impl Into<String>, elements: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Witness {
            operation: Some(operation.into()),
            elements: elements.into_iter().map(Into::into).collect(),
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(op) = &self.operation {
            write!(f, "{op} at ")?;
        }
        write!(f, "[{}]", self.elements.join(", "))
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input: unknown labels, bad arities, non-parallel pairs.
    #[error("input error: {0}")]
    Input(String),
    /// The input is well formed but violates a precondition of the operation.
    #[error("precondition failed: {message}{}", .witness.as_ref().map(|w| format!(" (witness {w})")).unwrap_or_default())]
    Precondition {
        message: String,
        witness: Option<Witness>,
    },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>, witness: Option<Witness>) -> Self {
        Error::Precondition {
            message: msg.into(),
            witness,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Error::Precondition { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
