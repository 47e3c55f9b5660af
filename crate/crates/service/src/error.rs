use std::path::PathBuf;

use dss_core::DssError;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, ServiceError>;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Parse or schema error at a JSON pointer within a document.
    #[error("{source_name}: at `{pointer}`: {message}")]
    Schema {
        source_name: String,
        pointer: String,
        message: String,
    },

    #[error("{0}")]
    Invalid(String),

    #[error("unknown {kind} `{id}`")]
    NotFound { kind: &'static str, id: String },

    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: DssError,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl ServiceError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ServiceError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn core(context: impl Into<String>, source: DssError) -> Self {
        ServiceError::Core {
            context: context.into(),
            source,
        }
    }
}

/// JSON pointer (RFC 6901) for a `serde_path_to_error` path.
pub fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                out.push_str(&key.replace('~', "~0").replace('/', "~1"))
            }
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

/// Deserializes `text`, reporting failures with the JSON pointer of the
/// offending value.
pub fn from_json<T: serde::de::DeserializeOwned>(text: &str, source_name: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| ServiceError::Schema {
        source_name: source_name.to_string(),
        pointer: json_pointer(e.path()),
        message: e.inner().to_string(),
    })
}
