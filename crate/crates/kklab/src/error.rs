use thiserror::Error;

#[derive(Debug, Error)]
pub enum KklabError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: kklab_core::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl KklabError {
    pub fn config(msg: impl Into<String>) -> KklabError {
        KklabError::ConfigInvalid(msg.into())
    }

    pub fn core(context: impl Into<String>, source: kklab_core::Error) -> KklabError {
        KklabError::Core { context: context.into(), source }
    }

    /// Process exit status: configuration and input problems are all status 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T> = std::result::Result<T, KklabError>;
