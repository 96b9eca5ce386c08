use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("{source_name}: line {line}: {message}")]
    Malformed {
        source_name: String,
        line: u64,
        message: String,
    },

    #[error("{source_name}: line {line}: duplicate field code '{code}'")]
    DuplicateField {
        source_name: String,
        line: u64,
        code: String,
    },

    #[error("{source_name}: line {line}: field '{field}' references undeclared discipline")]
    UndeclaredDiscipline {
        source_name: String,
        line: u64,
        field: String,
    },

    #[error("{source_name}: line {line}: empty {what} code")]
    EmptyCode {
        source_name: String,
        line: u64,
        what: &'static str,
    },

    #[error("{source_name}: line {line}: duplicate researcher id '{id}'")]
    DuplicateResearcher {
        source_name: String,
        line: u64,
        id: String,
    },

    #[error("{source_name}: line {line}: duplicate publication id '{id}'")]
    DuplicatePublication {
        source_name: String,
        line: u64,
        id: String,
    },

    #[error("{source_name}: line {line}: researcher '{id}' has unregistered field code '{code}'")]
    UnregisteredField {
        source_name: String,
        line: u64,
        id: String,
        code: String,
    },

    #[error("{source_name}: line {line}: authorship references unknown publication '{id}'")]
    UnknownPublicationRef {
        source_name: String,
        line: u64,
        id: String,
    },

    #[error("unknown field code '{0}'")]
    UnknownField(String),

    #[error("unknown discipline code '{0}'")]
    UnknownDiscipline(String),

    #[error("unknown publication id '{0}'")]
    UnknownPublication(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("inconsistent counts: joint {joint} exceeds min({first}, {second})")]
    Inconsistent { first: u64, second: u64, joint: u64 },

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("oracle refused: corpus has {publications} publications (limit {limit})")]
    OracleGuard { publications: usize, limit: usize },
}

impl Error {
    pub(crate) fn malformed(source_name: &str, line: u64, message: impl Into<String>) -> Self {
        Error::Malformed {
            source_name: source_name.to_string(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn from_csv(source_name: &str, err: csv::Error) -> Self {
        let line = err.position().map(|p| p.line()).unwrap_or(0);
        match err.into_kind() {
            csv::ErrorKind::Io(e) => Error::Io(e),
            kind => Error::malformed(source_name, line, format!("{kind:?}")),
        }
    }
}
