use thiserror::Error;

/// Errors raised by library operations. Every variant carries a short
/// machine-readable code (see [`Error::code`]) and an optional offending datum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {message}")]
    Structural { message: String, datum: Option<String> },
    #[error("precondition violated: {message}")]
    Precondition { message: String, datum: Option<String> },
    #[error("parse error: {message}")]
    Parse { message: String, datum: Option<String> },
    #[error("io error: {message}")]
    Io { message: String, datum: Option<String> },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn structural(message: impl Into<String>) -> Self {
        Error::Structural { message: message.into(), datum: None }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition { message: message.into(), datum: None }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Error::Parse { message: message.into(), datum: None }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Error::Io { message: message.into(), datum: None }
    }

    /// Attach the offending value (arrow name, cycle, file path...).
    pub fn with_datum(mut self, value: impl Into<String>) -> Self {
        let value = Some(value.into());
        match &mut self {
            Error::Structural { datum, .. }
            | Error::Precondition { datum, .. }
            | Error::Parse { datum, .. }
            | Error::Io { datum, .. } => *datum = value,
        }
        self
    }

    pub fn code(&self) -> &'static str {
        match self {
            Error::Structural { .. } => "structural",
            Error::Precondition { .. } => "precondition",
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Error::Structural { message, .. }
            | Error::Precondition { message, .. }
            | Error::Parse { message, .. }
            | Error::Io { message, .. } => message,
        }
    }

    pub fn datum(&self) -> Option<&str> {
        match self {
            Error::Structural { datum, .. }
            | Error::Precondition { datum, .. }
            | Error::Parse { datum, .. }
            | Error::Io { datum, .. } => datum.as_deref(),
        }
    }
}
