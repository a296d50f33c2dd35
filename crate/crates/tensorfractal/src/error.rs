use std::fmt;
use std::io;

/// Errors of the IO and rendering layer, wrapping the core algebra errors.
#[derive(Debug)]
pub enum Error {
    /// Propagated from the tensor algebra.
    Core(tensorfractal_core::Error),
    /// Underlying file or stream failure.
    Io(io::Error),
    /// Malformed input while reading one of the text formats.
    Parse { line: usize, message: String },
    /// Input does not fit the requested output format.
    Format(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Core(e) => write!(f, "{e}"),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::Format(message) => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Core(e) => Some(e),
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<tensorfractal_core::Error> for Error {
    fn from(e: tensorfractal_core::Error) -> Self {
        Error::Core(e)
    }
}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Error::Io(e)
    }
}
