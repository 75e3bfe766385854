use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid or constants rejected at construction.
    Config(alloc::string::String),
    /// Input outside the mathematical domain of the operation (DC mode, zero field, ...).
    Domain(alloc::string::String),
    /// Non-finite value found in an input or produced by a transform.
    NonFinite(&'static str),
    /// Array length does not match the grid it is attached to.
    Shape { expected: usize, found: usize },
    /// Mode index past the end of a mode set.
    InvalidMode { index: usize, len: usize },
    /// Region does not fit inside the grid box, or its time window is empty.
    Region(alloc::string::String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
            Error::Shape { expected, found } => {
                write!(f, "shape mismatch: expected {expected} samples, found {found}")
            }
            Error::InvalidMode { index, len } => {
                write!(f, "mode index {index} out of range for {len} modes")
            }
            Error::Region(msg) => write!(f, "invalid region: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
