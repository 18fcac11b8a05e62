//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by this crate.
///
/// The variants separate failures with different meanings:
///
/// - [`Error::Domain`]: the arguments are outside the function's domain
///   (wrong parity, out of supported range, malformed input). The question
///   asked is not well posed.
/// - [`Error::NonExistence`]: the arguments are valid but the requested
///   object provably does not exist (for example an HR(s,t) family whose
///   signature exceeds the maximal admissible one).
/// - [`Error::NotFound`]: the object may exist but the bounded search this
///   crate performs did not locate it. Absence of evidence, not evidence of
///   absence.
/// - [`Error::Parse`]: a file or string could not be parsed.
#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested object provably does not exist.
    #[error("non-existence: {0}")]
    NonExistence(String),

    /// The bounded search did not find the requested object.
    #[error("not found: {0}")]
    NotFound(String),

    /// Input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
