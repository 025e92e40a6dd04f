use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("label {0} is out of range (expected 0..=7)")]
    InvalidLabel(u8),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad 012-string: {0}")]
    BadString(String),
    #[error("strings have different content: {0}")]
    ContentMismatch(String),
    #[error("division is not exact: {0}")]
    NotDivisible(String),
    #[error("quotient has non-integer coefficients")]
    NonIntegral,
    #[error("polynomial is not a combination of consecutive differences")]
    NotInDifferenceRing,
    #[error("wrong edge direction: {0}")]
    WrongDirection(String),
    #[error("weights are only defined on right-side-up triangular puzzles")]
    NotTriangular,
    #[error("invalid region: {0}")]
    BadRegion(String),
    #[error("gash request rejected: {0}")]
    BadGash(String),
    #[error("flaw does not match the puzzle: {0}")]
    FlawMismatch(String),
    #[error("piece tables are inconsistent: {0}")]
    Tables(String),
    #[error("theorem violation: {0}")]
    Theorem(String),
    #[error("not in the domain: {0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
