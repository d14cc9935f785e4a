//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text could not be parsed (coefficients, documents, CSV rows).
    #[error("parse error: {0}")]
    Parse(String),

    /// A polynomial does not have the degree an operation requires.
    #[error("degree error: expected degree {expected}, got {got:?}")]
    Degree { expected: usize, got: Option<usize> },

    /// A polynomial that must be monic is not.
    #[error("leading coefficient must be 1, got {0}")]
    NotMonic(String),

    /// A scalar argument fell outside its documented range.
    #[error("range error: {0}")]
    Range(String),

    /// A closed-form construction divided by a vanishing expression.
    #[error("degenerate denominator in {context}: {detail}")]
    DegenerateDenominator { context: String, detail: String },

    /// An iterative search ran out of its iteration budget.
    #[error("search exhausted: {0}")]
    Exhausted(String),

    /// The feasible-point search gave up; carries the last floating margin
    /// and the exact abscissae that defeated certification.
    #[error(
        "feasible-point search exhausted after {rounds} rounds (last margin {last_margin:.3e}, \
         {} witness abscissae)", witnesses.len()
    )]
    SearchExhausted {
        rounds: usize,
        last_margin: f64,
        witnesses: Vec<String>,
    },

    /// No lift coefficient passed verification within the halving budget.
    #[error("no lift coefficient passed verification within {halvings} halvings")]
    LiftExhausted { halvings: usize },

    /// An operation needed a Hurwitz-stable polynomial and did not get one.
    #[error("polynomial is not Hurwitz stable: {0}")]
    NotHurwitz(String),

    /// Certificate verification rejected the certificate.
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    /// I/O failure while reading or writing documents.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
