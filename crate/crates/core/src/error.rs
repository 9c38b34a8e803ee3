use thiserror::Error;

/// Errors raised by the evaluators in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation (poles, bad discriminants, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// (−1)^λ n is not ≡ 0, 1 (mod 4), or the modulus is not a multiple of 4.
    #[error("plus-space admissibility violated: {0}")]
    Admissibility(String),

    #[error("accuracy target not reachable: {0}")]
    Accuracy(String),

    /// No representation coprime to d was found within the configured search box.
    #[error("genus character search exhausted: {0}")]
    Search(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("precision error: {0}")]
    Precision(String),

    /// The evaluation point lies on a geodesic translate.
    #[error("degenerate position: {0}")]
    Degenerate(String),

    /// Double precision was requested beyond its supported budget.
    #[error("precision mode error: {0}")]
    Mode(String),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    /// Errors that indicate invalid caller input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Admissibility(_) | Error::Mode(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
