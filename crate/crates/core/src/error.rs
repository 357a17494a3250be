use thiserror::Error;

/// Errors shared by every module in this crate.
///
/// The variants matter to callers: the CLI maps `Domain`/`Range`/
/// `Precondition` to usage-error exits and `Budget` to a resource exit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the operation's domain (bad vertex label,
    /// empty set where a nonempty one is required, mismatched dimensions).
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument is outside the range for which a formula is proven or a
    /// table row exists.
    #[error("range error: {0}")]
    Range(String),

    /// A stated precondition does not hold (for example a fault set at or
    /// above the boundary threshold of a structure check).
    #[error("precondition error: {0}")]
    Precondition(String),

    /// An enumeration would examine more candidates than the configured
    /// budget allows.
    #[error("enumeration budget of {budget} candidates exceeded: {needed} required")]
    Budget { budget: u64, needed: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
