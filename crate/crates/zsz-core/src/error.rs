//! Crate-wide error type.

use thiserror::Error;

/// Why a multiplication table failed group validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotAGroupReason {
    /// Table is not `n x n`, or an entry is `>= n`.
    BadShape,
    /// No two-sided identity element exists.
    NoIdentity,
    /// A row or column is not a permutation; witness is `(row, col, col')`
    /// with `t[row][col] == t[row][col']` (or the transposed reading).
    NotLatin,
    /// Associativity fails; witness is the least `(a, b, c)` with
    /// `(ab)c != a(bc)`.
    NotAssociative,
    /// Element in the witness has no two-sided inverse.
    NoInverse,
}

impl std::fmt::Display for NotAGroupReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NotAGroupReason::BadShape => "table is not square or has out-of-range entries",
            NotAGroupReason::NoIdentity => "no two-sided identity",
            NotAGroupReason::NotLatin => "a row or column repeats an element",
            NotAGroupReason::NotAssociative => "associativity fails",
            NotAGroupReason::NoInverse => "an element has no two-sided inverse",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup {
        reason: NotAGroupReason,
        witness: Vec<usize>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("operation requires an abelian group")]
    NotAbelian,

    #[error("operation requires abelian factors")]
    NotAbelianInputs,

    #[error("table shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("matched pair is not valid: {0}")]
    InvalidMatchedPair(String),

    #[error("product table failed group axioms: {0}")]
    ProductNotAGroup(String),

    #[error("subgroups do not give an exact factorization: {0}")]
    NotExactFactorization(String),

    #[error("the map family is not a homomorphic action: {0}")]
    NotAnAction(String),

    #[error("generator rules are inconsistent: {0}")]
    InconsistentRules(String),

    #[error("generator rules leave sigma/tau undetermined at (k={k}, h={h})")]
    IncompleteRules { k: usize, h: usize },

    #[error("map domains/codomains do not line up: {0}")]
    DomainMismatch(String),

    #[error("matrices come from different matched pairs")]
    MixedSources,

    #[error("endomorphism is not central: g^-1·theta(g) lies outside the center at g={element}")]
    NotCentral { element: usize },

    #[error("matrix fails conditions: {}", failed.join(", "))]
    ConditionsFailed { failed: Vec<String> },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("order {order} exceeds the working limit {max} (set ZSZ_MAX_ORDER to raise it)")]
    GuardExceeded { order: usize, max: usize },

    #[error("claim failed: {0}")]
    ClaimFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
