//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong when building or querying the structures in
/// this crate.
///
/// Input validation failures and budget refusals are ordinary values of this
/// enum; violations of internal mathematical invariants use
/// [`Error::Invariant`] so callers can distinguish "your input is bad" from
/// "a property that should hold was falsified".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A simplex listed the same vertex twice.
    #[error("duplicate vertex {0} in simplex")]
    DuplicateVertex(usize),

    /// A simplex refers to a vertex outside the complex it should live in.
    #[error("vertex {0} is not a vertex of the complex")]
    UnknownVertex(usize),

    /// A simplex was expected to belong to a complex but does not.
    #[error("simplex {{{0}}} is not in the complex")]
    MissingSimplex(String),

    /// Skeleton dimension above the dimension of the underlying simplex.
    #[error("skeleton dimension {k} exceeds simplex dimension {n}")]
    SkeletonDimension { k: usize, n: usize },

    /// A member index into a set family was out of range.
    #[error("member index {index} out of range for a family with {len} members")]
    MemberIndex { index: usize, len: usize },

    /// A family member is not a subcomplex of the ambient complex.
    #[error("member {index} is not a subcomplex of the ambient complex")]
    NotASubcomplex { index: usize },

    /// A chain's support is not contained in the expected complex.
    #[error("chain support is not contained in the complex")]
    SupportOutsideComplex,

    /// A chain that had to be a cycle is not one.
    #[error("chain is not a cycle")]
    NotACycle,

    /// A cochain that had to be a cocycle is not one.
    #[error("cochain is not a cocycle")]
    NotACocycle,

    /// Grade/dimension mismatch between a chain and the operation applied.
    #[error("chain grade {got} does not match expected grade {expected}")]
    GradeMismatch { got: isize, expected: isize },

    /// An involution failed the cellularity check.
    #[error("involution does not commute with the boundary operator")]
    NotCellular,

    /// An involution has a fixed cell, so the quotient is not defined here.
    #[error("involution has a fixed cell in dimension {dim}")]
    NotFree { dim: usize },

    /// A vertex map does not induce a simplicial map of the given complexes.
    #[error("vertex map is not simplicial: {0}")]
    NotSimplicial(String),

    /// A vertex map collapses a simplex (the induced chain map would be
    /// degenerate).
    #[error("vertex map collapses simplex {{{0}}}")]
    DegenerateImage(String),

    /// Work refused because it would exceed a configured budget.
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: usize,
        budget: usize,
    },

    /// A geometric predicate met a configuration outside general position.
    #[error("degenerate point configuration: {0}")]
    Degenerate(String),

    /// A point configuration has fewer dimensions/points than required.
    #[error("invalid point configuration: {0}")]
    InvalidConfig(String),

    /// Preconditions of a selection/rescale operation are violated.
    #[error("selection does not fit: {0}")]
    Selection(String),

    /// A constrained chain map failed verification where a verified one was
    /// required.
    #[error("constrained chain map failed verification: {0}")]
    Unverified(String),

    /// Malformed JSON or a JSON value that violates the wire format.
    #[error("input error: {0}")]
    Input(String),

    /// An internal mathematical invariant was falsified.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
