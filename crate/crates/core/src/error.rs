//! Error types shared across the workbench.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bilinear form is not that of a finite or affine Cartan datum")]
    NotFiniteOrAffine,
    #[error("datum validation failed: {0}")]
    InvalidDatum(String),
    #[error("diagram automorphism is not admissible: {0}")]
    NotAdmissible(String),
    #[error("weight of height {got} exceeds the configured cutoff {cutoff}")]
    CutoffExceeded { got: usize, cutoff: usize },
    #[error("elements belong to different contexts")]
    ContextMismatch,
    #[error("operand outside the operator domain: {0}")]
    DomainViolation(String),
    #[error("E/K residue failed to cancel in a braid operator image")]
    ResidueNonzero,
    #[error("infinite word failed its audit: {0}")]
    ValidationFailed(String),
    #[error("root {0} is not extremal in the order")]
    NotExtremal(String),
    #[error("the set {{β̄ : β ≺ δ}} is not a positive system (non-convex order?)")]
    NotAPositiveSystem,
    #[error("σ-classification is only implemented for the four admissible affine cases")]
    UnsupportedCase,
    #[error("Gram matrix unexpectedly singular at weight {0}")]
    SingularGram(String),
    #[error("element is not σ-fixed")]
    NotSigmaFixed,
    #[error("bar-invariant lift failed at index {0}: {1}")]
    LiftFailed(String, String),
    #[error("audit failed: {0}")]
    AuditFailed(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("no canonical element matched: {0}")]
    NotFound(String),
    #[error("monomial factorization is stuck (no i with ε_i > 0)")]
    Stuck,
    #[error("sign clash constructing the positive part at weight {0}")]
    SignClash(String),
    #[error("decomposition check failed: {0}")]
    DecompositionFailed(String),
    #[error("non-integral coefficient where Z[q,q^-1] was required: {0}")]
    DenominatorWitness(String),
    #[error("elements failed to match: {0}")]
    Unmatched(String),
    #[error("{0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
