//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::soa::FactorizationResult;

/// Law of a finite category that a raw description can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    DuplicateId,
    UnknownReference,
    IdentityTyping,
    CompositeTyping,
    MissingComposite,
    SpuriousComposite,
    IdentityLaw,
    Associativity,
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Law::DuplicateId => "duplicate id",
            Law::UnknownReference => "unknown reference",
            Law::IdentityTyping => "identity typing",
            Law::CompositeTyping => "composite typing",
            Law::MissingComposite => "missing composite",
            Law::SpuriousComposite => "composite of non-composable pair",
            Law::IdentityLaw => "identity law",
            Law::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed category: {law} violated by {witness}")]
    MalformedCategory { law: Law, witness: String },
    #[error("malformed functor: {0}")]
    MalformedFunctor(String),
    #[error("malformed set data: {0}")]
    MalformedSet(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("malformed presheaf: {0}")]
    MalformedPresheaf(String),
    #[error("map is not natural: {0}")]
    NotNatural(String),
    #[error("square does not commute: {0}")]
    NotCommutative(String),
    #[error("malformed family: {0}")]
    MalformedFamily(String),
    #[error("malformed topology: {0}")]
    MalformedTopology(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("functors do not share a target category")]
    TargetMismatch,
    #[error("values live over different base categories")]
    BaseMismatch,
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("{what} has {size} elements, exceeding the size guard of {limit}")]
    SizeExceeded { what: String, size: usize, limit: usize },
    #[error("no convergence after {max_iter} iterations")]
    NonConvergence { max_iter: usize, last: Box<FactorizationResult> },
    #[error("plus unit undefined: {0}")]
    PlusUnitUndefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
