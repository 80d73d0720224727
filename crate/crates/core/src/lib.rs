//! Factorization systems, small object arguments and left-exact localizations
//! in presheaf topoi over finite categories.

pub mod arrowcalc;
pub mod error;
pub mod fincat;
pub mod finset;
pub mod fixtures;
pub mod guard;
pub mod modulators;
pub mod ortho;
pub mod presheaf;
pub mod soa;
pub mod verify;

pub use error::{Error, Result};
pub use fincat::{FinCategory, Functor};
pub use finset::{FinSet, SetMap};
pub use presheaf::{Presheaf, PresheafMap, Square};
pub use modulators::{GeneratorSet, Sieve, Topology, Verdict};
pub use soa::{FactorizationResult, Machine, MapFamily};
pub use verify::Report;
