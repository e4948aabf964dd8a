//! Finite permutation groups at desk scale: group laws and equations,
//! verbal and algebraic closedness audits, monoliths, retractions and
//! bounded variety membership.

pub mod builtin;
pub mod catalog;
pub mod cli;
pub mod elemset;
pub mod equations;
pub mod error;
pub mod group;
pub mod hom;
pub mod perm;
pub mod quotient;
pub mod report;
pub mod retracts;
pub mod structure;
pub mod suite;
pub mod sylow;
pub mod words;

pub use builtin::builtin;
pub use error::{Error, Result};
pub use group::{FiniteGroup, Limits, Subgroup};
pub use hom::{are_isomorphic, Homomorphism};
pub use perm::Permutation;
pub use quotient::quotient;
pub use sylow::sylow_subgroup;
