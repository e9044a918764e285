//! Enumeration of small semigroups and the campaigns run over them.

mod campaign;
mod enumerate;
mod sampler;

pub use campaign::*;
pub use enumerate::{enumerate_semigroups, enumerate_semigroups_par, EnumeratorState, EXHAUSTIVE_MAX};
pub use sampler::Sampler;
