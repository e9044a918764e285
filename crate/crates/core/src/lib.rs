//! Exact density computations on finite semigroups.
//!
//! Three notions of density are computed for subsets of a finite semigroup:
//! Følner density `d` (via the invariant core and its orbit atoms), Banach
//! density `d*` (an exact rational linear program over the left invariant
//! means), and translation density `d_t` (both by definition and through the
//! invariant core). The [`search`] module enumerates small semigroups and runs
//! campaigns that machine-check the relations between these numbers, and
//! [`truncated`] evaluates finite windows of a few infinite examples.

pub mod densities;
pub mod error;
pub mod lp;
pub mod ratio;
pub mod search;
pub mod semigroup;
pub mod sgt;
pub mod subset;
pub mod truncated;

pub use densities::{DensityReport, InvariantCore};
pub use error::{Error, Result};
pub use lp::{LinearProgram, MeanVector, SimplexOutcome};
pub use num_rational::BigRational;
pub use semigroup::{FiniteSemigroup, QuotientMap, StructureFlags};
pub use subset::{SubsetMask, MASK_WIDTH};
