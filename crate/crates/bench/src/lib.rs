//! Fixtures shared by the criterion benches.

use semidense::semigroup::{cyclic_group, direct_product, right_zero, union_semilattice};
use semidense::FiniteSemigroup;

/// A few semigroups of increasing order with nontrivial cores.
pub fn fixtures() -> Vec<(&'static str, FiniteSemigroup)> {
    vec![
        ("c2xrz2", direct_product(&cyclic_group(2), &right_zero(2)).expect("order 4")),
        ("c3xrz3", direct_product(&cyclic_group(3), &right_zero(3)).expect("order 9")),
        ("pf3", union_semilattice(3)),
        ("c4xrz4", direct_product(&cyclic_group(4), &right_zero(4)).expect("order 16")),
    ]
}
