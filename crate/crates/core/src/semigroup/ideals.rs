//! Ideals, the kernel and the structural predicates used by the density code.

use super::FiniteSemigroup;
use crate::error::{Error, Result};
use crate::subset::SubsetMask;

/// `{a} ∪ Sa`.
pub fn principal_left_ideal(s: &FiniteSemigroup, a: usize) -> SubsetMask {
    let mut l = s.right_translate(s.full(), a);
    l.insert(a);
    l
}

/// `{a} ∪ aS`.
pub fn principal_right_ideal(s: &FiniteSemigroup, a: usize) -> SubsetMask {
    let mut r = s.left_translate(a, s.full());
    r.insert(a);
    r
}

/// Minimal left ideals, each listed once, ordered by lowest element.
///
/// Every left ideal contains a principal one, so the minimal left ideals are
/// exactly the inclusion-minimal principal left ideals.
pub fn minimal_left_ideals(s: &FiniteSemigroup) -> Vec<SubsetMask> {
    let principal: Vec<SubsetMask> = s.elements().map(|a| principal_left_ideal(s, a)).collect();
    let mut out: Vec<SubsetMask> = Vec::new();
    for &l in &principal {
        let minimal = principal.iter().all(|&m| !m.is_subset(l) || m == l);
        if minimal && !out.contains(&l) {
            out.push(l);
        }
    }
    out.sort_by_key(|l| l.first());
    out
}

/// The smallest two-sided ideal: the union of the minimal left ideals.
pub fn kernel(s: &FiniteSemigroup) -> SubsetMask {
    minimal_left_ideals(s)
        .into_iter()
        .fold(s.empty_set(), SubsetMask::union)
}

pub fn is_left_ideal(s: &FiniteSemigroup, set: SubsetMask) -> bool {
    !set.is_empty() && s.set_product(s.full(), set).is_subset(set)
}

pub fn is_right_ideal(s: &FiniteSemigroup, set: SubsetMask) -> bool {
    !set.is_empty() && s.set_product(set, s.full()).is_subset(set)
}

pub fn is_two_sided_ideal(s: &FiniteSemigroup, set: SubsetMask) -> bool {
    is_left_ideal(s, set) && is_right_ideal(s, set)
}

/// `{z : xz = z for all x}`.
pub fn right_zeros(s: &FiniteSemigroup) -> SubsetMask {
    let z = s.elements().filter(|&z| s.elements().all(|x| s.mul(x, z) == z));
    SubsetMask::from_indices(s.order(), z).expect("indices in range")
}

pub fn idempotents(s: &FiniteSemigroup) -> SubsetMask {
    let e = s.elements().filter(|&x| s.mul(x, x) == x);
    SubsetMask::from_indices(s.order(), e).expect("indices in range")
}

/// Whether every pair `a, b` admits some `x` with `ax = bx`; on failure
/// returns the first pair without one.
pub fn has_collapse_property(s: &FiniteSemigroup) -> std::result::Result<(), (usize, usize)> {
    for a in s.elements() {
        for b in a + 1..s.order() {
            if !s.elements().any(|x| s.mul(a, x) == s.mul(b, x)) {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

/// `s ⪯ t` iff `s = t` or `st = t`.
fn precedes(s: &FiniteSemigroup, x: usize, y: usize) -> bool {
    x == y || s.mul(x, y) == y
}

/// Whether every element lies below some element of `a` in the order `⪯`.
///
/// Requires the collapse property; the directedness of `⪯` is re-checked and
/// reported as a precondition failure if it does not hold.
pub fn is_cofinal(s: &FiniteSemigroup, a: SubsetMask) -> Result<bool> {
    if let Err((x, y)) = has_collapse_property(s) {
        return Err(Error::PreconditionViolated(format!(
            "no x with {x}x = {y}x (collapse property fails)"
        )));
    }
    for x in s.elements() {
        for y in x + 1..s.order() {
            if !s
                .elements()
                .any(|z| precedes(s, x, z) && precedes(s, y, z))
            {
                return Err(Error::PreconditionViolated(format!(
                    "{x} and {y} have no common upper bound"
                )));
            }
        }
    }
    Ok(s.elements()
        .all(|x| a.iter().any(|t| precedes(s, x, t))))
}

/// `A` is thick iff some right translate `Sx` of the whole semigroup lies in `A`
/// (the finite set `F = S` dominates every other choice of `F`).
pub fn is_thick(s: &FiniteSemigroup, a: SubsetMask) -> bool {
    thick_witness(s, a).is_some()
}

/// The lowest `x` with `Sx ⊆ A`.
pub fn thick_witness(s: &FiniteSemigroup, a: SubsetMask) -> Option<usize> {
    s.elements()
        .find(|&x| s.right_translate(s.full(), x).is_subset(a))
}

pub fn is_commutative(s: &FiniteSemigroup) -> bool {
    s.elements()
        .all(|a| (a + 1..s.order()).all(|b| s.mul(a, b) == s.mul(b, a)))
}

/// `ax = ay ⇒ x = y`: every row is injective.
pub fn is_left_cancellative(s: &FiniteSemigroup) -> bool {
    s.elements().all(|a| s.left_translate(a, s.full()).is_full())
}

/// `xa = ya ⇒ x = y`: every column is injective.
pub fn is_right_cancellative(s: &FiniteSemigroup) -> bool {
    s.elements().all(|a| s.right_translate(s.full(), a).is_full())
}

/// A finite semigroup is a group iff it is cancellative; additionally checks
/// for a unique idempotent acting as a two-sided identity.
pub fn is_group(s: &FiniteSemigroup) -> bool {
    if !is_left_cancellative(s) || !is_right_cancellative(s) {
        return false;
    }
    let e = idempotents(s);
    e.len() == 1 && {
        let e = e.first().expect("one idempotent");
        s.elements().all(|x| s.mul(e, x) == x && s.mul(x, e) == x)
    }
}

pub fn is_band(s: &FiniteSemigroup) -> bool {
    idempotents(s).is_full()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StructureFlags {
    pub commutative: bool,
    pub left_cancellative: bool,
    pub right_cancellative: bool,
    pub group: bool,
    pub band: bool,
    pub has_right_zero: bool,
}

pub fn classify(s: &FiniteSemigroup) -> StructureFlags {
    StructureFlags {
        commutative: is_commutative(s),
        left_cancellative: is_left_cancellative(s),
        right_cancellative: is_right_cancellative(s),
        group: is_group(s),
        band: is_band(s),
        has_right_zero: !right_zeros(s).is_empty(),
    }
}

impl StructureFlags {
    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        for (on, name) in [
            (self.commutative, "commutative"),
            (self.left_cancellative, "left-cancellative"),
            (self.right_cancellative, "right-cancellative"),
            (self.group, "group"),
            (self.band, "band"),
            (self.has_right_zero, "has-right-zero"),
        ] {
            if on {
                v.push(name);
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::*;

    fn set(n: usize, xs: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn right_zero_ideals() {
        let rz = right_zero(2);
        assert_eq!(minimal_left_ideals(&rz), vec![set(2, &[0]), set(2, &[1])]);
        assert_eq!(kernel(&rz), rz.full());
        assert_eq!(right_zeros(&rz), rz.full());
    }

    #[test]
    fn group_has_one_minimal_left_ideal() {
        let c2 = cyclic_group(2);
        assert_eq!(minimal_left_ideals(&c2), vec![c2.full()]);
        assert!(right_zeros(&c2).is_empty());
    }

    #[test]
    fn semilattice_kernel_is_bottom() {
        let sl = chain_semilattice(2);
        assert_eq!(principal_left_ideal(&sl, 1), sl.full());
        assert_eq!(principal_left_ideal(&sl, 0), set(2, &[0]));
        assert_eq!(minimal_left_ideals(&sl), vec![set(2, &[0])]);
        assert_eq!(kernel(&sl), set(2, &[0]));
        assert_eq!(right_zeros(&sl), set(2, &[0]));
    }

    #[test]
    fn collapse_property() {
        assert_eq!(has_collapse_property(&right_zero(2)), Ok(()));
        assert_eq!(has_collapse_property(&cyclic_group(2)), Err((0, 1)));
        assert_eq!(has_collapse_property(&left_zero(2)), Err((0, 1)));
        for sl in [chain_semilattice(4), union_semilattice(3)] {
            assert_eq!(has_collapse_property(&sl), Ok(()));
            // x = ab works in a semilattice
            for a in sl.elements() {
                for b in sl.elements() {
                    let x = sl.mul(a, b);
                    assert_eq!(sl.mul(a, x), sl.mul(b, x));
                }
            }
        }
    }

    #[test]
    fn cofinality() {
        let sl = chain_semilattice(2);
        assert_eq!(is_cofinal(&sl, set(2, &[0])), Ok(true));
        assert_eq!(is_cofinal(&sl, set(2, &[1])), Ok(false));
        let rz = right_zero(3);
        for a in SubsetMask::all(3).filter(|a| !a.is_empty()) {
            assert_eq!(is_cofinal(&rz, a), Ok(true));
        }
        assert!(matches!(
            is_cofinal(&cyclic_group(2), set(2, &[0])),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn thickness() {
        assert!(is_thick(&right_zero(2), set(2, &[0])));
        assert!(!is_thick(&cyclic_group(2), set(2, &[0])));
        assert!(is_thick(&chain_semilattice(2), set(2, &[0])));
        assert!(!is_thick(&chain_semilattice(2), set(2, &[1])));
    }

    #[test]
    fn classification() {
        let g = classify(&cyclic_group(2));
        assert!(g.group && g.commutative && g.left_cancellative && g.right_cancellative);
        let lz = classify(&left_zero(2));
        assert!(lz.right_cancellative && !lz.left_cancellative && lz.band);
        let rz = classify(&right_zero(2));
        assert!(rz.left_cancellative && !rz.right_cancellative && rz.has_right_zero);
        assert!(!classify(&right_zero(2)).group);
    }

    #[test]
    fn kernel_is_two_sided_ideal() {
        for s in [
            rectangular_band(2, 3),
            adjoin_zero(&cyclic_group(3)),
            adjoin_identity(&left_zero(2)),
            monogenic(3, 2),
        ] {
            let k = kernel(&s);
            assert!(is_two_sided_ideal(&s, k));
            for l in minimal_left_ideals(&s) {
                assert!(is_left_ideal(&s, l));
                for x in l {
                    assert_eq!(principal_left_ideal(&s, x), l);
                }
            }
        }
    }
}
