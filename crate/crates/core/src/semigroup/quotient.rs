//! Surjective homomorphisms and the collapse quotient `a ~ b ⟺ ∃x: ax = bx`.

use super::{trivial, FiniteSemigroup};
use crate::error::{Error, Result};
use crate::subset::SubsetMask;

/// A surjective homomorphism `source → target`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: FiniteSemigroup,
    target: FiniteSemigroup,
    class_of: Vec<usize>,
}

impl QuotientMap {
    /// Checks surjectivity and the homomorphism law before accepting the map.
    pub fn new(source: FiniteSemigroup, target: FiniteSemigroup, class_of: Vec<usize>) -> Result<Self> {
        if class_of.len() != source.order() {
            return Err(Error::SizeMismatch {
                left: class_of.len(),
                right: source.order(),
            });
        }
        let mut hit = vec![false; target.order()];
        for &c in &class_of {
            if c >= target.order() {
                return Err(Error::PreconditionViolated(format!("class {c} out of range")));
            }
            hit[c] = true;
        }
        if let Some(u) = hit.iter().position(|h| !h) {
            return Err(Error::PreconditionViolated(format!(
                "map is not surjective: {u} has no preimage"
            )));
        }
        for a in source.elements() {
            for b in source.elements() {
                if class_of[source.mul(a, b)] != target.mul(class_of[a], class_of[b]) {
                    return Err(Error::PreconditionViolated(format!(
                        "not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(QuotientMap {
            source,
            target,
            class_of,
        })
    }

    pub fn identity(s: &FiniteSemigroup) -> Self {
        QuotientMap {
            source: s.clone(),
            target: s.clone(),
            class_of: s.elements().collect(),
        }
    }

    /// The map onto the one-element semigroup.
    pub fn to_trivial(s: &FiniteSemigroup) -> Self {
        QuotientMap {
            source: s.clone(),
            target: trivial(),
            class_of: vec![0; s.order()],
        }
    }

    pub fn source(&self) -> &FiniteSemigroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteSemigroup {
        &self.target
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    /// `h⁻¹[B]`.
    pub fn preimage(&self, b: SubsetMask) -> SubsetMask {
        let items = self.source.elements().filter(|&x| b.contains(self.class_of[x]));
        SubsetMask::from_indices(self.source.order(), items).expect("indices in range")
    }

    /// `h[A]`.
    pub fn image(&self, a: SubsetMask) -> SubsetMask {
        let items = a.iter().map(|x| self.class_of[x]);
        SubsetMask::from_indices(self.target.order(), items).expect("indices in range")
    }
}

/// Quotient of `S` by `a ~ b ⟺ ∃x: ax = bx`.
///
/// The relation is always reflexive and symmetric; transitivity and
/// compatibility with multiplication are verified here because they are only
/// guaranteed when `S` satisfies the strong Følner condition. Classes are
/// numbered in order of their least element.
pub fn collapse_quotient(s: &FiniteSemigroup) -> Result<QuotientMap> {
    let n = s.order();
    let related: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| s.elements().any(|x| s.mul(a, x) == s.mul(b, x)))
                .collect()
        })
        .collect();
    for a in 0..n {
        for b in 0..n {
            if !related[a][b] {
                continue;
            }
            if let Some(c) = (0..n).find(|&c| related[b][c] && !related[a][c]) {
                return Err(Error::NotAnEquivalence { a, b, c });
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for b in a..n {
            if related[a][b] {
                class_of[b] = id;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let (ra, rb) = (reps[class_of[a]], reps[class_of[b]]);
            if class_of[s.mul(a, b)] != class_of[s.mul(ra, rb)] {
                return Err(Error::NotWellDefined {
                    a: ra,
                    a2: a,
                    b: rb,
                    b2: b,
                });
            }
        }
    }
    let m = reps.len();
    let target = FiniteSemigroup::from_fn(m, |i, j| class_of[s.mul(reps[i], reps[j])])?;
    let labels = reps.iter().map(|&r| format!("[{}]", s.label(r))).collect();
    let target = target.with_labels(labels)?;
    Ok(QuotientMap {
        source: s.clone(),
        target,
        class_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::*;

    #[test]
    fn right_zero_collapses_to_a_point() {
        let q = collapse_quotient(&right_zero(2)).unwrap();
        assert_eq!(q.target().order(), 1);
    }

    #[test]
    fn group_quotient_is_identity() {
        let q = collapse_quotient(&cyclic_group(2)).unwrap();
        assert_eq!(q.class_of(), &[0, 1]);
        assert_eq!(brute_isomorphic(q.target(), &cyclic_group(2), false), Ok(true));
    }

    #[test]
    fn group_times_right_zero_projects_to_group() {
        let s = direct_product(&cyclic_group(2), &right_zero(2)).unwrap();
        let q = collapse_quotient(&s).unwrap();
        // (g,z) ~ (g',z') iff g = g', checked against the relation directly
        for x in 0..4 {
            for y in 0..4 {
                let related = (0..4).any(|w| s.mul(x, w) == s.mul(y, w));
                assert_eq!(related, x / 2 == y / 2);
                assert_eq!(q.class_of()[x] == q.class_of()[y], x / 2 == y / 2);
            }
        }
        assert_eq!(brute_isomorphic(q.target(), &cyclic_group(2), false), Ok(true));
        let b = SubsetMask::singleton(2, 0);
        assert_eq!(q.preimage(b), SubsetMask::from_indices(4, [0, 1]).unwrap());
        assert_eq!(q.image(SubsetMask::singleton(4, 3)), SubsetMask::singleton(2, 1));
    }

    #[test]
    fn left_zero_quotient_is_not_cancellative() {
        let q = collapse_quotient(&left_zero(2)).unwrap();
        assert_eq!(q.target().order(), 2);
        assert!(!is_left_cancellative(q.target()));
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let c2 = cyclic_group(2);
        assert!(QuotientMap::new(c2.clone(), c2.clone(), vec![0, 0]).is_err());
        assert!(QuotientMap::new(c2.clone(), trivial(), vec![0, 0]).is_ok());
    }

    #[test]
    fn non_transitive_relation_is_reported() {
        let mut found = false;
        for s in crate::search::enumerate_semigroups(3, Dedup::Iso).unwrap() {
            if let Err(e) = collapse_quotient(&s) {
                assert!(matches!(
                    e,
                    Error::NotAnEquivalence { .. } | Error::NotWellDefined { .. }
                ));
                found = true;
            }
        }
        assert!(found, "expected some order-3 semigroup whose collapse relation degenerates");
    }
}
