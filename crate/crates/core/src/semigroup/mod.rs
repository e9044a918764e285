//! Finite semigroups given by multiplication tables.
//!
//! Elements are dense indices `0..n`. Row `a` of the table is the left
//! translation `λ_a` and column `b` is the right translation `ρ_b`.

mod builders;
mod ideals;
pub(crate) mod iso;
mod quotient;

pub use builders::*;
pub use ideals::*;
pub use iso::{brute_isomorphic, canonical_table, Dedup, ISO_BOUND};
pub use quotient::{collapse_quotient, QuotientMap};

use crate::error::{Error, Result};
use crate::subset::{SubsetMask, MASK_WIDTH};
use std::fmt;

#[derive(Clone)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<u8>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteSemigroup {}

impl std::hash::Hash for FiniteSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

/// Checks range and associativity of an `n x n` table and builds the semigroup.
///
/// On failure the first offending entry, or the lexicographically first
/// non-associative triple, is reported.
pub fn validate_table(order: usize, raw: &[Vec<usize>]) -> Result<FiniteSemigroup> {
    if order == 0 {
        return Err(Error::EmptySemigroup);
    }
    if order > MASK_WIDTH {
        return Err(Error::Overflow {
            order,
            width: MASK_WIDTH,
        });
    }
    if raw.len() != order {
        return Err(Error::RaggedTable {
            rows: order,
            row: raw.len(),
            len: 0,
        });
    }
    let mut table = Vec::with_capacity(order * order);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != order {
            return Err(Error::RaggedTable {
                rows: order,
                row: i,
                len: row.len(),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= order {
                return Err(Error::EntryOutOfRange {
                    row: i,
                    col: j,
                    value: v,
                    order,
                });
            }
            table.push(v as u8);
        }
    }
    let s = FiniteSemigroup {
        order,
        table,
        labels: None,
    };
    if let Some((a, b, c)) = s.first_non_associative() {
        return Err(Error::NotAssociative { a, b, c });
    }
    Ok(s)
}

impl FiniteSemigroup {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        validate_table(rows.len(), rows)
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|i| (0..order).map(|j| f(i, j)).collect())
            .collect();
        validate_table(order, &rows)
    }

    /// Builds from a flat row-major table that is already known to be associative.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<u8>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        FiniteSemigroup {
            order,
            table,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::SizeMismatch {
                left: labels.len(),
                right: self.order,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn row(&self, a: usize) -> &[u8] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn flat_table(&self) -> &[u8] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.row(a).iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.order)
    }

    pub fn empty_set(&self) -> SubsetMask {
        SubsetMask::empty(self.order)
    }

    pub fn first_non_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// `sK = {sk : k ∈ K}`.
    pub fn left_translate(&self, s: usize, set: SubsetMask) -> SubsetMask {
        let row = self.row(s);
        let bits = set.iter().fold(0u32, |acc, k| acc | 1 << row[k]);
        SubsetMask::from_bits_truncate(self.order, bits)
    }

    /// `Fs = {fs : f ∈ F}`.
    pub fn right_translate(&self, set: SubsetMask, s: usize) -> SubsetMask {
        let bits = set.iter().fold(0u32, |acc, f| acc | 1 << self.mul(f, s));
        SubsetMask::from_bits_truncate(self.order, bits)
    }

    /// `s⁻¹A = {t : st ∈ A}`.
    pub fn left_preimage(&self, s: usize, a: SubsetMask) -> SubsetMask {
        let row = self.row(s);
        let bits = (0..self.order)
            .filter(|&t| a.contains(row[t] as usize))
            .fold(0u32, |acc, t| acc | 1 << t);
        SubsetMask::from_bits_truncate(self.order, bits)
    }

    /// `As⁻¹ = {x : xs ∈ A}`.
    pub fn right_preimage(&self, a: SubsetMask, s: usize) -> SubsetMask {
        let bits = (0..self.order)
            .filter(|&x| a.contains(self.mul(x, s)))
            .fold(0u32, |acc, x| acc | 1 << x);
        SubsetMask::from_bits_truncate(self.order, bits)
    }

    /// `AB = {ab : a ∈ A, b ∈ B}`.
    pub fn set_product(&self, a: SubsetMask, b: SubsetMask) -> SubsetMask {
        let mut bits = 0u32;
        for x in a {
            for y in b {
                bits |= 1 << self.mul(x, y);
            }
        }
        SubsetMask::from_bits_truncate(self.order, bits)
    }

    /// The opposite semigroup `x ∘ y = y · x`.
    pub fn transpose(&self) -> FiniteSemigroup {
        let n = self.order;
        let table = (0..n * n)
            .map(|k| self.table[(k % n) * n + k / n])
            .collect();
        FiniteSemigroup {
            order: n,
            table,
            labels: self.labels.clone(),
        }
    }

    /// The subsemigroup on `set`, relabelled in increasing order, or `None` if
    /// `set` is empty or not closed under multiplication.
    pub fn restrict(&self, set: SubsetMask) -> Option<FiniteSemigroup> {
        if set.is_empty() || !self.set_product(set, set).is_subset(set) {
            return None;
        }
        let elems: Vec<usize> = set.iter().collect();
        let mut index = vec![usize::MAX; self.order];
        for (k, &x) in elems.iter().enumerate() {
            index[x] = k;
        }
        let m = elems.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in &elems {
            for &y in &elems {
                table.push(index[self.mul(x, y)] as u8);
            }
        }
        let labels = elems.iter().map(|&x| self.label(x)).collect();
        Some(FiniteSemigroup {
            order: m,
            table,
            labels: Some(labels),
        })
    }

    /// Applies a relabelling `x ↦ perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteSemigroup {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u8;
            }
        }
        FiniteSemigroup {
            order: n,
            table,
            labels: None,
        }
    }
}

/// `S × T` with `(s,t)(s',t') = (ss', tt')`; element `(i, j)` has index `i·|T| + j`.
pub fn direct_product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Result<FiniteSemigroup> {
    let (n, m) = (s.order(), t.order());
    let order = n * m;
    if order > MASK_WIDTH {
        return Err(Error::Overflow {
            order,
            width: MASK_WIDTH,
        });
    }
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x / m, x % m);
        for y in 0..order {
            let (k, l) = (y / m, y % m);
            table.push((s.mul(i, k) * m + t.mul(j, l)) as u8);
        }
    }
    let labels = (0..order)
        .map(|x| format!("({},{})", s.label(x / m), t.label(x % m)))
        .collect();
    let p = FiniteSemigroup {
        order,
        table,
        labels: Some(labels),
    };
    debug_assert!(p.first_non_associative().is_none());
    Ok(p)
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSemigroup({}; ", self.order)?;
        for a in 0..self.order {
            if a > 0 {
                write!(f, "|")?;
            }
            for &v in self.row(a) {
                write!(f, "{v:x}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_binary_tables(n: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
        let cells = n * n;
        let total = n.pow(cells as u32);
        (0..total).map(move |mut code| {
            let mut rows = vec![vec![0; n]; n];
            for k in 0..cells {
                rows[k / n][k % n] = code % n;
                code /= n;
            }
            rows
        })
    }

    #[test]
    fn right_and_left_zero_are_valid() {
        assert!(FiniteSemigroup::from_fn(2, |_, j| j).is_ok());
        assert!(FiniteSemigroup::from_fn(2, |i, _| i).is_ok());
    }

    #[test]
    fn semilattice_and_group_are_valid() {
        assert!(FiniteSemigroup::from_rows(&[vec![0, 0], vec![0, 1]]).is_ok());
        assert!(FiniteSemigroup::from_rows(&[vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn rejects_non_associative_with_first_triple() {
        // (0·0)·1 = 1·1 = 0 but 0·(0·1) = 0·0 = 1
        let err = FiniteSemigroup::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, Error::NotAssociative { a: 0, b: 0, c: 1 });
    }

    #[test]
    fn rejects_out_of_range_entries() {
        let err = FiniteSemigroup::from_rows(&[vec![0, 2], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::EntryOutOfRange { row: 0, col: 1, value: 2, .. }));
    }

    #[test]
    fn order_two_filter_accepts_eight() {
        let ok = all_binary_tables(2)
            .filter(|rows| validate_table(2, rows).is_ok())
            .count();
        assert_eq!(ok, 8);
    }

    #[test]
    fn klein_group_from_product() {
        let c2 = cyclic_group(2);
        let v = direct_product(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        for x in 0..4 {
            assert_eq!(v.mul(x, x), 0);
            for y in 0..4 {
                assert_eq!(v.mul(x, y), x ^ y);
            }
        }
    }

    #[test]
    fn product_with_right_zero() {
        let p = direct_product(&cyclic_group(2), &right_zero(2)).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let (g, _z) = (x / 2, x % 2);
                let (h, w) = (y / 2, y % 2);
                assert_eq!(p.mul(x, y), ((g + h) % 2) * 2 + w);
            }
        }
    }

    #[test]
    fn product_orders_multiply_and_stay_associative() {
        let p = direct_product(&monogenic(2, 2), &cyclic_group(5)).unwrap();
        assert_eq!(p.order(), 15);
        assert!(p.first_non_associative().is_none());
        assert!(matches!(
            direct_product(&cyclic_group(6), &cyclic_group(6)),
            Err(Error::Overflow { order: 36, .. })
        ));
    }

    #[test]
    fn translations_compose() {
        let s = direct_product(&cyclic_group(2), &right_zero(2)).unwrap();
        let n = s.order();
        for a in 0..n {
            for b in 0..n {
                let ab = s.mul(a, b);
                for x in 0..n {
                    // λ_a ∘ λ_b = λ_ab and ρ_a ∘ ρ_b = ρ_ba
                    assert_eq!(s.mul(a, s.mul(b, x)), s.mul(ab, x));
                    assert_eq!(s.mul(s.mul(x, b), a), s.mul(x, s.mul(b, a)));
                }
            }
        }
    }

    #[test]
    fn preimages() {
        let lz = left_zero(2);
        let a = SubsetMask::singleton(2, 0);
        // xs = x in a left-zero semigroup, so As⁻¹ = A
        assert_eq!(lz.right_preimage(a, 1), a);
        assert_eq!(lz.left_preimage(0, a), lz.full());
        assert!(lz.left_preimage(1, a).is_empty());
    }

    #[test]
    fn restrict_requires_closure() {
        let sl = chain_semilattice(3);
        assert!(sl.restrict(SubsetMask::from_indices(3, [0, 2]).unwrap()).is_some());
        let c3 = cyclic_group(3);
        assert!(c3.restrict(SubsetMask::from_indices(3, [1]).unwrap()).is_none());
    }
}
