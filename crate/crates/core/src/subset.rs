//! Bit-mask subsets of a finite semigroup.

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported semigroup order; subsets are stored in a `u32`.
pub const MASK_WIDTH: usize = 32;

/// A subset of `{0, .., order-1}`. No bit at or above `order` is ever set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u32,
    order: u8,
}

fn full_bits(order: usize) -> u32 {
    if order >= 32 {
        u32::MAX
    } else {
        (1u32 << order) - 1
    }
}

impl SubsetMask {
    pub fn empty(order: usize) -> Self {
        debug_assert!(order <= MASK_WIDTH);
        SubsetMask {
            bits: 0,
            order: order as u8,
        }
    }

    pub fn full(order: usize) -> Self {
        SubsetMask {
            bits: full_bits(order),
            order: order as u8,
        }
    }

    pub fn singleton(order: usize, x: usize) -> Self {
        assert!(x < order, "element {x} out of range for order {order}");
        SubsetMask {
            bits: 1 << x,
            order: order as u8,
        }
    }

    pub fn from_bits(order: usize, bits: u32) -> Result<Self> {
        if order > MASK_WIDTH {
            return Err(Error::Overflow {
                order,
                width: MASK_WIDTH,
            });
        }
        if bits & !full_bits(order) != 0 {
            return Err(Error::PreconditionViolated(format!(
                "mask {bits:#x} has bits beyond order {order}"
            )));
        }
        Ok(SubsetMask {
            bits,
            order: order as u8,
        })
    }

    /// Masks off any stray high bits.
    pub(crate) fn from_bits_truncate(order: usize, bits: u32) -> Self {
        SubsetMask {
            bits: bits & full_bits(order),
            order: order as u8,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(order: usize, items: I) -> Result<Self> {
        let mut m = Self::empty(order);
        for x in items {
            if x >= order {
                return Err(Error::PreconditionViolated(format!(
                    "element {x} out of range for order {order}"
                )));
            }
            m.bits |= 1 << x;
        }
        Ok(m)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn order(self) -> usize {
        self.order as usize
    }

    pub fn contains(self, x: usize) -> bool {
        x < self.order() && self.bits >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.order());
        self.bits |= 1 << x;
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.order() {
            self.bits &= !(1 << x);
        }
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == full_bits(self.order())
    }

    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        SubsetMask {
            bits: self.bits | other.bits,
            ..self
        }
    }

    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        SubsetMask {
            bits: self.bits & other.bits,
            ..self
        }
    }

    pub fn difference(self, other: Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        SubsetMask {
            bits: self.bits & !other.bits,
            ..self
        }
    }

    pub fn complement(self) -> Self {
        SubsetMask {
            bits: !self.bits & full_bits(self.order()),
            ..self
        }
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.bits & other.bits != 0
    }

    /// Lowest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements { bits: self.bits }
    }

    /// All `2^order` subsets in increasing mask order.
    pub fn all(order: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(order < 32, "exhaustive subset iteration needs order < 32");
        (0u32..1 << order).map(move |bits| SubsetMask {
            bits,
            order: order as u8,
        })
    }

    /// `@<hex>` form used on the command line and in reports.
    pub fn to_hex(self) -> String {
        format!("@{:x}", self.bits)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the elements of a mask in increasing order.
#[derive(Clone)]
pub struct Elements {
    bits: u32,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let x = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl IntoIterator for SubsetMask {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_stray_bits() {
        assert!(SubsetMask::from_bits(3, 0b1000).is_err());
        assert!(SubsetMask::from_bits(3, 0b111).is_ok());
        assert!(SubsetMask::from_bits(33, 0).is_err());
    }

    #[test]
    fn full_width_masks() {
        let full = SubsetMask::full(32);
        assert_eq!(full.len(), 32);
        assert!(full.complement().is_empty());
        assert!(full.contains(31));
    }

    #[test]
    fn hex_and_display() {
        let m = SubsetMask::from_indices(8, [0, 2, 5]).unwrap();
        assert_eq!(m.to_hex(), "@25");
        assert_eq!(m.to_string(), "{0,2,5}");
    }

    proptest! {
        #[test]
        fn complement_partitions(order in 1usize..=32, raw in any::<u32>()) {
            let a = SubsetMask::from_bits_truncate(order, raw);
            let c = a.complement();
            prop_assert!(!a.intersects(c));
            prop_assert!(a.union(c).is_full());
            prop_assert_eq!(a.len() + c.len(), order);
            prop_assert_eq!(a.iter().count(), a.len());
            prop_assert!(a.iter().all(|x| x < order));
        }
    }
}
