//! Small helpers around [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;

pub fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> BigRational {
    BigRational::zero()
}

pub fn one() -> BigRational {
    BigRational::one()
}

/// `p/q` with the denominator always printed, `1/1` included.
pub fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Exact comparison of two small fractions `a/b` and `c/d` with positive denominators.
pub(crate) fn cmp_frac(a: usize, b: usize, c: usize, d: usize) -> Ordering {
    (a as u64 * d as u64).cmp(&(c as u64 * b as u64))
}

/// Running maximum of small fractions; `None` until the first candidate.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct FracMax {
    best: Option<(usize, usize)>,
}

impl FracMax {
    /// Returns true if the candidate strictly improved the maximum.
    pub(crate) fn offer(&mut self, num: usize, den: usize) -> bool {
        match self.best {
            Some((n, d)) if cmp_frac(num, den, n, d) != Ordering::Greater => false,
            _ => {
                self.best = Some((num, den));
                true
            }
        }
    }

    pub(crate) fn get(&self) -> Option<(usize, usize)> {
        self.best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(fmt_ratio(&ratio(2, 4)), "1/2");
        assert_eq!(fmt_ratio(&ratio(3, 3)), "1/1");
        assert_eq!(fmt_ratio(&ratio(0, 5)), "0/1");
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_ratio("2/6"), Some(ratio(1, 3)));
        assert_eq!(parse_ratio("1"), Some(one()));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(parse_ratio("x"), None);
    }

    #[test]
    fn frac_max_keeps_first_on_ties() {
        let mut m = FracMax::default();
        assert!(m.offer(1, 2));
        assert!(!m.offer(2, 4));
        assert!(m.offer(2, 3));
        assert_eq!(m.get(), Some((2, 3)));
    }
}
