//! Structured random semigroups for orders past the exhaustive range.
//!
//! Uniform associative tables are vanishingly rare, so samples are built from
//! constructions instead: products of small census pieces, bands, cyclic and
//! monogenic semigroups, adjoined identities and zeros, and semilattices,
//! then relabelled at random. The distribution is not uniform.

use super::enumerate::enumerate_semigroups;
use crate::error::{Error, Result};
use crate::semigroup::*;
use crate::subset::MASK_WIDTH;
use rand::seq::SliceRandom;
use rand::Rng;

/// Largest order drawn from the census instead of being constructed.
const CENSUS_MAX: usize = 4;

pub struct Sampler {
    census: Vec<Vec<FiniteSemigroup>>,
}

impl Default for Sampler {
    fn default() -> Self {
        Self::new()
    }
}

impl Sampler {
    pub fn new() -> Self {
        let census = (0..=CENSUS_MAX)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    enumerate_semigroups(n, Dedup::Iso).expect("census order is in range")
                }
            })
            .collect();
        Sampler { census }
    }

    /// A random semigroup of exactly `order` elements.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, order: usize) -> Result<FiniteSemigroup> {
        if order == 0 {
            return Err(Error::EmptySemigroup);
        }
        if order > MASK_WIDTH {
            return Err(Error::Overflow {
                order,
                width: MASK_WIDTH,
            });
        }
        let s = self.build(rng, order);
        let mut perm: Vec<usize> = (0..order).collect();
        perm.shuffle(rng);
        Ok(s.relabel(&perm))
    }

    fn build<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> FiniteSemigroup {
        if n <= CENSUS_MAX && rng.random_bool(0.5) {
            let pieces = &self.census[n];
            return pieces[rng.random_range(0..pieces.len())].clone();
        }
        let divisors: Vec<usize> = (2..n).filter(|&d| n.is_multiple_of(d)).collect();
        loop {
            let s = match rng.random_range(0..10) {
                0 => cyclic_group(n),
                1 => left_zero(n),
                2 => right_zero(n),
                3 => chain_semilattice(n),
                4 if !divisors.is_empty() => {
                    let r = divisors[rng.random_range(0..divisors.len())];
                    rectangular_band(r, n / r)
                }
                5 => {
                    let index = rng.random_range(1..=n);
                    monogenic(index, n + 1 - index)
                }
                6 if n >= 2 => adjoin_identity(&self.build(rng, n - 1)),
                7 if n >= 2 => adjoin_zero(&self.build(rng, n - 1)),
                8 | 9 if !divisors.is_empty() => {
                    let a = divisors[rng.random_range(0..divisors.len())];
                    let left = self.build(rng, a);
                    let right = self.build(rng, n / a);
                    direct_product(&left, &right).expect("order fits the mask")
                }
                _ => continue,
            };
            return s;
        }
    }
}
