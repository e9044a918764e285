//! Depth-first enumeration of associative tables.

use crate::error::{Error, Result};
use crate::semigroup::iso::{is_canonical, permutations_with_inverses};
use crate::semigroup::{Dedup, FiniteSemigroup};
use rayon::prelude::*;

/// Largest order enumerated exhaustively.
pub const EXHAUSTIVE_MAX: usize = 5;

const UNSET: u8 = u8::MAX;

/// A resumable depth-first walk over row-major partial tables.
///
/// After each cell is placed, every triple whose four lookups are now all
/// defined and which uses the new cell is checked, so every associativity
/// triple is checked exactly when its last lookup is filled.
pub struct EnumeratorState {
    n: usize,
    table: Vec<u8>,
    pos: usize,
    start: usize,
    dedup: Dedup,
    perms: Vec<(Vec<usize>, Vec<usize>)>,
    done: bool,
    fresh: bool,
}

impl EnumeratorState {
    pub fn new(n: usize, dedup: Dedup) -> Result<Self> {
        Self::with_prefix(n, dedup, &[])
    }

    /// Walks only tables whose first cells equal `prefix`.
    pub fn with_prefix(n: usize, dedup: Dedup, prefix: &[u8]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySemigroup);
        }
        if n > EXHAUSTIVE_MAX {
            return Err(Error::OrderTooLarge {
                order: n,
                max: EXHAUSTIVE_MAX,
            });
        }
        if prefix.len() > n * n || prefix.iter().any(|&v| v as usize >= n) {
            return Err(Error::PreconditionViolated("prefix does not fit the table".into()));
        }
        let mut table = vec![UNSET; n * n];
        let mut done = false;
        for (k, &v) in prefix.iter().enumerate() {
            table[k] = v;
            if !consistent(&table, n, k) {
                done = true;
            }
        }
        Ok(EnumeratorState {
            n,
            table,
            pos: prefix.len(),
            start: prefix.len(),
            dedup,
            perms: permutations_with_inverses(n),
            done,
            fresh: true,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn dedup(&self) -> Dedup {
        self.dedup
    }

    /// Advances to the next complete associative table (canonical or not).
    fn advance(&mut self) -> bool {
        let cells = self.n * self.n;
        if self.done {
            return false;
        }
        if self.pos == cells {
            if self.fresh {
                // the prefix already fills the table
                self.fresh = false;
                return true;
            }
            if !self.retreat() {
                return false;
            }
        }
        self.fresh = false;
        loop {
            let pos = self.pos;
            let from = match self.table[pos] {
                UNSET => 0,
                v => v + 1,
            };
            let mut placed = false;
            for v in from..self.n as u8 {
                self.table[pos] = v;
                if consistent(&self.table, self.n, pos) {
                    placed = true;
                    break;
                }
            }
            if !placed {
                self.table[pos] = UNSET;
                if !self.retreat() {
                    return false;
                }
                continue;
            }
            self.pos += 1;
            if self.pos == cells {
                return true;
            }
        }
    }

    fn retreat(&mut self) -> bool {
        if self.pos == self.start {
            self.done = true;
            return false;
        }
        self.pos -= 1;
        true
    }
}

impl Iterator for EnumeratorState {
    type Item = FiniteSemigroup;

    fn next(&mut self) -> Option<FiniteSemigroup> {
        while self.advance() {
            if is_canonical(&self.table, self.n, &self.perms, self.dedup) {
                return Some(FiniteSemigroup::from_flat_unchecked(self.n, self.table.clone()));
            }
        }
        None
    }
}

fn get(table: &[u8], n: usize, a: usize, b: usize) -> Option<usize> {
    match table[a * n + b] {
        UNSET => None,
        v => Some(v as usize),
    }
}

/// `(ab)c = a(bc)` or some lookup is still open.
fn triple_ok(table: &[u8], n: usize, a: usize, b: usize, c: usize) -> bool {
    let (Some(ab), Some(bc)) = (get(table, n, a, b), get(table, n, b, c)) else {
        return true;
    };
    match (get(table, n, ab, c), get(table, n, a, bc)) {
        (Some(l), Some(r)) => l == r,
        _ => true,
    }
}

/// Checks every triple that looks up cell `pos`.
fn consistent(table: &[u8], n: usize, pos: usize) -> bool {
    let (i, j) = (pos / n, pos % n);
    // (i·j)·c and i·(j·c)
    if !(0..n).all(|c| triple_ok(table, n, i, j, c)) {
        return false;
    }
    // a·(i·j) = (a·i)·j
    if !(0..n).all(|a| triple_ok(table, n, a, i, j)) {
        return false;
    }
    // cell read as (ab)·c with ab = i, c = j, or as a·(bc) with a = i, bc = j
    for x in 0..n {
        for y in 0..n {
            match get(table, n, x, y) {
                Some(v) if v == i && !triple_ok(table, n, x, y, j) => return false,
                Some(v) if v == j && !triple_ok(table, n, i, x, y) => return false,
                _ => {}
            }
        }
    }
    true
}

/// Every associative table of order `n`, one per class under `dedup`, in
/// lexicographic order of the row-major table.
pub fn enumerate_semigroups(n: usize, dedup: Dedup) -> Result<Vec<FiniteSemigroup>> {
    Ok(EnumeratorState::new(n, dedup)?.collect())
}

/// Same output as [`enumerate_semigroups`], computed on `jobs` threads by
/// splitting on the first row.
pub fn enumerate_semigroups_par(n: usize, dedup: Dedup, jobs: usize) -> Result<Vec<FiniteSemigroup>> {
    EnumeratorState::new(n, dedup)?;
    let mut prefixes = vec![Vec::new()];
    for _ in 0..n {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p: Vec<u8>| {
                (0..n as u8).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    let work = || -> Result<Vec<FiniteSemigroup>> {
        let parts = prefixes
            .par_iter()
            .map(|p| EnumeratorState::with_prefix(n, dedup, p).map(|e| e.collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.into_iter().flatten().collect())
    };
    in_pool(jobs, work)
}

/// Runs `f` on a dedicated pool with `jobs` workers.
pub(crate) fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts = |dedup| -> Vec<usize> {
            (1..=3)
                .map(|n| enumerate_semigroups(n, dedup).unwrap().len())
                .collect()
        };
        assert_eq!(counts(Dedup::None), vec![1, 8, 113]);
        assert_eq!(counts(Dedup::Iso), vec![1, 5, 24]);
        assert_eq!(counts(Dedup::IsoAnti), vec![1, 4, 18]);
    }

    #[test]
    fn emitted_tables_are_associative_and_sorted() {
        let all = enumerate_semigroups(3, Dedup::None).unwrap();
        assert!(all.iter().all(|s| s.first_non_associative().is_none()));
        assert!(all.windows(2).all(|w| w[0].flat_table() < w[1].flat_table()));
    }

    #[test]
    fn parallel_matches_sequential() {
        for dedup in [Dedup::None, Dedup::Iso] {
            let seq = enumerate_semigroups(3, dedup).unwrap();
            assert_eq!(enumerate_semigroups_par(3, dedup, 3).unwrap(), seq);
        }
        assert_eq!(enumerate_semigroups_par(1, Dedup::Iso, 2).unwrap().len(), 1);
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(enumerate_semigroups(6, Dedup::Iso), Err(Error::OrderTooLarge { .. })));
        assert!(matches!(enumerate_semigroups(0, Dedup::Iso), Err(Error::EmptySemigroup)));
    }
}
