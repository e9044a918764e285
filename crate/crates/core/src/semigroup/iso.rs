//! Isomorphism testing and canonical forms for small tables.

use super::FiniteSemigroup;
use crate::error::{Error, Result};
use std::cmp::Ordering;

/// Largest order accepted by [`brute_isomorphic`].
pub const ISO_BOUND: usize = 8;

/// Deduplication mode for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dedup {
    /// Every labelled table.
    None,
    /// One table per isomorphism class.
    Iso,
    /// One table per class under isomorphism and anti-isomorphism.
    IsoAnti,
}

impl std::fmt::Display for Dedup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Dedup::None => "none",
            Dedup::Iso => "iso",
            Dedup::IsoAnti => "iso+anti",
        })
    }
}

impl std::str::FromStr for Dedup {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(Dedup::None),
            "iso" => Ok(Dedup::Iso),
            "iso+anti" | "iso-anti" => Ok(Dedup::IsoAnti),
            other => Err(format!("unknown dedup mode `{other}`")),
        }
    }
}

/// Whether some bijection `S → T` is a homomorphism (or, with `allow_anti`,
/// an anti-homomorphism).
pub fn brute_isomorphic(s: &FiniteSemigroup, t: &FiniteSemigroup, allow_anti: bool) -> Result<bool> {
    if s.order() != t.order() {
        return Err(Error::SizeMismatch {
            left: s.order(),
            right: t.order(),
        });
    }
    if s.order() > ISO_BOUND {
        return Err(Error::BoundExceeded {
            order: s.order(),
            bound: ISO_BOUND,
        });
    }
    if search_bijection(s, t, false) {
        return Ok(true);
    }
    Ok(allow_anti && search_bijection(s, t, true))
}

fn search_bijection(s: &FiniteSemigroup, t: &FiniteSemigroup, anti: bool) -> bool {
    let n = s.order();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(s, t, anti, 0, &mut image, &mut used)
}

fn consistent(s: &FiniteSemigroup, t: &FiniteSemigroup, anti: bool, k: usize, image: &[usize]) -> bool {
    // check every product a·b with a, b ≤ k whose value is also mapped
    for a in 0..=k {
        for b in 0..=k {
            if a != k && b != k {
                continue;
            }
            let ab = s.mul(a, b);
            if ab > k {
                continue;
            }
            let expect = if anti {
                t.mul(image[b], image[a])
            } else {
                t.mul(image[a], image[b])
            };
            if image[ab] != expect {
                return false;
            }
        }
    }
    true
}

fn extend(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    anti: bool,
    k: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = s.order();
    if k == n {
        return true;
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        image[k] = y;
        used[y] = true;
        if consistent(s, t, anti, k, image) && extend(s, t, anti, k + 1, image, used) {
            return true;
        }
        used[y] = false;
    }
    image[k] = usize::MAX;
    false
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// Compares `table` relabelled by `perm` (and optionally transposed) against
/// `best`, stopping at the first difference.
fn cmp_relabelled(table: &[u8], n: usize, perm: &[usize], inv: &[usize], transpose: bool, best: &[u8]) -> Ordering {
    for i in 0..n {
        for j in 0..n {
            let (a, b) = if transpose {
                (inv[j], inv[i])
            } else {
                (inv[i], inv[j])
            };
            let v = perm[table[a * n + b] as usize] as u8;
            match v.cmp(&best[i * n + j]) {
                Ordering::Equal => {}
                other => return other,
            }
        }
    }
    Ordering::Equal
}

fn relabelled(table: &[u8], n: usize, perm: &[usize], inv: &[usize], transpose: bool) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = if transpose {
                (inv[j], inv[i])
            } else {
                (inv[i], inv[j])
            };
            out[i * n + j] = perm[table[a * n + b] as usize] as u8;
        }
    }
    out
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Lexicographically least row-major table over all relabellings (and
/// transposes in [`Dedup::IsoAnti`] mode).
pub fn canonical_table(s: &FiniteSemigroup, dedup: Dedup) -> Vec<u8> {
    let n = s.order();
    let table = s.flat_table();
    let mut best = table.to_vec();
    if dedup == Dedup::None {
        return best;
    }
    let transposes: &[bool] = if dedup == Dedup::IsoAnti {
        &[false, true]
    } else {
        &[false]
    };
    for perm in permutations(n) {
        let inv = inverse(&perm);
        for &tr in transposes {
            if cmp_relabelled(table, n, &perm, &inv, tr, &best) == Ordering::Less {
                best = relabelled(table, n, &perm, &inv, tr);
            }
        }
    }
    best
}

/// Whether the table is already its own canonical form; `perms` must be
/// `permutations(n)` paired with inverses.
pub(crate) fn is_canonical(table: &[u8], n: usize, perms: &[(Vec<usize>, Vec<usize>)], dedup: Dedup) -> bool {
    if dedup == Dedup::None {
        return true;
    }
    let anti = dedup == Dedup::IsoAnti;
    perms.iter().all(|(perm, inv)| {
        cmp_relabelled(table, n, perm, inv, false, table) != Ordering::Less
            && (!anti || cmp_relabelled(table, n, perm, inv, true, table) != Ordering::Less)
    })
}

pub(crate) fn permutations_with_inverses(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    permutations(n)
        .into_iter()
        .map(|p| {
            let inv = inverse(&p);
            (p, inv)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::*;

    #[test]
    fn left_and_right_zero_are_anti_isomorphic_only() {
        let (rz, lz) = (right_zero(2), left_zero(2));
        assert_eq!(brute_isomorphic(&rz, &lz, false), Ok(false));
        assert_eq!(brute_isomorphic(&rz, &lz, true), Ok(true));
        let c2 = cyclic_group(2);
        assert_eq!(brute_isomorphic(&c2, &c2, false), Ok(true));
    }

    #[test]
    fn bounds_and_sizes() {
        assert!(matches!(
            brute_isomorphic(&cyclic_group(2), &cyclic_group(3), false),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(
            brute_isomorphic(&cyclic_group(9), &cyclic_group(9), false),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn relabelling_preserves_isomorphism_class() {
        let s = adjoin_identity(&rectangular_band(1, 3));
        let perm = [2, 0, 3, 1];
        let r = s.relabel(&perm);
        assert_eq!(brute_isomorphic(&s, &r, false), Ok(true));
        assert_eq!(canonical_table(&s, Dedup::Iso), canonical_table(&r, Dedup::Iso));
    }

    #[test]
    fn klein_group_not_cyclic() {
        let v = direct_product(&cyclic_group(2), &cyclic_group(2)).unwrap();
        assert_eq!(brute_isomorphic(&v, &cyclic_group(4), true), Ok(false));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn canonical_identifies_transposes_in_anti_mode() {
        let (rz, lz) = (right_zero(3), left_zero(3));
        assert_ne!(canonical_table(&rz, Dedup::Iso), canonical_table(&lz, Dedup::Iso));
        assert_eq!(canonical_table(&rz, Dedup::IsoAnti), canonical_table(&lz, Dedup::IsoAnti));
    }
}
