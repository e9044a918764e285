//! Følner and translation densities on finite semigroups.
//!
//! For a finite semigroup the strong Følner condition reduces to the
//! existence of a nonempty `K` with `sK = K` for every `s`: with `H = S` and
//! `ε < 1/|S|` the defect `|K ∖ sK|` must vanish, and `|sK| ≤ |K|` then forces
//! equality. The union of all such sets is the *invariant core*; every
//! invariant set is a union of orbits of the permutation group generated by
//! the left translations restricted to the core. Those orbits are the *atoms*.
//!
//! Følner density is the best proportion of `A` inside an invariant set. The
//! proportion over a union of atoms is a weighted average of atom proportions,
//! so the maximum is attained at an atom. Translation density is computed both
//! straight from its definition and as `max_s |As⁻¹ ∩ K| / |K|` with `K` the
//! core, which is exact because `K` is invariant for every `(H, ε)`.
//!
//! FC (`|sK ∖ K|` small) holds for every finite semigroup with `K = S`, so it
//! has no operation here.

use crate::error::{Error, Result};
use crate::lp::{banach_density, MeanVector};
use crate::ratio::{cmp_frac, fmt_ratio, ratio, FracMax};
use crate::semigroup::{kernel, FiniteSemigroup};
use crate::subset::SubsetMask;
use num_rational::BigRational;
use std::cmp::Ordering;

/// Default bound on the order for the definition-level oracles.
pub const ORACLE_BOUND: usize = 16;

/// The maximal set `K` with `sK = K` for all `s`, and its orbit partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCore {
    pub core: SubsetMask,
    /// Orbits of the left-translation action on the core, ordered by least element.
    pub atoms: Vec<SubsetMask>,
}

/// Greatest fixed point: start from `S` and delete `y` whenever some `s` has
/// `sy ∉ K` or `y ∉ sK`.
pub fn invariant_core(s: &FiniteSemigroup) -> InvariantCore {
    let mut k = s.full();
    loop {
        let mut next = k;
        for y in k {
            let escapes = s.elements().any(|t| !k.contains(s.mul(t, y)));
            let uncovered = s.elements().any(|t| !s.left_translate(t, k).contains(y));
            if escapes || uncovered {
                next.remove(y);
            }
        }
        if next == k {
            break;
        }
        k = next;
    }
    InvariantCore {
        core: k,
        atoms: orbits(s, k),
    }
}

fn orbits(s: &FiniteSemigroup, core: SubsetMask) -> Vec<SubsetMask> {
    let n = s.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // each λ_t permutes the core, so the components of the graph x ~ tx are the orbits
    for x in core {
        for t in s.elements() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, s.mul(t, x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut atoms: Vec<SubsetMask> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for x in core {
        let r = find(&mut parent, x);
        if root_slot[r] == usize::MAX {
            root_slot[r] = atoms.len();
            atoms.push(SubsetMask::empty(n));
        }
        atoms[root_slot[r]].insert(x);
    }
    atoms
}

pub fn satisfies_sfc(s: &FiniteSemigroup) -> bool {
    !invariant_core(s).core.is_empty()
}

impl InvariantCore {
    /// `d(A) = max_B |A ∩ B| / |B|` over atoms `B`, with the lowest maximizing atom.
    pub fn folner_density(&self, a: SubsetMask) -> Result<(BigRational, SubsetMask)> {
        let mut best = FracMax::default();
        let mut atom = None;
        for &b in &self.atoms {
            if best.offer(a.intersection(b).len(), b.len()) {
                atom = Some(b);
            }
        }
        match (best.get(), atom) {
            (Some((num, den)), Some(b)) => Ok((ratio(num, den), b)),
            _ => Err(Error::NoSfc),
        }
    }

    /// `max_s |As⁻¹ ∩ K| / |K|` with `K` the core; lowest maximizing `s`.
    pub fn translation_density(&self, s: &FiniteSemigroup, a: SubsetMask) -> Result<(BigRational, usize)> {
        if self.core.is_empty() {
            return Err(Error::NoSfc);
        }
        let k = self.core;
        let mut best = FracMax::default();
        let mut shift = 0;
        for t in s.elements() {
            if best.offer(s.right_preimage(a, t).intersection(k).len(), k.len()) {
                shift = t;
            }
        }
        let (num, den) = best.get().expect("semigroup is nonempty");
        Ok((ratio(num, den), shift))
    }
}

/// Følner density and the atom attaining it.
pub fn folner_density(s: &FiniteSemigroup, a: SubsetMask) -> Result<(BigRational, SubsetMask)> {
    invariant_core(s).folner_density(a)
}

/// All nonempty `K ⊆ S` with `sK = K` for every `s`, found by scanning every subset.
pub fn invariant_sets(s: &FiniteSemigroup, bound: usize) -> Result<Vec<SubsetMask>> {
    if s.order() > bound {
        return Err(Error::BoundExceeded {
            order: s.order(),
            bound,
        });
    }
    Ok(SubsetMask::all(s.order())
        .filter(|k| !k.is_empty())
        .filter(|&k| s.elements().all(|t| s.left_translate(t, k) == k))
        .collect())
}

/// Følner density straight from its finite form: the best ratio over every
/// invariant set, with no use of the atom decomposition.
pub fn folner_density_oracle(s: &FiniteSemigroup, a: SubsetMask, bound: usize) -> Result<BigRational> {
    max_ratio_over(&invariant_sets(s, bound)?, a)
}

/// Best ratio `|A ∩ K| / |K|` over a precomputed family of invariant sets.
pub fn max_ratio_over(sets: &[SubsetMask], a: SubsetMask) -> Result<BigRational> {
    let mut best = FracMax::default();
    for &k in sets {
        best.offer(a.intersection(k).len(), k.len());
    }
    best.get().map(|(n, d)| ratio(n, d)).ok_or(Error::NoSfc)
}

/// Translation density from its definition: the minimum over nonempty `F` of
/// `max_s |F ∩ As⁻¹| / |F|`.
pub fn translation_density_oracle(s: &FiniteSemigroup, a: SubsetMask, bound: usize) -> Result<BigRational> {
    translation_density_oracle_witness(s, a, bound).map(|(v, _)| v)
}

/// Like [`translation_density_oracle`], also returning the lowest minimizing `F`.
pub fn translation_density_oracle_witness(
    s: &FiniteSemigroup,
    a: SubsetMask,
    bound: usize,
) -> Result<(BigRational, SubsetMask)> {
    let n = s.order();
    if n > bound {
        return Err(Error::BoundExceeded { order: n, bound });
    }
    let columns: Vec<u32> = s.elements().map(|t| s.right_preimage(a, t).bits()).collect();
    let mut best: Option<(usize, usize, u32)> = None;
    for f in 1u32..1 << n {
        let size = f.count_ones() as usize;
        let hit = columns
            .iter()
            .map(|c| (c & f).count_ones() as usize)
            .max()
            .unwrap_or(0);
        let better = match best {
            None => true,
            Some((bn, bd, _)) => cmp_frac(hit, size, bn, bd) == Ordering::Less,
        };
        if better {
            best = Some((hit, size, f));
        }
    }
    let (num, den, f) = best.expect("nonempty semigroup has a nonempty F");
    Ok((ratio(num, den), SubsetMask::from_bits_truncate(n, f)))
}

/// Translation density through the invariant core.
pub fn translation_density_fast(s: &FiniteSemigroup, a: SubsetMask) -> Result<(BigRational, usize)> {
    invariant_core(s).translation_density(s, a)
}

/// `max_{s ∈ H} |F ∖ sF| / |F|`.
pub fn folner_defect(s: &FiniteSemigroup, f: SubsetMask, h: SubsetMask) -> Result<BigRational> {
    if f.is_empty() {
        return Err(Error::EmptyF);
    }
    let worst = h
        .iter()
        .map(|t| f.difference(s.left_translate(t, f)).len())
        .max()
        .unwrap_or(0);
    Ok(ratio(worst, f.len()))
}

/// `Δ(S) = {x : d({x}) > 0}`, which is the invariant core: a point outside the
/// core meets no atom, and every core point has positive share of its atom.
pub fn delta_set(s: &FiniteSemigroup) -> Result<SubsetMask> {
    let core = invariant_core(s).core;
    if core.is_empty() {
        Err(Error::NoSfc)
    } else {
        Ok(core)
    }
}

/// Finite form of piecewise syndeticity: `A` meets the kernel.
pub fn piecewise_syndetic(s: &FiniteSemigroup, a: SubsetMask) -> bool {
    a.intersects(kernel(s))
}

/// The three densities of one subset with their witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub d: BigRational,
    pub d_star: BigRational,
    pub d_t: BigRational,
    /// Atom attaining `d`.
    pub witness_orbit: SubsetMask,
    /// Left invariant mean attaining `d*`.
    pub witness_mean: MeanVector,
    /// Shift `s` maximizing `|As⁻¹ ∩ K|`.
    pub witness_shift: usize,
}

impl DensityReport {
    pub fn agree(&self) -> bool {
        self.d == self.d_star && self.d_star == self.d_t
    }

    /// Tab-separated `key value` lines.
    pub fn to_tsv(&self) -> String {
        format!(
            "d\t{}\nd_star\t{}\nd_t\t{}\nwitness_orbit\t{}\nwitness_shift\t{}\n",
            fmt_ratio(&self.d),
            fmt_ratio(&self.d_star),
            fmt_ratio(&self.d_t),
            self.witness_orbit.to_hex(),
            self.witness_shift
        )
    }
}

/// Computes `d`, `d*` and `d_t` (through the core) for `A`; needs SFC.
pub fn density_report(s: &FiniteSemigroup, a: SubsetMask) -> Result<DensityReport> {
    let core = invariant_core(s);
    let (d, witness_orbit) = core.folner_density(a)?;
    let (d_t, witness_shift) = core.translation_density(s, a)?;
    let (d_star, witness_mean) = banach_density(s, a)?;
    Ok(DensityReport {
        d,
        d_star,
        d_t,
        witness_orbit,
        witness_mean,
        witness_shift,
    })
}
