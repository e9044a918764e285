//! Finite windows onto a few infinite semigroups.
//!
//! Elements are canonical `u64` keys: a bit-mask for finite subsets of
//! `{1, 2, …}` under union (bit `i − 1` stands for `i`), a marker bit followed
//! by letters for words, and the integer itself for `(ℕ, +)`.

use crate::densities::folner_density;
use crate::error::{Error, Result};
use crate::ratio::ratio;
use crate::semigroup::{union_semilattice, FiniteSemigroup};
use crate::subset::SubsetMask;
use num_rational::BigRational;
use std::collections::BTreeSet;

/// A finitely generated semigroup with canonical integer keys.
pub trait FgSemigroup: Sync {
    fn name(&self) -> &'static str;
    fn multiply(&self, a: u64, b: u64) -> u64;
    fn generators(&self) -> Vec<u64>;
    fn decode(&self, key: u64) -> String;

    /// All products of at most `len` generators.
    fn ball(&self, len: usize) -> BTreeSet<u64> {
        let gens = self.generators();
        let mut out: BTreeSet<u64> = BTreeSet::new();
        let mut level: BTreeSet<u64> = gens.iter().copied().collect();
        for _ in 0..len {
            out.extend(level.iter().copied());
            level = level
                .iter()
                .flat_map(|&x| gens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.multiply(x, g))
                .filter(|y| !out.contains(y))
                .collect();
        }
        out
    }
}

/// Finite nonempty subsets of `{1, 2, …}` under union, generated by `{1}, …, {g}`.
pub struct PfN {
    pub generators: u32,
}

impl FgSemigroup for PfN {
    fn name(&self) -> &'static str {
        "pfn"
    }

    fn multiply(&self, a: u64, b: u64) -> u64 {
        a | b
    }

    fn generators(&self) -> Vec<u64> {
        (0..self.generators.min(64)).map(|i| 1u64 << i).collect()
    }

    fn decode(&self, key: u64) -> String {
        let items: Vec<String> = (0..64).filter(|i| key >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", items.join(","))
    }
}

/// The free semigroup on one or two letters (`a`, `b`).
pub struct FreeSemigroup {
    pub alphabet: u32,
}

/// Key of a word: a leading marker bit, then one bit per letter (`b` = 1),
/// first letter most significant.
fn word_len(key: u64) -> u32 {
    63 - key.leading_zeros()
}

impl FreeSemigroup {
    pub fn word(&self, text: &str) -> Option<u64> {
        if text.is_empty() || text.len() > 63 {
            return None;
        }
        let mut key = 1u64;
        for ch in text.chars() {
            let bit = match ch {
                'a' => 0,
                'b' if self.alphabet >= 2 => 1,
                _ => return None,
            };
            key = key << 1 | bit;
        }
        Some(key)
    }

    /// The first letter, `0` for `a`.
    pub fn first_letter(key: u64) -> u64 {
        key >> (word_len(key) - 1) & 1
    }
}

impl FgSemigroup for FreeSemigroup {
    fn name(&self) -> &'static str {
        "free"
    }

    fn multiply(&self, a: u64, b: u64) -> u64 {
        let lb = word_len(b);
        assert!(word_len(a) + lb <= 63, "word too long for a key");
        a << lb | (b ^ (1 << lb))
    }

    fn generators(&self) -> Vec<u64> {
        (0..self.alphabet.clamp(1, 2) as u64).map(|bit| 2 | bit).collect()
    }

    fn decode(&self, key: u64) -> String {
        (0..word_len(key))
            .rev()
            .map(|i| if key >> i & 1 == 1 { 'b' } else { 'a' })
            .collect()
    }
}

/// `(ℕ, +)` with `ℕ = {1, 2, …}`.
pub struct NatAdd;

impl FgSemigroup for NatAdd {
    fn name(&self) -> &'static str {
        "nat"
    }

    fn multiply(&self, a: u64, b: u64) -> u64 {
        a + b
    }

    fn generators(&self) -> Vec<u64> {
        vec![1]
    }

    fn decode(&self, key: u64) -> String {
        key.to_string()
    }
}

/// `{1, …, k}` as a key.
fn initial_segment(k: u32) -> u64 {
    (1u64 << k) - 1
}

/// `F_n = {{2, …, 2n}} ∪ {{1, …, k} : n < k ≤ 2n}`, reading `n̂(k)` as the
/// initial segment `{1, …, k}`. Under the singleton reading the family would
/// collapse at `n = 1` and `{1, …, 2n} ∪ T` would not occur in it.
pub fn pfn_folner_set(n: u32) -> Result<Vec<u64>> {
    if n == 0 || 2 * n > 63 {
        return Err(Error::BadIndex(n as usize));
    }
    let mut f = vec![initial_segment(2 * n) & !1];
    f.extend((n + 1..=2 * n).map(initial_segment));
    Ok(f)
}

/// `|F ∖ {X ∪ Z : Z ∈ F}|`.
pub fn pfn_translate_loss(family: &[u64], x: u64) -> usize {
    let moved: BTreeSet<u64> = family.iter().map(|z| x | z).collect();
    family.iter().filter(|z| !moved.contains(z)).count()
}

/// Følner defect of `F_n` against `H = {X}`.
pub fn pfn_defect(n: u32, x: u64) -> Result<BigRational> {
    let f = pfn_folner_set(n)?;
    Ok(ratio(pfn_translate_loss(&f, x), f.len()))
}

/// `max_T |𝒜 ∩ {Z ∪ T}| / |{Z ∪ T}|` over `Z ∈ F_n`, with `𝒜 = {X : 1 ∉ X}`.
///
/// `T` ranges over subsets of `{1, …, 2n}` (the empty `T` included, standing
/// for the unshifted family). Elements of `T` above `2n` lie outside every
/// `Z ∈ F_n`, so adding them neither merges nor separates unions and never
/// changes whether `1` is present.
pub fn pfn_max_ratio(n: u32) -> Result<(BigRational, u64)> {
    let f = pfn_folner_set(n)?;
    if n > 12 {
        return Err(Error::BadIndex(n as usize));
    }
    let mut best: Option<(usize, usize, u64)> = None;
    for t in 0..1u64 << (2 * n) {
        let unions: BTreeSet<u64> = f.iter().map(|z| z | t).collect();
        let hits = unions.iter().filter(|u| *u & 1 == 0).count();
        let better = match best {
            None => true,
            Some((bh, bs, _)) => hits * bs > bh * unions.len(),
        };
        if better {
            best = Some((hits, unions.len(), t));
        }
    }
    let (hits, size, t) = best.expect("at least one T");
    Ok((ratio(hits, size), t))
}

/// Følner density of `{X : 1 ∉ X}` and of its complement in the finite
/// semilattice of nonempty subsets of `{1, …, m}`, plus the non-cofinality
/// witness `s = {1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PfnTruncation {
    pub m: usize,
    pub semigroup: FiniteSemigroup,
    pub d_a: BigRational,
    pub d_complement: BigRational,
    /// `{1}` (element 0): no `t ∈ 𝒜` has `s ∪ t = t`.
    pub witness: usize,
    pub witness_holds: bool,
}

pub fn pfn_density_a(m: usize) -> Result<PfnTruncation> {
    if m == 0 || m > 5 {
        return Err(Error::BadIndex(m));
    }
    let s = union_semilattice(m);
    let n = s.order();
    // element k is the set with bit pattern k + 1
    let a = SubsetMask::from_indices(n, (0..n).filter(|k| (k + 1) & 1 == 0))?;
    let (d_a, _) = folner_density(&s, a)?;
    let (d_complement, _) = folner_density(&s, a.complement())?;
    let witness = 0;
    let witness_holds = a.iter().all(|t| s.mul(witness, t) != t);
    Ok(PfnTruncation {
        m,
        semigroup: s,
        d_a,
        d_complement,
        witness,
        witness_holds,
    })
}

/// The four certificates of the two-letter example over words of length ≤ `len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeExample {
    pub len: usize,
    pub words: usize,
    /// `{a} ∩ Bs⁻¹ = ∅` for every `s` with `|s| < len`.
    pub a_misses_b: bool,
    /// `{b} ∩ As⁻¹ = ∅` for every such `s`.
    pub b_misses_a: bool,
    /// `(A ∪ B)s⁻¹` contains every word of the ball, so each `F` scores 1.
    pub union_full: bool,
    /// `a⁻¹A` contains every word of the ball.
    pub shift_full: bool,
}

impl FreeExample {
    pub fn all_hold(&self) -> bool {
        self.a_misses_b && self.b_misses_a && self.union_full && self.shift_full
    }
}

pub fn free_semigroup_example(len: usize, alphabet: u32) -> Result<FreeExample> {
    if len < 2 {
        return Err(Error::BadLength { len, min: 2 });
    }
    if len > 31 {
        return Err(Error::BadLength { len, min: 2 });
    }
    let fs = FreeSemigroup { alphabet };
    let in_a = |w: u64| FreeSemigroup::first_letter(w) == 0;
    let in_b = |w: u64| FreeSemigroup::first_letter(w) == 1;
    let ball = fs.ball(len);
    let shifts = fs.ball(len - 1);
    let a = fs.word("a").expect("a is a letter");
    let b = fs.word("b");
    let a_misses_b = shifts.iter().all(|&s| !in_b(fs.multiply(a, s)));
    let b_misses_a = match b {
        Some(b) => shifts.iter().all(|&s| !in_a(fs.multiply(b, s))),
        None => true,
    };
    let union_full = shifts
        .iter()
        .all(|&s| ball.iter().all(|&x| {
            let y = fs.multiply(x, s);
            in_a(y) || in_b(y)
        }));
    let shift_full = shifts.iter().all(|&x| in_a(fs.multiply(a, x)));
    Ok(FreeExample {
        len,
        words: ball.len(),
        a_misses_b,
        b_misses_a,
        union_full,
        shift_full,
    })
}

/// One step of a density profile along a Følner sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct NetPoint {
    pub n: usize,
    /// `max_{s ∈ shift ball} |As⁻¹ ∩ F(n)| / |F(n)|`, a lower bound for the max over all `s`.
    pub ratio: BigRational,
    /// `max_g |F(n) ∖ gF(n)| / |F(n)|` over the generators.
    pub defect: BigRational,
}

/// Evaluates `n ↦ max_s |As⁻¹ ∩ F(n)| / |F(n)|` for `n` in `range` with `s`
/// restricted to `shifts`. No limit is claimed.
pub fn density_along_net(
    fg: &dyn FgSemigroup,
    in_a: &dyn Fn(u64) -> bool,
    folner: &dyn Fn(usize) -> Result<Vec<u64>>,
    range: std::ops::RangeInclusive<usize>,
    shifts: &[u64],
) -> Result<Vec<NetPoint>> {
    let gens = fg.generators();
    range
        .map(|n| {
            let f: BTreeSet<u64> = folner(n)?.into_iter().collect();
            if f.is_empty() {
                return Err(Error::EmptyF);
            }
            let best = shifts
                .iter()
                .map(|&s| f.iter().filter(|&&x| in_a(fg.multiply(x, s))).count())
                .max()
                .unwrap_or(0);
            let loss = gens
                .iter()
                .map(|&g| {
                    let moved: BTreeSet<u64> = f.iter().map(|&z| fg.multiply(g, z)).collect();
                    f.difference(&moved).count()
                })
                .max()
                .unwrap_or(0);
            Ok(NetPoint {
                n,
                ratio: ratio(best, f.len()),
                defect: ratio(loss, f.len()),
            })
        })
        .collect()
}

/// `(max_s |A ∩ Fs| / |F|, max_s |A ∩ Fs| / |Fs|)`.
pub fn right_translate_ratios(
    s: &FiniteSemigroup,
    f: SubsetMask,
    a: SubsetMask,
) -> Result<(BigRational, BigRational)> {
    if f.is_empty() {
        return Err(Error::EmptyF);
    }
    let mut over_f = ratio(0, 1);
    let mut over_fs = ratio(0, 1);
    for t in s.elements() {
        let fs = s.right_translate(f, t);
        let hit = a.intersection(fs).len();
        over_f = over_f.max(ratio(hit, f.len()));
        over_fs = over_fs.max(ratio(hit, fs.len()));
    }
    Ok((over_f, over_fs))
}
