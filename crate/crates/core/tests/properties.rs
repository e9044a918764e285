use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semidense::densities::{invariant_core, translation_density_fast, InvariantCore};
use semidense::lp::LimSolver;
use semidense::search::{enumerate_semigroups, Sampler};
use semidense::semigroup::Dedup;
use semidense::{FiniteSemigroup, SubsetMask};

fn d(core: &InvariantCore, a: SubsetMask) -> semidense::BigRational {
    core.folner_density(a).unwrap().0
}

/// Subadditivity and left invariance of `d` over every pair of subsets.
fn check_d_laws(s: &FiniteSemigroup, pairs: impl Iterator<Item = (SubsetMask, SubsetMask)>) {
    let core = invariant_core(s);
    if core.core.is_empty() {
        return;
    }
    for (a, b) in pairs {
        assert!(d(&core, a.union(b)) <= d(&core, a) + d(&core, b), "{s:?} {a} {b}");
    }
    for a in SubsetMask::all(s.order()) {
        for x in s.elements() {
            assert_eq!(d(&core, s.left_preimage(x, a)), d(&core, a), "{s:?} {x} {a}");
        }
    }
}

#[test]
fn d_is_subadditive_and_left_invariant_up_to_order_five() {
    for n in 1..=5 {
        for s in enumerate_semigroups(n, Dedup::Iso).unwrap() {
            let pairs = SubsetMask::all(n).flat_map(|a| SubsetMask::all(n).map(move |b| (a, b)));
            check_d_laws(&s, pairs);
        }
    }
}

#[test]
fn banach_density_of_a_set_and_its_complement_covers() {
    for n in 1..=4 {
        for s in enumerate_semigroups(n, Dedup::Iso).unwrap() {
            let lim = LimSolver::new(&s);
            if !lim.is_amenable() {
                continue;
            }
            for a in SubsetMask::all(n) {
                let sum = lim.banach_density(a).unwrap().0 + lim.banach_density(a.complement()).unwrap().0;
                assert!(sum >= semidense::BigRational::one(), "{s:?} {a}");
            }
        }
    }
}

fn sampled(seed: u64, order: usize) -> FiniteSemigroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Sampler::new().sample(&mut rng, order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_laws_on_sampled_semigroups(seed in any::<u64>(), order in 6usize..=12, bits in any::<(u32, u32)>()) {
        let s = sampled(seed, order);
        let mask = (1u32 << order) - 1;
        let a = SubsetMask::from_bits(order, bits.0 & mask).unwrap();
        let b = SubsetMask::from_bits(order, bits.1 & mask).unwrap();
        let core = invariant_core(&s);
        prop_assume!(!core.core.is_empty());
        prop_assert!(d(&core, a.union(b)) <= d(&core, a) + d(&core, b));
        for x in s.elements() {
            prop_assert_eq!(d(&core, s.left_preimage(x, a)), d(&core, a));
        }
    }

    #[test]
    fn densities_agree_on_sampled_semigroups(seed in any::<u64>(), order in 6usize..=10, bits in any::<u32>()) {
        let s = sampled(seed, order);
        let a = SubsetMask::from_bits(order, bits & ((1u32 << order) - 1)).unwrap();
        let core = invariant_core(&s);
        prop_assume!(!core.core.is_empty());
        let lim = LimSolver::new(&s);
        prop_assert!(lim.is_amenable());
        let dv = d(&core, a);
        prop_assert_eq!(&lim.banach_density(a).unwrap().0, &dv);
        prop_assert_eq!(&translation_density_fast(&s, a).unwrap().0, &dv);
    }
}
