//! Invariants over seeded random extensions and modules.

mod support;

use proptest::prelude::*;

use borelbocs::coring::{counit_surjective, dual_coring, right_algebra_of_dual, splitting_equivalences};
use borelbocs::modules::{ext1_cocycle_oracle, ext_dim};

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn splitting_verdicts_agree_with_the_counit(seed in any::<u64>()) {
        let e = support::random_extension(&mut support::rng(seed), 10);
        let v = splitting_equivalences(&e).unwrap().verdicts();
        prop_assert!(v.iter().all(|&x| x == v[0]), "{v:?}");
        let d = dual_coring(&e).unwrap();
        prop_assert_eq!(counit_surjective(&d.coring).unwrap().surjective, v[0]);
    }

    #[test]
    fn dual_corings_satisfy_the_axioms(seed in any::<u64>()) {
        let e = support::random_extension(&mut support::rng(seed), 10);
        let d = dual_coring(&e).unwrap();
        prop_assert!(d.coring.verify().is_ok());
    }

    #[test]
    fn ev_is_certified(seed in any::<u64>()) {
        let e = support::random_extension(&mut support::rng(seed), 10);
        let r = right_algebra_of_dual(&dual_coring(&e).unwrap()).unwrap();
        prop_assert_eq!(r.algebra.dim(), e.target().dim());
        prop_assert!(r.ev.is_some());
    }

    #[test]
    fn ext1_matches_the_cocycle_oracle(seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let a = loop {
            if let Some(a) = support::random_algebra(&mut rng, 10) {
                break a;
            }
        };
        let m = support::random_module(&mut rng, &a);
        let n = support::random_module(&mut rng, &a);
        prop_assert_eq!(ext_dim(&m, &n, 1).unwrap(), ext1_cocycle_oracle(&m, &n).unwrap());
    }
}
