use std::collections::BTreeSet;

use fibercomm_core::{
    analyze_cover, fiber_kernel, search_nonsymmetric, CohomologyClass, Error, FibrationPair,
};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn primitive(b: usize) -> impl Strategy<Value = CohomologyClass> {
    prop::collection::vec(-9i64..=9, b)
        .prop_filter("primitive", |v| v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1)
        .prop_map(CohomologyClass::new)
}

fn pair() -> impl Strategy<Value = FibrationPair> {
    (2usize..=4)
        .prop_flat_map(|b| (primitive(b), primitive(b), 1i64..=10, prop::bool::ANY))
        .prop_filter("distinct up to sign", |(a, b, _, _)| a != b && *a != -b)
        .prop_map(|(a, b, chi, conj)| FibrationPair::new(a, b, -chi, -chi, conj).unwrap())
}

fn subgroup_size(values: &[u64], n: u64) -> u64 {
    let mut seen = BTreeSet::from([0u64]);
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for &v in values {
            let y = (x + v) % n;
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cover_matches_coset_enumeration(pair in pair(), n in 1u64..=30) {
        let basis = fiber_kernel(pair.w2()).unwrap();
        prop_assert_eq!(basis.len(), pair.w2().len() - 1);
        let values: Vec<u64> = basis
            .iter()
            .map(|a| u64::try_from(pair.w1().pair(a).mod_floor(&BigInt::from(n))).unwrap())
            .collect();
        let size = subgroup_size(&values, n);
        let r = analyze_cover(&pair, n).unwrap();
        prop_assert_eq!((r.d, r.components, r.component_degree), (n / size, n / size, size));
        prop_assert_eq!(r.components * r.component_degree, n);
        prop_assert_eq!(r.component_chi, r.component_degree as i64 * pair.chi2());
        prop_assert!(r.kernel_gcd > 0);
        prop_assert_eq!(r.fibers_homeomorphic, r.component_degree == 1);
    }

    #[test]
    fn large_degrees_always_qualify(pair in pair(), n_max in 1u64..=40) {
        match search_nonsymmetric(&pair, n_max) {
            Err(e) => {
                prop_assert!(!pair.conjugate_monodromies());
                prop_assert_eq!(e, Error::HypothesisUnmet);
            }
            Ok(found) => {
                let m = analyze_cover(&pair, 1).unwrap().kernel_gcd;
                let degrees: Vec<u64> = found.iter().map(|r| r.degree).collect();
                let expected: Vec<u64> = (1..=n_max).filter(|n| !m.is_multiple_of(*n)).collect();
                prop_assert_eq!(&degrees, &expected);
                for n in (m + 1)..=n_max {
                    prop_assert!(degrees.contains(&n));
                }
            }
        }
    }
}
