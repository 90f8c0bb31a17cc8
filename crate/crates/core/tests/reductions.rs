use overlap_lab::combinatorics::ksets;
use overlap_lab::family::{is_shifted, nestify, shift_closure, shift_closure_all, shift_ij};
use overlap_lab::matching::rainbow_matching_number;
use overlap_lab::Family;
use proptest::prelude::*;

fn family_strategy(n: usize, k: usize) -> impl Strategy<Value = Family> {
    let count = ksets(n, k).unwrap().len();
    proptest::collection::vec(any::<bool>(), count).prop_map(move |bits| {
        let pool = ksets(n, k).unwrap();
        Family::from_sets(n, k, pool.into_iter().zip(bits).filter(|(_, b)| *b).map(|(x, _)| x)).unwrap()
    })
}

fn sequence_strategy() -> impl Strategy<Value = Vec<Family>> {
    (2usize..=6, 1usize..=3)
        .prop_filter("k < n", |(n, k)| k < n)
        .prop_flat_map(|(n, k)| proptest::collection::vec(family_strategy(n, k), 1..=4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn nestify_keeps_total_and_does_not_raise_nu(seq in sequence_strategy()) {
        let nested = nestify(&seq).unwrap();
        let total = |s: &[Family]| s.iter().map(Family::len).sum::<u64>();
        prop_assert_eq!(total(&nested), total(&seq));
        prop_assert!(nested.windows(2).all(|w| w[0].is_subset_of(&w[1])));
        prop_assert!(rainbow_matching_number(&nested).unwrap() <= rainbow_matching_number(&seq).unwrap());
    }

    #[test]
    fn simultaneous_shifting_keeps_sizes_and_does_not_raise_nu(seq in sequence_strategy()) {
        let shifted = shift_closure_all(&seq);
        for (a, b) in shifted.iter().zip(&seq) {
            prop_assert_eq!(a.len(), b.len());
            prop_assert!(is_shifted(a));
        }
        prop_assert!(rainbow_matching_number(&shifted).unwrap() <= rainbow_matching_number(&seq).unwrap());
    }

    #[test]
    fn single_shift_and_closure(f in (3usize..=7, 1usize..=3).prop_filter("k < n", |(n, k)| k < n).prop_flat_map(|(n, k)| family_strategy(n, k)), i in 1usize..=6, d in 1usize..=6) {
        let j = (i + d).min(f.n());
        prop_assume!(i < j);
        let g = shift_ij(&f, i, j).unwrap();
        prop_assert_eq!(g.len(), f.len());
        prop_assert_eq!(shift_ij(&g, i, j).unwrap(), g.clone());
        let c = shift_closure(&f);
        prop_assert!(is_shifted(&c));
        prop_assert_eq!(shift_closure(&c), c.clone());
    }
}

#[test]
fn nested_input_is_fixed_by_nestify() {
    let a = Family::from_lists(4, 2, &[[1, 2]]).unwrap();
    let b = Family::from_lists(4, 2, &[[1, 2], [3, 4]]).unwrap();
    assert_eq!(nestify(&[a.clone(), b.clone()]).unwrap(), vec![a, b]);
}
