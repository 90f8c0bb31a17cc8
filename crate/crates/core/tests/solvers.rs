use overlap_lab::family::{construction_chain, ConstructionKind};
use overlap_lab::matching::is_overlapping;
use overlap_lab::rational::{int, ratio};
use overlap_lab::search::{exact_f_shifted, max_min_family_size, oracle_f, SearchLimits};
use overlap_lab::{bounds, Chain, Family, WeightVector};
use proptest::prelude::*;

fn cold() -> SearchLimits {
    SearchLimits { warm_start: false, ..SearchLimits::default() }
}

/// Maximum of `sum p_i |B_i|` by listing every nested chain of arbitrary
/// families over a universe of at most 6 sets.
fn brute_force_f(n: usize, k: usize, weights: &WeightVector) -> num_rational::BigRational {
    let universe = overlap_lab::combinatorics::ksets(n, k).unwrap();
    let m = universe.len();
    assert!(m <= 6);
    let s = weights.s();
    let mut best = int(0);
    // each set gets an entry level in 0..=s+1, s+1 meaning absent
    let total = (s + 2).pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let levels: Vec<usize> = (0..m)
            .map(|_| {
                let l = c % (s + 2);
                c /= s + 2;
                l
            })
            .collect();
        let fams: Vec<Family> = (0..=s)
            .map(|i| {
                Family::from_sets(n, k, universe.iter().zip(&levels).filter(|(_, &l)| l <= i).map(|(&x, _)| x))
                    .unwrap()
            })
            .collect();
        let chain = Chain::new(fams, None).unwrap();
        if is_overlapping(&chain) {
            let v = chain.weighted_value(weights).unwrap();
            if v > best {
                best = v;
            }
        }
    }
    best
}

#[test]
fn oracle_matches_brute_force_on_tiny_universes() {
    for (n, k) in [(2, 1), (3, 1), (4, 1), (5, 1), (4, 2), (4, 3), (6, 5)] {
        for p in ["1,1", "2,1", "3,2", "5/2,1", "1,1,1", "3,1,1", "4,2,1"] {
            let w = WeightVector::parse(p).unwrap();
            let expected = brute_force_f(n, k, &w);
            assert_eq!(oracle_f(n, k, &w, &cold()).unwrap().optimum, expected, "n={n} k={k} p={p}");
            assert_eq!(exact_f_shifted(n, k, &w, &cold()).unwrap().optimum, expected, "n={n} k={k} p={p}");
        }
    }
}

#[test]
fn clique_attains_optimum_at_n_equals_two_k() {
    // n = (s+1)k = 4, k = 2, p = (3,1): (3+1) C(3,2) = 12
    let w = WeightVector::from_integers(&[3, 1]).unwrap();
    let r = oracle_f(4, 2, &w, &cold()).unwrap();
    assert_eq!(r.optimum, int(12));
    assert_eq!(bounds::thm3_value(2, &w).unwrap().value, int(12));
    let clique = construction_chain(ConstructionKind::Clique, 4, 2, 1, &w).unwrap();
    assert!(is_overlapping(&clique));
    assert_eq!(clique.value(), int(12));
}

#[test]
fn rational_weights_scale_exactly() {
    let w = WeightVector::parse("7/3,1/2").unwrap();
    let a = oracle_f(5, 2, &w, &cold()).unwrap();
    let b = exact_f_shifted(5, 2, &w, &SearchLimits::default()).unwrap();
    assert_eq!(a.optimum, b.optimum);
    assert_eq!(a.witness.weighted_value(&w).unwrap(), a.optimum);
    assert!((a.optimum.clone() * ratio(6, 1)).is_integer());
}

#[test]
fn min_size_search_matches_brute_force() {
    // every pair of families over the 6 two-sets of [4]
    let universe = overlap_lab::combinatorics::ksets(4, 2).unwrap();
    let fam = |mask: u32| Family::from_sets(4, 2, universe.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x)).unwrap();
    let mut best = 0;
    for a in 0u32..64 {
        for b in a..64 {
            let seq = [fam(a), fam(b)];
            if !overlap_lab::matching::has_full_rainbow(&seq).unwrap() {
                best = best.max(seq[0].len().min(seq[1].len()));
            }
        }
    }
    assert_eq!(max_min_family_size(4, 2, 1, &cold()).unwrap().optimum, best);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solvers_agree(n in 3usize..=6, k in 1usize..=3, p0 in 1u64..=6, tail in proptest::collection::vec(1u64..=3, 1..=2)) {
        prop_assume!(k < n);
        prop_assume!(overlap_lab::combinatorics::binom_u64(n as u64, k as u64).unwrap() <= 15);
        let mut sorted = tail.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut v = vec![p0.max(sorted[0])];
        v.extend(sorted);
        let w = WeightVector::from_integers(&v).unwrap();
        let a = oracle_f(n, k, &w, &SearchLimits::default()).unwrap();
        let b = exact_f_shifted(n, k, &w, &cold()).unwrap();
        prop_assert_eq!(&a.optimum, &b.optimum);
        prop_assert!(is_overlapping(&a.witness));
        prop_assert!(is_overlapping(&b.witness));
        prop_assert_eq!(b.witness.weighted_value(&w).unwrap(), b.optimum.clone());
    }
}
