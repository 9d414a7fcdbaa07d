//! The verify predicates against their brute-force definitions.

use imprecise::verify::{order_error, sorted_error, verify_k_max, verify_k_order, verify_k_sorted};
use imprecise::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Whether some split of the other elements into `i - 1` below and the rest
/// above puts every below-or-`e` element within `k` of every above-or-`e`
/// one.
fn has_k_order_brute(values: &[f64], e: usize, i: usize, k: f64) -> bool {
    let others: Vec<usize> = (0..values.len()).filter(|&x| x != e).collect();
    (0u32..1 << others.len())
        .filter(|mask| mask.count_ones() as usize == i - 1)
        .any(|mask| {
            let (mut low_max, mut high_min) = (values[e], values[e]);
            for (b, &x) in others.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    low_max = low_max.max(values[x]);
                } else {
                    high_min = high_min.min(values[x]);
                }
            }
            high_min >= low_max - k
        })
}

fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    // Half-δ grid over a short range gives frequent near-ties.
    (0..n)
        .map(|_| rng.random_range(0..12) as f64 / 2.0)
        .collect()
}

#[test]
fn k_order_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20_000 {
        let n = rng.random_range(1..=8);
        let values = random_values(&mut rng, n);
        let inst = Instance::new(values.clone(), 1.0).unwrap();
        let e = rng.random_range(0..n);
        let i = rng.random_range(1..=n);
        for k in 0..=3 {
            let k = k as f64;
            assert_eq!(
                verify_k_order(&inst, e, i, k).unwrap(),
                has_k_order_brute(&values, e, i, k),
                "values {values:?} e {e} i {i} k {k}"
            );
        }
        let err = order_error(&inst, e, i).unwrap();
        assert!(has_k_order_brute(&values, e, i, err));
    }
}

#[test]
fn k_sorted_matches_pairwise_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20_000 {
        let n = rng.random_range(1..=8);
        let values = random_values(&mut rng, n);
        let inst = Instance::new(values.clone(), 1.0).unwrap();
        let mut ordering: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(ordering.as_mut_slice(), &mut rng);
        let worst = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .map(|(a, b)| values[ordering[a]] - values[ordering[b]])
            .fold(0.0f64, f64::max);
        assert_eq!(sorted_error(&inst, &ordering).unwrap(), worst);
        for k in 0..=3 {
            assert_eq!(
                verify_k_sorted(&inst, &ordering, k as f64).unwrap(),
                worst <= k as f64
            );
        }
    }
}

#[test]
fn k_max_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..5_000 {
        let n = rng.random_range(1..=8);
        let values = random_values(&mut rng, n);
        let inst = Instance::new(values.clone(), 1.0).unwrap();
        for e in 0..n {
            for k in 0..=3 {
                let want = values.iter().all(|&v| v - values[e] <= k as f64);
                assert_eq!(verify_k_max(&inst, e, k as f64).unwrap(), want);
            }
        }
    }
}

#[test]
fn non_integer_k_and_delta() {
    let inst = Instance::new(vec![0.0, 0.75, 1.5], 0.5).unwrap();
    assert!(verify_k_max(&inst, 0, 3.0).unwrap());
    assert!(!verify_k_max(&inst, 0, 2.5).unwrap());
    assert!(verify_k_order(&inst, 2, 1, 3.0).unwrap());
    assert!(!verify_k_order(&inst, 2, 1, 2.9).unwrap());
}
