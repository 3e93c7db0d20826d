mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropcoord::barcode::equivalent;
use tropcoord::metrics::oracle::{bottleneck_oracle, wasserstein_oracle};
use tropcoord::metrics::{bottleneck_matching, wasserstein_matching};
use tropcoord::{bottleneck, wasserstein, Barcode};

use common::{random_pair, uniform_barcode};

fn small_barcode() -> impl Strategy<Value = Barcode> {
    prop::collection::vec((0u32..40, 0u32..40), 0..=5).prop_map(|v| {
        let pairs: Vec<(f64, f64)> = v.iter().map(|&(x, d)| (x as f64 / 4.0, d as f64 / 4.0)).collect();
        Barcode::from_pairs(&pairs).unwrap()
    })
}

proptest! {
    #[test]
    fn bottleneck_matches_oracle(a in small_barcode(), b in small_barcode()) {
        prop_assert_eq!(bottleneck(&a, &b), bottleneck_oracle(&a, &b).unwrap());
    }

    #[test]
    fn wasserstein_matches_oracle(a in small_barcode(), b in small_barcode(), p in prop::sample::select(vec![1.0, 2.0, 3.0])) {
        let fast = wasserstein(p, &a, &b).unwrap();
        let slow = wasserstein_oracle(p, &a, &b).unwrap();
        prop_assert!((fast - slow).abs() <= 1e-9, "{} vs {}", fast, slow);
    }

    #[test]
    fn zero_distance_iff_equivalent(a in small_barcode(), b in small_barcode()) {
        prop_assert_eq!(bottleneck(&a, &b) == 0.0, equivalent(&a, &b));
        prop_assert_eq!(bottleneck(&a, &a), 0.0);
        prop_assert_eq!(wasserstein(1.0, &a, &a).unwrap(), 0.0);
    }

    #[test]
    fn wasserstein_dominates_bottleneck(a in small_barcode(), b in small_barcode()) {
        // Every Wasserstein-p cost is at least the largest single penalty.
        let d = bottleneck(&a, &b);
        for p in [1.0, 2.0] {
            prop_assert!(wasserstein(p, &a, &b).unwrap() + 1e-9 >= d);
        }
        prop_assert!(wasserstein(2.0, &a, &b).unwrap() <= wasserstein(1.0, &a, &b).unwrap() + 1e-9);
    }
}

#[test]
fn symmetry_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let (a, b) = random_pair(&mut rng, 6);
        assert_eq!(bottleneck(&a, &b), bottleneck(&b, &a));
        for p in [1.0, 2.0] {
            let (ab, ba) = (wasserstein(p, &a, &b).unwrap(), wasserstein(p, &b, &a).unwrap());
            assert!((ab - ba).abs() <= 1e-12 * ab.max(1.0), "{ab} vs {ba}");
        }
    }
}

#[test]
fn triangle_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let a = uniform_barcode(&mut rng, 5, 10.0);
        let b = uniform_barcode(&mut rng, 5, 10.0);
        let c = uniform_barcode(&mut rng, 5, 10.0);
        assert!(bottleneck(&a, &c) <= bottleneck(&a, &b) + bottleneck(&b, &c) + 1e-9);
        for p in [1.0, 2.0] {
            let ac = wasserstein(p, &a, &c).unwrap();
            let abc = wasserstein(p, &a, &b).unwrap() + wasserstein(p, &b, &c).unwrap();
            assert!(ac <= abc + 1e-9, "p={p}: {ac} > {abc}");
        }
    }
}

#[test]
fn matchings_partition_and_attain() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let (a, b) = random_pair(&mut rng, 6);
        let (d, m) = bottleneck_matching(&a, &b);
        let mut left: Vec<usize> = m.matched.iter().map(|p| p.0).chain(m.unmatched_a.iter().copied()).collect();
        let mut right: Vec<usize> = m.matched.iter().map(|p| p.1).chain(m.unmatched_b.iter().copied()).collect();
        left.sort();
        right.sort();
        assert_eq!(left, (0..a.len()).collect::<Vec<_>>());
        assert_eq!(right, (0..b.len()).collect::<Vec<_>>());
        assert_eq!(m.bottleneck_cost(&a, &b), d);

        let w = wasserstein_matching(2.0, &a, &b).unwrap();
        let cost = w.wasserstein_cost(2.0, &a, &b).sqrt();
        let direct = wasserstein(2.0, &a, &b).unwrap();
        assert!((cost - direct).abs() <= 1e-9, "{cost} vs {direct}");
    }
}
