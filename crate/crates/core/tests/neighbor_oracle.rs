mod common;

use proptest::prelude::*;
use separability::neighbors::{nearest_bruteforce, BruteForce, KdIndex, NeighborSearch};
use separability::{Dataset, ExclusionRule};

fn rules(ds: &Dataset, q: usize) -> [ExclusionRule; 3] {
    [
        ExclusionRule::SelfOnly,
        ExclusionRule::same_class(ds, q),
        ExclusionRule::other_class(ds, q),
    ]
}

fn assert_agree(ds: &Dataset) {
    let fast = KdIndex::build(ds);
    let slow = BruteForce::new(ds);
    for q in 0..ds.n() {
        for rule in rules(ds, q) {
            let a = fast.nearest(q, rule);
            let b = slow.nearest(q, rule);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    assert_eq!(a.index, b.index, "query {q} rule {rule:?}");
                    assert_eq!(
                        a.distance.to_bits(),
                        b.distance.to_bits(),
                        "query {q} rule {rule:?}"
                    );
                    assert_ne!(a.index, q);
                }
                (Err(_), Err(_)) => {}
                (a, b) => panic!("engines disagree on query {q} rule {rule:?}: {a:?} vs {b:?}"),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn kd_index_matches_linear_scan(seed in any::<u64>()) {
        assert_agree(&common::random_trial(seed));
    }
}

#[test]
fn two_hundred_points_five_dims_three_classes() {
    for seed in 0..5 {
        assert_agree(&common::random_dataset(seed, 200, 5, 3, false));
        assert_agree(&common::random_dataset(seed, 200, 5, 3, true));
    }
}

#[test]
fn translation_keeps_indices() {
    let ds = common::random_dataset(11, 120, 4, 3, false);
    let shifted = ds
        .map_features(|k, v| v + [3.5, -2.0, 100.0, 0.25][k])
        .unwrap();
    for q in 0..ds.n() {
        for rule in rules(&ds, q) {
            let a = nearest_bruteforce(&ds, q, rule).unwrap();
            let b = nearest_bruteforce(&shifted, q, rule).unwrap();
            assert_eq!(a.index, b.index);
        }
    }
}

#[test]
fn scaling_keeps_indices_and_scales_distances() {
    let ds = common::random_dataset(12, 120, 3, 2, false);
    for c in [0.5, 3.0, 1e3] {
        let scaled = ds.map_features(|_, v| c * v).unwrap();
        let a_idx = KdIndex::build(&ds);
        let b_idx = KdIndex::build(&scaled);
        for q in 0..ds.n() {
            for rule in rules(&ds, q) {
                let a = a_idx.nearest(q, rule).unwrap();
                let b = b_idx.nearest(q, rule).unwrap();
                assert_eq!(a.index, b.index);
                assert!((b.distance - c * a.distance).abs() <= 1e-12 * c * a.distance.max(1.0));
            }
        }
    }
}

#[test]
fn repeated_runs_are_identical() {
    let ds = common::random_dataset(13, 150, 2, 3, true);
    let run = || {
        let idx = KdIndex::build(&ds);
        (0..ds.n())
            .map(|q| idx.nearest(q, ExclusionRule::SelfOnly).unwrap())
            .map(|r| (r.index, r.distance.to_bits()))
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}
