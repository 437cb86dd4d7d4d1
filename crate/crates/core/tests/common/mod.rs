#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use separability::Dataset;

/// Random labeled dataset. When `grid` is set, coordinates are small
/// integers so that distance ties are common.
pub fn random_dataset(seed: u64, n: usize, d: usize, classes: usize, grid: bool) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut features = Vec::with_capacity(n * d);
    for _ in 0..n * d {
        let v = if grid {
            rng.random_range(-3i32..=3) as f64
        } else {
            rng.random_range(-10.0..10.0)
        };
        features.push(v);
    }
    // Every class gets at least two members so near-hits always exist.
    let labels: Vec<String> = (0..n)
        .map(|i| {
            let c = if i < 2 * classes {
                i / 2
            } else {
                rng.random_range(0..classes)
            };
            format!("c{c}")
        })
        .collect();
    Dataset::from_flat(features, d, labels).unwrap()
}

/// Parameters drawn the way the oracle suites use them: N in 2..=300,
/// d in 1..=10, 2 to 4 classes, one in four datasets on an integer grid.
pub fn random_shape(seed: u64) -> (usize, usize, usize, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let classes = rng.random_range(2..=4);
    let n = rng.random_range(2 * classes..=300);
    let d = rng.random_range(1..=10);
    let grid = rng.random_range(0..4) == 0;
    (n, d, classes, grid)
}

pub fn random_trial(seed: u64) -> Dataset {
    let (n, d, classes, grid) = random_shape(seed);
    random_dataset(seed, n, d, classes, grid)
}
