//! Nearest-neighbor queries under the three exclusion rules, answered by the
//! kd-tree index and checked against the brute-force scan.
//!
//! ```bash
//! cargo run --example neighbor_queries
//! ```

use std::time::Instant;

use separability::neighbors::{BruteForce, KdIndex, NeighborSearch};
use separability::{synth, Dataset, ExclusionRule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Ties go to the lower index: 0 and 2 are both at distance 1 from 1.
    let line = Dataset::from_rows(
        vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]],
        vec!["a", "b", "a", "b"],
    )?;
    let kd = KdIndex::build(&line);
    for q in 0..line.n() {
        let any = kd.nearest(q, ExclusionRule::SelfOnly)?;
        let hit = kd.nearest(q, ExclusionRule::same_class(&line, q))?;
        let miss = kd.nearest(q, ExclusionRule::other_class(&line, q))?;
        println!(
            "query {q} ({}): nearest #{} d={}  near-hit #{} d={}  near-miss #{} d={}",
            line.label(q),
            any.index,
            any.distance,
            hit.index,
            hit.distance,
            miss.index,
            miss.distance
        );
    }

    let ds = synth::informative_with_noise(2000, 6, 0, 11)?;
    let t = Instant::now();
    let kd = KdIndex::build(&ds);
    let kd_answers = all_queries(&kd, &ds)?;
    let kd_time = t.elapsed();
    let t = Instant::now();
    let bf_answers = all_queries(&BruteForce::new(&ds), &ds)?;
    let bf_time = t.elapsed();
    assert_eq!(kd_answers, bf_answers);
    println!(
        "\n{} instances x 3 rules in {} dims: kd-tree {:.1?}, brute force {:.1?}, answers identical",
        ds.n(),
        ds.d(),
        kd_time,
        bf_time
    );
    Ok(())
}

fn all_queries(
    search: &dyn NeighborSearch,
    ds: &Dataset,
) -> separability::Result<Vec<(usize, u64)>> {
    let mut out = Vec::with_capacity(3 * ds.n());
    for q in 0..ds.n() {
        for rule in [
            ExclusionRule::SelfOnly,
            ExclusionRule::same_class(ds, q),
            ExclusionRule::other_class(ds, q),
        ] {
            let r = search.nearest(q, rule)?;
            out.push((r.index, r.distance.to_bits()));
        }
    }
    Ok(out)
}
