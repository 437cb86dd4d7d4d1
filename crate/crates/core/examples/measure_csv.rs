//! Load a labeled CSV and report SI, HM, the single-shot hybrid and the
//! worst-margin instances.
//!
//! ```bash
//! cargo run --example measure_csv -- data.csv          # label in last column
//! cargo run --example measure_csv                      # built-in demo data
//! ```

use separability::measures::{self, near_hit_from, near_miss_from};
use separability::neighbors::KdIndex;
use separability::{synth, Dataset, HybridState, LabelColumn, MarginConvention};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ds = match std::env::args().nth(1) {
        Some(path) => separability::load_csv(path, false, LabelColumn::Last)?,
        None => {
            println!("no input given; using two overlapping Gaussian clusters\n");
            synth::gaussian_clusters(50, 2, 1.0, 2.0, 3)?
        }
    };
    report(&ds)
}

fn report(ds: &Dataset) -> Result<(), Box<dyn std::error::Error>> {
    let rep = measures::measure(ds)?;
    println!("instances {}  features {}", ds.n(), ds.d());
    for (label, count) in ds.class_counts() {
        println!("  class {label}: {count}");
    }
    println!("si      {}/{} = {:.4}", rep.si_hits, rep.n, rep.si());
    println!("hm      {:.4} (sum)", rep.hm);
    let mean = MarginConvention {
        mean: true,
        half: false,
    };
    println!("hm      {:.4} (mean)", rep.hm_with(mean));
    let hybrid = HybridState::new().step(rep.si_count(), rep.hm)?;
    println!("hybrid  {:.4}", hybrid.hybrid);

    // Instances with the most negative margin sit closest to the other class.
    let index = KdIndex::build(ds);
    let mut order: Vec<usize> = (0..ds.n()).collect();
    order.sort_by(|&a, &b| rep.margins[a].total_cmp(&rep.margins[b]).then(a.cmp(&b)));
    println!("\nlowest margins:");
    for &i in order.iter().take(5) {
        let hit = near_hit_from(&index, i)?;
        let miss = near_miss_from(&index, i)?;
        println!(
            "  #{i:<4} {:<3} margin {:>8.4}  near-hit #{} ({:.3})  near-miss #{} ({:.3})",
            ds.label(i),
            rep.margins[i],
            hit.index,
            hit.distance,
            miss.index,
            miss.distance
        );
    }
    Ok(())
}
