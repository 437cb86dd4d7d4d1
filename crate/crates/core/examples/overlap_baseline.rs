//! Two clusters drawn from the same distribution: SI hovers around 0.5,
//! the chance level for two balanced classes.
//!
//! ```bash
//! cargo run --example overlap_baseline
//! ```

use separability::{measures, synth};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut sum = 0.0;
    for seed in 0..20 {
        let ds = synth::gaussian_clusters(500, 2, 1.0, 0.0, seed)?;
        let rep = measures::measure(&ds)?;
        println!("seed {seed:>2}: si {:.4}  hm {:>9.3}", rep.si(), rep.hm);
        sum += rep.si();
    }
    println!("\nmean si over 20 seeds: {:.4}", sum / 20.0);

    for distance in [0.0, 1.0, 2.0, 4.0, 8.0] {
        let ds = synth::gaussian_clusters(500, 2, 1.0, distance, 0)?;
        println!(
            "distance {distance:>4}: si {:.4}",
            measures::separability_index(&ds)?.fraction()
        );
    }
    Ok(())
}
