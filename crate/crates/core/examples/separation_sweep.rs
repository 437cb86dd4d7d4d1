//! Translate one Gaussian cluster away from the other and watch SI saturate
//! while the hybrid measure keeps growing.
//!
//! ```bash
//! cargo run --example separation_sweep
//! cargo run --example separation_sweep -- sweep.csv   # also write the CSV
//! ```

use separability::synth::{self, ClusterPair, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SweepConfig::default();
    let records = synth::separation_sweep(&cfg)?;
    let pair = ClusterPair::sample(cfg.n_per_class, cfg.dims, cfg.sigma, cfg.seed)?;

    println!(
        "{} points per class, {} dims, sigma {}, seed {}",
        cfg.n_per_class, cfg.dims, cfg.sigma, cfg.seed
    );
    println!(
        "clouds are disjoint along the first axis beyond distance {:.3}\n",
        pair.disjoint_beyond()
    );
    println!(
        "{:>8} {:>8} {:>10} {:>8} {:>10} {:>5}",
        "distance", "si", "hm", "ratio", "hybrid", "epoch"
    );
    for r in &records {
        println!(
            "{:>8.2} {:>8.4} {:>10.3} {:>8.4} {:>10.4} {:>5}",
            r.distance, r.si, r.hm, r.hm_ratio, r.hybrid, r.epoch
        );
    }

    if let Some(path) = std::env::args().nth(1) {
        synth::write_sweep_csv(
            &records,
            std::io::BufWriter::new(std::fs::File::create(&path)?),
        )?;
        println!("\nwrote {path}");
    }
    Ok(())
}
