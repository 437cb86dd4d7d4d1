//! Feed a recorded (si, hm) series through the hybrid measure, one step at a
//! time, and show the state after each step.
//!
//! ```bash
//! cargo run --example table_hybrid
//! ```

use separability::{HybridState, SiCount};

/// (SI hits out of 174, hypothesis margin) from a two-cluster sweep.
const SERIES: [(usize, f64); 14] = [
    (158, 1.5431),
    (163, 1.962),
    (166, 2.4002),
    (167, 2.8622),
    (171, 3.3595),
    (172, 3.8828),
    (174, 4.4158),
    (174, 4.952),
    (174, 5.4955),
    (174, 6.0419),
    (174, 6.5924),
    (174, 7.1469),
    (174, 7.7037),
    (174, 8.2627),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut state = HybridState::new();
    println!(
        "{:>8} {:>8} {:>8} {:>10} {:>7} {:>8}",
        "si", "hm", "ratio", "hybrid", "counter", "ih"
    );
    for (hits, hm) in SERIES {
        let rec = state.step(SiCount::new(hits, 174)?, hm)?;
        let ih = state.reference().map_or("-".to_string(), |r| r.to_string());
        println!(
            "{:>8.4} {:>8.4} {:>8.4} {:>10.4} {:>7} {:>8}",
            rec.si,
            rec.hm,
            rec.hm_ratio,
            rec.hybrid,
            state.counter(),
            ih
        );
    }

    // A drop below full separability resets the reference; the next full
    // step starts a new epoch at exactly 100 again.
    let dip = state.step(SiCount::new(173, 174)?, 9.0)?;
    let back = state.step(SiCount::new(174, 174)?, 9.5)?;
    println!(
        "\nafter a dip: hybrid {:.4} (epoch {})",
        dip.hybrid, dip.epoch
    );
    println!(
        "recaptured:  hybrid {:.4} (epoch {}, ih {})",
        back.hybrid,
        back.epoch,
        state.reference().unwrap()
    );
    Ok(())
}
