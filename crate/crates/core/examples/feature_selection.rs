//! Search feature subsets for the most separable view of the data: one
//! informative column hidden among noise.
//!
//! ```bash
//! cargo run --example feature_selection
//! ```

use separability::select::{exhaustive_search, greedy_forward_search};
use separability::{synth, Criterion, HybridMode, SearchOptions, SelectionResult};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ds = synth::informative_with_noise(100, 5, 3, 2024)?;
    println!(
        "{} instances, {} features; feature 3 separates the classes\n",
        ds.n(),
        ds.d()
    );

    let si = SearchOptions::default();
    show("exhaustive, SI", &exhaustive_search(&ds, si)?, 8);
    show("greedy, SI", &greedy_forward_search(&ds, si)?, usize::MAX);

    // With a fresh hybrid state per subset every fully separating subset
    // scores 100. Sharing one state lets a separating subset score against
    // the previous one, but only while no non-separating subset is
    // evaluated in between: that resets the reference.
    let shared = SearchOptions {
        criterion: Criterion::Hybrid,
        max_dim: Some(2),
        hybrid_mode: HybridMode::Shared,
    };
    show(
        "exhaustive, hybrid (shared state, up to 2 features)",
        &exhaustive_search(&ds, shared)?,
        8,
    );
    Ok(())
}

fn show(title: &str, result: &SelectionResult, rows: usize) {
    println!(
        "{title}: best {{{}}} score {:.4} after {} evaluations",
        result.best_subset,
        result.best_score,
        result.trace.len()
    );
    for e in result.trace.iter().take(rows) {
        let hm = e.hm.map_or("-".to_string(), |hm| format!("{hm:.3}"));
        println!(
            "  {:<10} si {:.4}  hm {:>9}  score {:.4}",
            e.subset.to_string(),
            e.si,
            hm,
            e.score
        );
    }
    if result.trace.len() > rows {
        println!("  ... {} more", result.trace.len() - rows);
    }
    println!();
}
