//! Class separability measures for labeled numeric data.
//!
//! - [`measures`]: the separability index (fraction of instances whose
//!   nearest neighbor shares their label) and the hypothesis margin (sum of
//!   near-miss minus near-hit distances).
//! - [`hybrid`]: a stateful combination that reports `100·si` below full
//!   separability and `100·hm/ih` at and beyond it, where `ih` is the margin
//!   captured when full separability was first reached.
//! - [`synth`]: two-Gaussian datasets and the center-distance sweep.
//! - [`select`]: exhaustive and greedy feature-subset search.
//! - [`neighbors`]: the exact nearest-neighbor engine underneath, with a
//!   kd-tree index and a brute-force reference that agree bit for bit.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example
//! table_hybrid` is a good starting point.
//!
//! ```
//! use separability::{Dataset, measures};
//!
//! let ds = Dataset::from_rows(
//!     vec![vec![0.0], vec![1.0], vec![5.0], vec![6.0]],
//!     vec!["A", "A", "B", "B"],
//! ).unwrap();
//! let report = measures::measure(&ds).unwrap();
//! assert_eq!(report.si(), 1.0);
//! assert_eq!(report.hm, 14.0);
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dataset;
pub mod error;
pub mod hybrid;
pub mod measures;
pub mod neighbors;
pub mod select;
pub mod synth;

pub use dataset::{load_csv, ClassId, Dataset, FeatureSubset, LabelColumn};
pub use error::{Error, Result};
pub use hybrid::{hybrid_sequence, hybrid_step, HybridRecord, HybridState};
pub use measures::{MarginConvention, MeasureReport, SiCount};
pub use neighbors::{Backend, ExclusionRule, NeighborResult};
pub use select::{Criterion, HybridMode, SearchOptions, SelectionResult};
pub use synth::{SweepConfig, SweepRecord};
