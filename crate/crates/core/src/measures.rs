//! Separability Index and Hypothesis Margin.
//!
//! The separability index counts the instances whose nearest neighbor
//! carries the same label. The hypothesis margin sums, over instances, the
//! near-miss distance minus the near-hit distance. The index is kept as an
//! exact hit count so that "fully separable" is an integer comparison.

use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::neighbors::{self, Backend, ExclusionRule, NeighborResult, NeighborSearch};

/// Hit count of the separability index over `n` instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiCount {
    pub hits: usize,
    pub n: usize,
}

impl SiCount {
    pub fn new(hits: usize, n: usize) -> Result<Self> {
        if n == 0 || hits > n {
            return Err(Error::InvalidHitCount { hits, n });
        }
        Ok(Self { hits, n })
    }

    pub fn fraction(self) -> f64 {
        self.hits as f64 / self.n as f64
    }

    pub fn is_full(self) -> bool {
        self.hits == self.n
    }
}

/// How the per-instance margins are aggregated for display. The stored
/// [`MeasureReport::hm`] is always the plain sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MarginConvention {
    /// Divide the sum by the instance count.
    pub mean: bool,
    /// Halve every margin, as in the margin-based feature weighting literature.
    pub half: bool,
}

impl MarginConvention {
    pub fn apply(self, hm_sum: f64, n: usize) -> f64 {
        let mut v = hm_sum;
        if self.half {
            v *= 0.5;
        }
        if self.mean {
            v /= n as f64;
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub si_hits: usize,
    pub n: usize,
    /// Sum of `margins`.
    pub hm: f64,
    /// Near-miss distance minus near-hit distance, per instance.
    pub margins: Vec<f64>,
}

impl MeasureReport {
    pub fn si(&self) -> f64 {
        self.si_hits as f64 / self.n as f64
    }

    pub fn si_count(&self) -> SiCount {
        SiCount {
            hits: self.si_hits,
            n: self.n,
        }
    }

    pub fn hm_with(&self, convention: MarginConvention) -> f64 {
        convention.apply(self.hm, self.n)
    }
}

/// Near-hit and near-miss of one instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceMargin {
    pub hit: NeighborResult,
    pub miss: NeighborResult,
}

impl InstanceMargin {
    pub fn margin(&self) -> f64 {
        self.miss.distance - self.hit.distance
    }
}

pub fn separability_index(ds: &Dataset) -> Result<SiCount> {
    separability_index_with(ds, Backend::default())
}

pub fn separability_index_with(ds: &Dataset, backend: Backend) -> Result<SiCount> {
    si_from(&*neighbors::searcher(ds, backend))
}

/// Separability index through an already-built engine.
pub fn si_from(search: &dyn NeighborSearch) -> Result<SiCount> {
    let ds = search.dataset();
    if ds.n() < 2 {
        return Err(Error::TooFewInstances(ds.n()));
    }
    let hits = (0..ds.n())
        .into_par_iter()
        .map(|i| {
            let nn = search.nearest(i, ExclusionRule::SelfOnly)?;
            Ok(usize::from(ds.class_of(nn.index) == ds.class_of(i)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    SiCount::new(hits, ds.n())
}

pub fn near_hit(ds: &Dataset, i: usize) -> Result<NeighborResult> {
    near_hit_from(&neighbors::KdIndex::build(ds), i)
}

pub fn near_miss(ds: &Dataset, i: usize) -> Result<NeighborResult> {
    near_miss_from(&neighbors::KdIndex::build(ds), i)
}

pub fn near_hit_from(search: &dyn NeighborSearch, i: usize) -> Result<NeighborResult> {
    let ds = search.dataset();
    if i >= ds.n() {
        return Err(Error::QueryOutOfRange {
            index: i,
            n: ds.n(),
        });
    }
    search
        .nearest(i, ExclusionRule::same_class(ds, i))
        .map_err(|e| match e {
            Error::EmptyCandidates { .. } => Error::SingletonClass {
                label: ds.label(i).to_string(),
                instance: i,
            },
            other => other,
        })
}

pub fn near_miss_from(search: &dyn NeighborSearch, i: usize) -> Result<NeighborResult> {
    let ds = search.dataset();
    if i >= ds.n() {
        return Err(Error::QueryOutOfRange {
            index: i,
            n: ds.n(),
        });
    }
    search
        .nearest(i, ExclusionRule::other_class(ds, i))
        .map_err(|e| match e {
            Error::EmptyCandidates { .. } => Error::SingleClass,
            other => other,
        })
}

/// Per-instance near-hit / near-miss pairs, in instance order.
pub fn instance_margins(search: &dyn NeighborSearch) -> Result<Vec<InstanceMargin>> {
    let ds = search.dataset();
    if ds.n_classes() < 2 {
        return Err(Error::SingleClass);
    }
    (0..ds.n())
        .into_par_iter()
        .map(|i| {
            Ok(InstanceMargin {
                hit: near_hit_from(search, i)?,
                miss: near_miss_from(search, i)?,
            })
        })
        .collect()
}

/// Returns `(hm, margins)`.
pub fn hypothesis_margin(ds: &Dataset) -> Result<(f64, Vec<f64>)> {
    hypothesis_margin_with(ds, Backend::default())
}

pub fn hypothesis_margin_with(ds: &Dataset, backend: Backend) -> Result<(f64, Vec<f64>)> {
    hm_from(&*neighbors::searcher(ds, backend))
}

pub fn hm_from(search: &dyn NeighborSearch) -> Result<(f64, Vec<f64>)> {
    let margins: Vec<f64> = instance_margins(search)?
        .iter()
        .map(InstanceMargin::margin)
        .collect();
    Ok((ordered_sum(margins.iter().copied()), margins))
}

/// Hypothesis margin of precomputed per-instance pairs.
pub fn total_margin(pairs: &[InstanceMargin]) -> f64 {
    ordered_sum(pairs.iter().map(InstanceMargin::margin))
}

/// Sequential left-to-right sum, so parallel evaluation never changes the total.
fn ordered_sum(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |acc, v| acc + v)
}

/// SI and HM together, sharing one index build.
pub fn measure(ds: &Dataset) -> Result<MeasureReport> {
    measure_with(ds, Backend::default())
}

pub fn measure_with(ds: &Dataset, backend: Backend) -> Result<MeasureReport> {
    let search = neighbors::searcher(ds, backend);
    let si = si_from(&*search)?;
    let (hm, margins) = hm_from(&*search)?;
    Ok(MeasureReport {
        si_hits: si.hits,
        n: si.n,
        hm,
        margins,
    })
}
