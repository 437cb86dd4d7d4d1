//! Synthetic two-Gaussian datasets and the center-distance sweep.
//!
//! Sampling uses a ChaCha20 stream seeded with `seed_from_u64` and the
//! ziggurat standard normal from `rand_distr`. Class A rows are drawn
//! first, then class B rows, both around the origin; class B is then
//! translated along the first axis. Output is fully determined by the seed
//! but will differ from implementations using another generator.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::hybrid::HybridState;
use crate::measures;

pub const CLASS_A: &str = "A";
pub const CLASS_B: &str = "B";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_per_class: usize,
    pub dims: usize,
    pub sigma: f64,
    pub start_distance: f64,
    pub step: f64,
    pub n_steps: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    /// 87 points per class (174 in total) in the plane, unit spread, swept
    /// from coincident centers to twelve sigma apart.
    fn default() -> Self {
        Self {
            n_per_class: 87,
            dims: 2,
            sigma: 1.0,
            start_distance: 0.0,
            step: 0.25,
            n_steps: 49,
            seed: 17,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        check_cluster_params(self.n_per_class, self.dims, self.sigma)?;
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "step must be > 0, got {}",
                self.step
            )));
        }
        if self.n_steps < 1 {
            return Err(Error::InvalidConfig("n_steps must be >= 1".into()));
        }
        if !(self.start_distance >= 0.0) || !self.start_distance.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "start_distance must be >= 0, got {}",
                self.start_distance
            )));
        }
        let distances = self.distances();
        if distances.windows(2).any(|w| !(w[1] > w[0])) || !distances.iter().all(|d| d.is_finite())
        {
            return Err(Error::InvalidConfig(
                "step too small to produce strictly increasing distances".into(),
            ));
        }
        Ok(())
    }

    /// `start + k·step` for `k` in `0..n_steps`.
    pub fn distances(&self) -> Vec<f64> {
        (0..self.n_steps)
            .map(|k| self.start_distance + k as f64 * self.step)
            .collect()
    }
}

fn check_cluster_params(n_per_class: usize, dims: usize, sigma: f64) -> Result<()> {
    if n_per_class < 2 {
        return Err(Error::InvalidConfig(format!(
            "n_per_class must be >= 2, got {n_per_class}"
        )));
    }
    if dims < 1 {
        return Err(Error::InvalidConfig("dims must be >= 1".into()));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "sigma must be > 0, got {sigma}"
        )));
    }
    Ok(())
}

/// Two Gaussian clouds sampled once at the origin. Class B is placed at a
/// given center distance by translation only, so every distance shares the
/// same point shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterPair {
    n_per_class: usize,
    dims: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl ClusterPair {
    pub fn sample(n_per_class: usize, dims: usize, sigma: f64, seed: u64) -> Result<Self> {
        check_cluster_params(n_per_class, dims, sigma)?;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut draw = |count: usize| -> Vec<f64> {
            (0..count)
                .map(|_| sigma * rng.sample::<f64, _>(StandardNormal))
                .collect()
        };
        let a = draw(n_per_class * dims);
        let b = draw(n_per_class * dims);
        Ok(Self {
            n_per_class,
            dims,
            a,
            b,
        })
    }

    /// Class A at the origin, class B centered at `(distance, 0, …, 0)`.
    pub fn at_distance(&self, distance: f64) -> Result<Dataset> {
        let mut features = Vec::with_capacity(2 * self.a.len());
        features.extend_from_slice(&self.a);
        features.extend(self.b.iter().enumerate().map(|(pos, &v)| {
            if pos % self.dims == 0 {
                v + distance
            } else {
                v
            }
        }));
        let mut labels = vec![CLASS_A; self.n_per_class];
        labels.extend(std::iter::repeat_n(CLASS_B, self.n_per_class));
        Dataset::from_flat(features, self.dims, labels)
    }

    /// Center distance beyond which every B point lies strictly past every
    /// A point along the first axis.
    pub fn disjoint_beyond(&self) -> f64 {
        let first_axis =
            |cloud: &[f64]| cloud.iter().step_by(self.dims).copied().collect::<Vec<_>>();
        let max_a = first_axis(&self.a)
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        let min_b = first_axis(&self.b)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        max_a - min_b
    }
}

pub fn gaussian_clusters(
    n_per_class: usize,
    dims: usize,
    sigma: f64,
    center_distance: f64,
    seed: u64,
) -> Result<Dataset> {
    if !(center_distance >= 0.0) || !center_distance.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "center_distance must be >= 0, got {center_distance}"
        )));
    }
    ClusterPair::sample(n_per_class, dims, sigma, seed)?.at_distance(center_distance)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub distance: f64,
    pub si_hits: usize,
    pub n: usize,
    pub si: f64,
    pub hm: f64,
    pub hm_ratio: f64,
    pub hybrid: f64,
    pub epoch: u64,
}

/// Runs the sweep: measures each translated dataset, then folds the
/// results through one shared hybrid state in distance order.
pub fn separation_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let pair = ClusterPair::sample(cfg.n_per_class, cfg.dims, cfg.sigma, cfg.seed)?;
    let distances = cfg.distances();
    let reports = distances
        .par_iter()
        .map(|&distance| measures::measure(&pair.at_distance(distance)?))
        .collect::<Result<Vec<_>>>()?;

    let mut state = HybridState::new();
    distances
        .iter()
        .zip(reports)
        .enumerate()
        .map(|(position, (&distance, report))| {
            let rec = state
                .step(report.si_count(), report.hm)
                .map_err(|e| Error::AtPosition {
                    position,
                    source: Box::new(e),
                })?;
            Ok(SweepRecord {
                distance,
                si_hits: report.si_hits,
                n: report.n,
                si: rec.si,
                hm: rec.hm,
                hm_ratio: rec.hm_ratio,
                hybrid: rec.hybrid,
                epoch: rec.epoch,
            })
        })
        .collect()
}

/// Writes `distance,si,hm,hm_ratio,hybrid,epoch` rows with a header.
pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "distance,si,hm,hm_ratio,hybrid,epoch")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.distance, r.si, r.hm, r.hm_ratio, r.hybrid, r.epoch
        )?;
    }
    out.flush()
}

/// Labeled data with one cleanly separating column among standard-normal
/// noise columns.
///
/// The informative column holds class A values in `[0, 1)` and class B
/// values in `[10, 11)`; every other column is N(0, 1) regardless of class.
/// Rows alternate A, B, A, B, ….
pub fn informative_with_noise(
    n_per_class: usize,
    n_features: usize,
    informative: usize,
    seed: u64,
) -> Result<Dataset> {
    if informative >= n_features {
        return Err(Error::FeatureOutOfRange {
            index: informative,
            dims: n_features,
        });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let n = 2 * n_per_class;
    let mut features = Vec::with_capacity(n * n_features);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let is_b = i % 2 == 1;
        for k in 0..n_features {
            let v = if k == informative {
                let offset = if is_b { 10.0 } else { 0.0 };
                offset + rng.random::<f64>()
            } else {
                rng.sample::<f64, _>(StandardNormal)
            };
            features.push(v);
        }
        labels.push(if is_b { CLASS_B } else { CLASS_A });
    }
    Dataset::from_flat(features, n_features, labels)
}
