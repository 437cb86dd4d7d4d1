//! Feature-subset search driven by a separability criterion.
//!
//! Two strategies are provided: exhaustive enumeration of every subset up
//! to a size bound, and greedy forward selection. Subsets are scored with
//! either `100·si` or the hybrid measure.
//!
//! With [`HybridMode::FreshPerSubset`] (the default) every evaluation starts
//! from a new [`HybridState`], so a fully separating subset always scores
//! exactly 100 and evaluations are independent. [`HybridMode::Shared`]
//! threads one state through the whole search in evaluation order; fully
//! separating subsets are then scored against the first one found, which
//! makes the result depend on evaluation order.

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;

use crate::dataset::{Dataset, FeatureSubset};
use crate::error::{Error, Result};
use crate::hybrid::HybridState;
use crate::measures::{self, SiCount};
use crate::neighbors::KdIndex;

/// Upper bound on subset evaluations for [`exhaustive_search`].
pub const MAX_EVALUATIONS: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Criterion {
    #[default]
    Si,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HybridMode {
    #[default]
    FreshPerSubset,
    Shared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub criterion: Criterion,
    /// Largest subset size considered; `None` means all features.
    pub max_dim: Option<usize>,
    pub hybrid_mode: HybridMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub subset: FeatureSubset,
    pub si_hits: usize,
    pub n: usize,
    pub si: f64,
    /// Absent for the SI criterion, or when a class is too small for a near-hit.
    pub hm: Option<f64>,
    pub hybrid: f64,
    pub score: f64,
    /// The hybrid criterion fell back to `100·si` because HM was undefined.
    pub hm_unavailable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub best_subset: FeatureSubset,
    pub best_score: f64,
    pub trace: Vec<Evaluation>,
}

/// Scores one subset, threading `state` when the criterion is the hybrid.
pub fn evaluate_subset(
    ds: &Dataset,
    subset: &FeatureSubset,
    state: HybridState,
    criterion: Criterion,
) -> Result<(Evaluation, HybridState)> {
    let projected = ds.project(subset)?;
    let index = KdIndex::build(&projected);
    let si = measures::si_from(&index)?;
    let mut state = state;

    let (hm, hybrid, hm_unavailable) = match criterion {
        Criterion::Si => (None, 100.0 * si.fraction(), false),
        Criterion::Hybrid => match measures::hm_from(&index) {
            Ok((hm, _)) => (Some(hm), state.step(si, hm)?.hybrid, false),
            Err(Error::SingletonClass { .. } | Error::SingleClass) => {
                // Below full separability the hybrid never reads HM; keep the
                // reset semantics. At full separability leave the state alone.
                if !si.is_full() {
                    state.step(si, 0.0)?;
                }
                (None, 100.0 * si.fraction(), true)
            }
            Err(e) => return Err(e),
        },
    };

    let eval = Evaluation {
        subset: subset.clone(),
        si_hits: si.hits,
        n: si.n,
        si: si.fraction(),
        hm,
        hybrid,
        score: hybrid,
        hm_unavailable,
    };
    Ok((eval, state))
}

fn resolve_max_dim(ds: &Dataset, max_dim: Option<usize>) -> Result<usize> {
    let m = max_dim.unwrap_or(ds.d());
    if m == 0 || m > ds.d() {
        return Err(Error::InvalidConfig(format!(
            "max_dim must be in 1..={}, got {m}",
            ds.d()
        )));
    }
    Ok(m)
}

/// Number of non-empty subsets of size at most `max_dim` out of `d`.
pub fn subset_count(d: usize, max_dim: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for k in 1..=max_dim.min(d) {
        binom = binom * (d - k + 1) as u128 / k as u128;
        total = total.saturating_add(binom);
    }
    total
}

/// Every non-empty subset of `0..d` with at most `max_dim` elements, by
/// size and then lexicographically.
fn enumerate_subsets(d: usize, max_dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=max_dim {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            out.push(combo.clone());
            let Some(pos) = (0..k).rev().find(|&p| combo[p] < d - k + p) else {
                break;
            };
            combo[pos] += 1;
            for q in pos + 1..k {
                combo[q] = combo[q - 1] + 1;
            }
        }
    }
    out
}

fn evaluate_all(
    ds: &Dataset,
    subsets: Vec<FeatureSubset>,
    criterion: Criterion,
    mode: HybridMode,
    state: &mut HybridState,
) -> Result<Vec<Evaluation>> {
    match (criterion, mode) {
        (Criterion::Hybrid, HybridMode::Shared) => subsets
            .iter()
            .map(|s| {
                let (eval, next) = evaluate_subset(ds, s, *state, criterion)?;
                *state = next;
                Ok(eval)
            })
            .collect(),
        _ => subsets
            .par_iter()
            .map(|s| evaluate_subset(ds, s, HybridState::new(), criterion).map(|(e, _)| e))
            .collect(),
    }
}

/// Highest score; ties go to the smaller subset, then the lexicographically
/// smaller sorted index set.
fn pick_best(trace: &[Evaluation]) -> Option<&Evaluation> {
    let key = |e: &Evaluation| {
        let mut idx = e.subset.indices().to_vec();
        idx.sort_unstable();
        (e.subset.len(), idx)
    };
    trace
        .iter()
        .reduce(|best, e| match e.score.total_cmp(&best.score) {
            Ordering::Greater => e,
            Ordering::Equal if key(e) < key(best) => e,
            _ => best,
        })
}

fn finish(trace: Vec<Evaluation>) -> SelectionResult {
    let best = pick_best(&trace).expect("search evaluates at least one subset");
    SelectionResult {
        best_subset: best.subset.clone(),
        best_score: best.score,
        trace,
    }
}

pub fn exhaustive_search(ds: &Dataset, options: SearchOptions) -> Result<SelectionResult> {
    let max_dim = resolve_max_dim(ds, options.max_dim)?;
    let count = subset_count(ds.d(), max_dim);
    if count > MAX_EVALUATIONS {
        return Err(Error::TooManySubsets {
            count,
            limit: MAX_EVALUATIONS,
        });
    }
    let subsets = enumerate_subsets(ds.d(), max_dim)
        .into_iter()
        .map(|idx| FeatureSubset::new(idx, ds.d()))
        .collect::<Result<Vec<_>>>()?;
    let mut state = HybridState::new();
    let trace = evaluate_all(
        ds,
        subsets,
        options.criterion,
        options.hybrid_mode,
        &mut state,
    )?;
    Ok(finish(trace))
}

/// Greedy forward selection. Each round adds the feature whose addition
/// scores highest (lowest index on ties) and stops once no addition
/// strictly improves on the current score.
pub fn greedy_forward_search(ds: &Dataset, options: SearchOptions) -> Result<SelectionResult> {
    let max_dim = resolve_max_dim(ds, options.max_dim)?;
    let mut state = HybridState::new();
    let mut selected: Vec<usize> = Vec::new();
    let mut current = f64::NEG_INFINITY;
    let mut trace = Vec::new();

    while selected.len() < max_dim {
        let candidates = (0..ds.d())
            .filter(|f| !selected.contains(f))
            .map(|f| {
                let mut idx = selected.clone();
                idx.push(f);
                idx.sort_unstable();
                FeatureSubset::new(idx, ds.d())
            })
            .collect::<Result<Vec<_>>>()?;
        let round = evaluate_all(
            ds,
            candidates,
            options.criterion,
            options.hybrid_mode,
            &mut state,
        )?;

        let mut winner: Option<&Evaluation> = None;
        for e in &round {
            if winner.is_none_or(|w| e.score > w.score) {
                winner = Some(e);
            }
        }
        let winner = winner.expect("at least one candidate remains").clone();
        trace.extend(round);

        if winner.score > current {
            current = winner.score;
            selected = winner.subset.indices().to_vec();
        } else {
            break;
        }
    }

    let result = finish(trace);
    debug_assert_eq!(result.best_subset.indices(), selected.as_slice());
    Ok(result)
}

/// Writes `subset,si,hm,hybrid,score` rows, then a `#` summary line.
pub fn write_selection_csv<W: Write>(result: &SelectionResult, mut out: W) -> std::io::Result<()> {
    writeln!(out, "subset,si,hm,hybrid,score")?;
    for e in &result.trace {
        let hm = e.hm.map(|v| v.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{},{}", e.subset, e.si, hm, e.hybrid, e.score)?;
    }
    writeln!(
        out,
        "# best_subset={} best_score={}",
        result.best_subset, result.best_score
    )?;
    out.flush()
}

impl Evaluation {
    pub fn si_count(&self) -> SiCount {
        SiCount {
            hits: self.si_hits,
            n: self.n,
        }
    }
}
