//! Stateful hybrid separability measure.
//!
//! While the separability index is below one the hybrid value is simply
//! `100·si`. The first evaluation at full separability captures its
//! hypothesis margin as the reference `ih`; that and every following
//! full-separability evaluation reports `100·hm/ih`, so the value keeps
//! growing past 100 as the classes move further apart. Any evaluation below
//! full separability resets the state, and the next one at full separability
//! captures a fresh reference.
//!
//! Records carry an `epoch`: 0 below full separability, otherwise the
//! ordinal of the capture whose reference they are divided by. Values from
//! different epochs use different references and are not comparable.

use crate::error::{Error, Result};
use crate::measures::SiCount;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HybridState {
    counter: u64,
    reference: Option<f64>,
    captures: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridRecord {
    pub si: f64,
    pub hm: f64,
    pub hm_ratio: f64,
    pub hybrid: f64,
    pub epoch: u64,
}

impl HybridState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Consecutive full-separability evaluations since the last reset.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Captured reference margin `ih`, present iff `counter() >= 1`.
    pub fn reference(&self) -> Option<f64> {
        self.reference
    }

    /// Number of references captured so far, across resets.
    pub fn epoch(&self) -> u64 {
        self.captures
    }

    /// Folds one evaluation into the state. On error the state is unchanged.
    pub fn step(&mut self, si: SiCount, hm: f64) -> Result<HybridRecord> {
        let fraction = si.fraction();
        if !si.is_full() {
            self.counter = 0;
            self.reference = None;
            return Ok(HybridRecord {
                si: fraction,
                hm,
                hm_ratio: 0.0,
                hybrid: 100.0 * fraction,
                epoch: 0,
            });
        }

        if !(hm >= 0.0) || !hm.is_finite() {
            return Err(Error::InconsistentMargin { hm });
        }
        let (reference, captures) = match self.reference {
            Some(ih) => (ih, self.captures),
            None => (hm, self.captures + 1),
        };
        if reference == 0.0 {
            return Err(Error::DegenerateReference);
        }
        let hm_ratio = hm / reference;

        self.counter += 1;
        self.reference = Some(reference);
        self.captures = captures;
        Ok(HybridRecord {
            si: fraction,
            hm,
            hm_ratio,
            hybrid: 100.0 * hm_ratio,
            epoch: captures,
        })
    }
}

/// Functional form of [`HybridState::step`].
pub fn hybrid_step(
    state: HybridState,
    si_hits: usize,
    n: usize,
    hm: f64,
) -> Result<(HybridState, HybridRecord)> {
    let mut next = state;
    let record = next.step(SiCount::new(si_hits, n)?, hm)?;
    Ok((next, record))
}

/// Folds `(si_hits, n, hm)` triples through a fresh state, in order.
pub fn hybrid_sequence(steps: &[(usize, usize, f64)]) -> Result<Vec<HybridRecord>> {
    let mut state = HybridState::new();
    steps
        .iter()
        .enumerate()
        .map(|(position, &(hits, n, hm))| {
            SiCount::new(hits, n)
                .and_then(|si| state.step(si, hm))
                .map_err(|e| Error::AtPosition {
                    position,
                    source: Box::new(e),
                })
        })
        .collect()
}
