//! First-order disturbance estimator.
//!
//! The measured disturbance is the model residual `w(k) = y(k) - f(phi(k-1))`
//! and the estimate follows `w_hat(k+1) = w_hat(k) - L [w_hat(k) - w(k)]`,
//! stable for gains in [0, 2]. With unit gain the estimate is exactly the
//! one-step-lagged measurement.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::plants::{self, PlantId};
use crate::signals::SampleHistory;

/// Estimator state: current estimate and per-coordinate gains.
#[derive(Debug, Clone, PartialEq)]
pub struct ObserverState {
    w_hat: Vec<f64>,
    gain: Vec<f64>,
}

impl ObserverState {
    /// Per-coordinate gains, each required to lie in [0, 2].
    pub fn new(gains: Vec<f64>) -> Result<Self> {
        for &g in &gains {
            if !(0.0..=2.0).contains(&g) {
                return Err(Error::GainOutOfRange { gain: g });
            }
        }
        let dim = gains.len();
        Ok(ObserverState {
            w_hat: vec![0.0; dim],
            gain: gains,
        })
    }

    /// One shared gain across all coordinates.
    pub fn uniform(dim: usize, gain: f64) -> Result<Self> {
        Self::new(vec![gain; dim])
    }

    pub fn w_hat(&self) -> &[f64] {
        &self.w_hat
    }

    pub fn gain(&self) -> &[f64] {
        &self.gain
    }

    /// The estimate the next update would produce. Evaluated in the blended
    /// form `(1 - L) w_hat + L w`, which at unit gain reduces to exactly the
    /// measurement.
    fn next_estimate(&self, w_measured: &[f64]) -> Result<Vec<f64>> {
        if w_measured.len() != self.w_hat.len() {
            return Err(Error::LengthMismatch {
                expected: self.w_hat.len(),
                got: w_measured.len(),
            });
        }
        Ok(self
            .w_hat
            .iter()
            .zip(self.gain.iter())
            .zip(w_measured.iter())
            .map(|((wh, l), w)| (1.0 - l) * wh + l * w)
            .collect())
    }

    /// The estimate increment the next update would apply:
    /// `w_hat(k+1) - w_hat(k)`.
    pub fn pending_increment(&self, w_measured: &[f64]) -> Result<Vec<f64>> {
        let next = self.next_estimate(w_measured)?;
        Ok(next
            .iter()
            .zip(self.w_hat.iter())
            .map(|(n, c)| n - c)
            .collect())
    }

    /// Advance to `w_hat(k+1)`.
    pub fn step(&mut self, w_measured: &[f64]) -> Result<()> {
        self.w_hat = self.next_estimate(w_measured)?;
        Ok(())
    }
}

/// Model residual `w(k) = y(k) - f(phi(k-1))`.
pub fn residual_disturbance(plant: PlantId, history: &SampleHistory, k: usize) -> Result<Vec<f64>> {
    if k <= history.start_index() {
        return Err(Error::MissingSamples { index: k });
    }
    let f = plants::eval_f(plant, history, k - 1)?;
    let y = history.y(k)?;
    Ok(y.iter().zip(f.iter()).map(|(a, b)| a - b).collect())
}
