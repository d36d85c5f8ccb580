//! Incremental control laws with disturbance compensation.
//!
//! Both laws minimize the one-step quadratic cost
//! `J = |yd - y(k+1)|^2 + lambda |du(k)|^2` against the incremental
//! prediction of the plant, giving a closed-form input increment. The
//! compensation term `dw_next` is the disturbance increment the caller
//! resolved from its mode: the true generator increment, the observer's
//! pending increment, or zero.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::edlm::{Coefficients, PgVector, Pjm};
use crate::error::{Error, Result};
use crate::linalg;
use crate::signals::SampleHistory;

/// How the control law fills its disturbance-increment term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(rename_all = "snake_case")
)]
pub enum Compensation {
    /// Use the generator's exact increment `w(k+1) - w(k)`.
    TrueDisturbance,
    /// Use the observer's pending increment.
    EstimatedDisturbance,
    /// No compensation: the increment is taken as zero.
    None,
}

impl Compensation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Compensation::TrueDisturbance => "true_disturbance",
            Compensation::EstimatedDisturbance => "estimated_disturbance",
            Compensation::None => "none",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "true_disturbance" => Ok(Compensation::TrueDisturbance),
            "estimated_disturbance" => Ok(Compensation::EstimatedDisturbance),
            "none" => Ok(Compensation::None),
            other => Err(Error::ConfigInvalid(alloc::format!(
                "unknown compensation mode: {other}"
            ))),
        }
    }
}

impl core::fmt::Display for Compensation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Control-law parameters for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ControllerConfig {
    /// Input-increment weight. Nonnegative except in the dedicated
    /// steady-error table mode, which also exercises a small negative value.
    pub lambda: f64,
    pub l_y: usize,
    pub l_u: usize,
    pub compensation: Compensation,
    /// Observer gain, used only under estimated compensation.
    pub observer_gain: f64,
}

impl ControllerConfig {
    pub fn validate(&self, allow_negative_lambda: bool) -> Result<()> {
        if self.lambda < 0.0 && !allow_negative_lambda {
            return Err(Error::ConfigInvalid(String::from(
                "negative lambda is only permitted in the steady-error table mode",
            )));
        }
        if self.l_u < 1 {
            return Err(Error::InvalidOrders {
                l_y: self.l_y,
                l_u: self.l_u,
            });
        }
        if !(0.0..=2.0).contains(&self.observer_gain) {
            return Err(Error::GainOutOfRange {
                gain: self.observer_gain,
            });
        }
        Ok(())
    }
}

/// Quadratic cost `|yd - y_pred|^2 + lambda |du|^2`.
pub fn cost(yd: &[f64], y_pred: &[f64], du: &[f64], lambda: f64) -> Result<f64> {
    if yd.len() != y_pred.len() {
        return Err(Error::DimensionMismatch {
            expected: yd.len(),
            got: y_pred.len(),
        });
    }
    let track: f64 = yd
        .iter()
        .zip(y_pred.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    let effort: f64 = du.iter().map(|d| d * d).sum();
    Ok(track + lambda * effort)
}

/// Signal increment `back` steps behind `k`, zero before the history start.
fn lag_delta(
    history: &SampleHistory,
    output_side: bool,
    k: usize,
    back: usize,
) -> Result<Vec<f64>> {
    let dim = if output_side {
        history.m_y()
    } else {
        history.m_u()
    };
    let lag = k as i64 - back as i64;
    if lag < history.start_index() as i64 {
        return Ok(vec![0.0; dim]);
    }
    if output_side {
        history.delta_y(lag as usize)
    } else {
        history.delta_u(lag as usize)
    }
}

/// The feedback bracket shared by both laws:
/// `yd - y(k) - sum_i phi_i dy(k-i+1) - sum_j phi_j du(k-j+1) - dw_next`.
fn control_bracket(
    coeffs: &Coefficients,
    history: &SampleHistory,
    k: usize,
    yd_next: &[f64],
    dw_next: &[f64],
) -> Result<Vec<f64>> {
    let y_k = history.y(k)?;
    if yd_next.len() != y_k.len() || dw_next.len() != y_k.len() {
        return Err(Error::DimensionMismatch {
            expected: y_k.len(),
            got: yd_next.len(),
        });
    }
    let mut bracket: Vec<f64> = yd_next
        .iter()
        .zip(y_k.iter())
        .zip(dw_next.iter())
        .map(|((yd, y), dw)| yd - y - dw)
        .collect();
    match coeffs {
        Coefficients::Pg(pg) => {
            for (i, c) in pg.phi_y().iter().enumerate() {
                let d = lag_delta(history, true, k, i)?;
                bracket[0] -= c * d[0];
            }
            for (j, c) in pg.phi_u().iter().enumerate().skip(1) {
                let d = lag_delta(history, false, k, j)?;
                bracket[0] -= c * d[0];
            }
        }
        Coefficients::Pjm(p) => {
            for (i, block) in p.phi_y_blocks().iter().enumerate() {
                let d = lag_delta(history, true, k, i)?;
                let t = block.mul_vec(&d);
                for (b, v) in bracket.iter_mut().zip(t.iter()) {
                    *b -= v;
                }
            }
            for (j, block) in p.phi_u_blocks().iter().enumerate().skip(1) {
                let d = lag_delta(history, false, k, j)?;
                let t = block.mul_vec(&d);
                for (b, v) in bracket.iter_mut().zip(t.iter()) {
                    *b -= v;
                }
            }
        }
    }
    Ok(bracket)
}

/// Scalar law: `du = phi_g / (lambda + phi_g^2) * bracket`.
pub fn siso_control(
    pg: &PgVector,
    history: &SampleHistory,
    k: usize,
    yd_next: f64,
    dw_next: f64,
    cfg: &ControllerConfig,
) -> Result<f64> {
    let g = pg.gain();
    let denom = cfg.lambda + g * g;
    if libm::fabs(denom) <= 1e-12 {
        return Err(Error::SingularGain);
    }
    let coeffs = Coefficients::Pg(pg.clone());
    let bracket = control_bracket(&coeffs, history, k, &[yd_next], &[dw_next])?;
    Ok(g / denom * bracket[0])
}

/// Vector law: solve `(Phi^T Phi + lambda I) du = Phi^T bracket` directly.
pub fn mimo_control(
    pjm: &Pjm,
    history: &SampleHistory,
    k: usize,
    yd_next: &[f64],
    dw_next: &[f64],
    cfg: &ControllerConfig,
) -> Result<Vec<f64>> {
    let phi = pjm.gain_block();
    let coeffs = Coefficients::Pjm(pjm.clone());
    let bracket = control_bracket(&coeffs, history, k, yd_next, dw_next)?;
    let phi_t = phi.transpose();
    let mut normal = phi_t.matmul(phi);
    for i in 0..normal.rows() {
        normal[(i, i)] += cfg.lambda;
    }
    let rhs = phi_t.mul_vec(&bracket);
    linalg::solve(&normal, &rhs)
}

/// Increment for either plant family; scalar results come back as a
/// one-element vector.
pub fn control_increment(
    coeffs: &Coefficients,
    history: &SampleHistory,
    k: usize,
    yd_next: &[f64],
    dw_next: &[f64],
    cfg: &ControllerConfig,
) -> Result<Vec<f64>> {
    match coeffs {
        Coefficients::Pg(pg) => Ok(vec![siso_control(
            pg, history, k, yd_next[0], dw_next[0], cfg,
        )?]),
        Coefficients::Pjm(p) => mimo_control(p, history, k, yd_next, dw_next, cfg),
    }
}

/// Predicted output one step ahead for a candidate increment.
fn predict_for(
    coeffs: &Coefficients,
    history: &SampleHistory,
    k: usize,
    dw_next: &[f64],
    du: &[f64],
) -> Result<Vec<f64>> {
    let y_k = history.y(k)?;
    let mut pred: Vec<f64> = y_k.iter().zip(dw_next.iter()).map(|(y, w)| y + w).collect();
    match coeffs {
        Coefficients::Pg(pg) => {
            for (i, c) in pg.phi_y().iter().enumerate() {
                pred[0] += c * lag_delta(history, true, k, i)?[0];
            }
            pred[0] += pg.gain() * du[0];
            for (j, c) in pg.phi_u().iter().enumerate().skip(1) {
                pred[0] += c * lag_delta(history, false, k, j)?[0];
            }
        }
        Coefficients::Pjm(p) => {
            for (i, block) in p.phi_y_blocks().iter().enumerate() {
                let t = block.mul_vec(&lag_delta(history, true, k, i)?);
                for (a, b) in pred.iter_mut().zip(t.iter()) {
                    *a += b;
                }
            }
            let t = p.gain_block().mul_vec(du);
            for (a, b) in pred.iter_mut().zip(t.iter()) {
                *a += b;
            }
            for (j, block) in p.phi_u_blocks().iter().enumerate().skip(1) {
                let t = block.mul_vec(&lag_delta(history, false, k, j)?);
                for (a, b) in pred.iter_mut().zip(t.iter()) {
                    *a += b;
                }
            }
        }
    }
    Ok(pred)
}

/// Verify that `du_star` is a coordinate-wise local minimum of the cost:
/// probing each direction by `+/- delta` must not lower `J` by more than
/// 1e-12.
pub fn optimality_check(
    coeffs: &Coefficients,
    history: &SampleHistory,
    k: usize,
    yd_next: &[f64],
    dw_next: &[f64],
    lambda: f64,
    du_star: &[f64],
    delta: f64,
) -> Result<bool> {
    let j_star = cost(
        yd_next,
        &predict_for(coeffs, history, k, dw_next, du_star)?,
        du_star,
        lambda,
    )?;
    let mut probe = du_star.to_vec();
    for i in 0..du_star.len() {
        for sign in [1.0, -1.0] {
            probe[i] = du_star[i] + sign * delta;
            let j_probe = cost(
                yd_next,
                &predict_for(coeffs, history, k, dw_next, &probe)?,
                &probe,
                lambda,
            )?;
            if j_probe < j_star - 1e-12 {
                return Ok(false);
            }
        }
        probe[i] = du_star[i];
    }
    Ok(true)
}
