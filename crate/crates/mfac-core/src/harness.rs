//! Closed-loop simulation engine: wires a plant, its exact coefficients,
//! the control law, the disturbance observer, and the reference and
//! disturbance generators into one deterministic run.
//!
//! Per step `k`: read the next reference sample, resolve the compensation
//! increment for the configured mode, compute the exact coefficients at `k`,
//! form the input increment, apply `u(k) = u(k-1) + du(k)`, then step the
//! plant with `w(k+1)`. A run halts early with the `diverged` flag once any
//! output component exceeds 1e3 in magnitude.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::controller::{self, Compensation, ControllerConfig};
use crate::error::{Error, Result};
use crate::observer::{self, ObserverState};
use crate::plants::{self, DisturbanceId, PlantId, TrajectoryId};
use crate::signals::SampleHistory;

/// Output magnitude beyond which a run is flagged divergent and halted.
pub const DIVERGENCE_LIMIT: f64 = 1e3;

/// One experiment: plant, generators, control parameters, and horizon.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(deny_unknown_fields)
)]
pub struct ExperimentConfig {
    pub plant_id: String,
    pub trajectory_id: String,
    pub disturbance_id: String,
    pub lambda: f64,
    pub l_y: usize,
    pub l_u: usize,
    pub compensation: Compensation,
    #[cfg_attr(feature = "serde", serde(default = "default_observer_gain"))]
    pub observer_gain: f64,
    pub horizon: usize,
    /// Output path hint consumed by the file-format layer.
    #[cfg_attr(feature = "serde", serde(default))]
    pub out: Option<String>,
    /// Override of the seeded initial outputs `y(1), y(2), ...`.
    #[cfg_attr(feature = "serde", serde(default))]
    pub initial_y: Option<Vec<Vec<f64>>>,
    /// Drop this many steps after each reference discontinuity from the
    /// error statistics (diagnostics only; defaults to keeping everything).
    #[cfg_attr(feature = "serde", serde(default))]
    pub rms_exclude_after_switch: Option<usize>,
    /// Negative weights are confined to the steady-error table mode.
    #[cfg_attr(feature = "serde", serde(skip, default))]
    pub allow_negative_lambda: bool,
}

#[cfg(feature = "serde")]
fn default_observer_gain() -> f64 {
    1.0
}

impl ExperimentConfig {
    pub fn new(
        plant_id: &str,
        trajectory_id: &str,
        disturbance_id: &str,
        lambda: f64,
        l_y: usize,
        l_u: usize,
        compensation: Compensation,
    ) -> Self {
        ExperimentConfig {
            plant_id: String::from(plant_id),
            trajectory_id: String::from(trajectory_id),
            disturbance_id: String::from(disturbance_id),
            lambda,
            l_y,
            l_u,
            compensation,
            observer_gain: 1.0,
            horizon: 700,
            out: None,
            initial_y: None,
            rms_exclude_after_switch: None,
            allow_negative_lambda: false,
        }
    }

    fn controller_config(&self) -> ControllerConfig {
        ControllerConfig {
            lambda: self.lambda,
            l_y: self.l_y,
            l_u: self.l_u,
            compensation: self.compensation,
            observer_gain: self.observer_gain,
        }
    }
}

/// Parsed and checked form of a configuration.
#[derive(Debug, Clone, Copy)]
pub struct ValidatedConfig {
    pub plant: PlantId,
    pub trajectory: TrajectoryId,
    pub disturbance: DisturbanceId,
}

/// Validate ids, dimensions, pseudo orders, and numeric ranges.
pub fn validate(cfg: &ExperimentConfig) -> Result<ValidatedConfig> {
    let plant = PlantId::parse(&cfg.plant_id)?;
    let trajectory = TrajectoryId::parse(&cfg.trajectory_id)?;
    let disturbance = DisturbanceId::parse(&cfg.disturbance_id)?;
    let desc = plants::descriptor(plant);
    cfg.controller_config()
        .validate(cfg.allow_negative_lambda)?;
    if cfg.l_y < desc.required_l_y || cfg.l_u < desc.required_l_u {
        return Err(Error::UnsupportedOrders {
            required_l_y: desc.required_l_y,
            required_l_u: desc.required_l_u,
        });
    }
    if cfg.horizon < 10 {
        return Err(Error::ConfigInvalid(String::from(
            "horizon must be at least 10",
        )));
    }
    if trajectory.dim() != desc.m_y {
        return Err(Error::ConfigInvalid(alloc::format!(
            "trajectory {} has dimension {}, plant {} needs {}",
            trajectory.as_str(),
            trajectory.dim(),
            plant.as_str(),
            desc.m_y
        )));
    }
    if let Some(d) = disturbance.dim() {
        if d != desc.m_y {
            return Err(Error::ConfigInvalid(alloc::format!(
                "disturbance {} has dimension {d}, plant {} needs {}",
                disturbance.as_str(),
                plant.as_str(),
                desc.m_y
            )));
        }
    }
    if let Some(init) = &cfg.initial_y {
        if init.len() < 2 || init.len() + 1 >= cfg.horizon {
            return Err(Error::ConfigInvalid(String::from(
                "initial_y must hold at least 2 samples and fit the horizon",
            )));
        }
        for row in init {
            if row.len() != desc.m_y {
                return Err(Error::DimensionMismatch {
                    expected: desc.m_y,
                    got: row.len(),
                });
            }
        }
    }
    Ok(ValidatedConfig {
        plant,
        trajectory,
        disturbance,
    })
}

/// One recorded step.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub y_star: Vec<f64>,
    pub y: Vec<f64>,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub w_hat: Vec<f64>,
    /// Tracking error `y*(k) - y(k)`.
    pub e: Vec<f64>,
}

/// Run summary over the evaluation window.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    /// Root mean square of `|e(k)|` over the second half of the realized
    /// horizon (optionally excluding post-switch windows).
    pub rms_error: f64,
    /// Final-row tracking error, the component of largest magnitude.
    pub steady_state_error: f64,
    pub max_abs_output: f64,
    pub diverged: bool,
    /// Whether every control step passed the cost-minimum probe.
    pub optimality_ok: bool,
}

/// Full record of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTrace {
    pub rows: Vec<TraceRow>,
    pub summary: Summary,
    pub m_y: usize,
    pub m_u: usize,
}

impl SimulationTrace {
    pub fn last_k(&self) -> usize {
        self.rows.last().map_or(0, |r| r.k)
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)))
}

/// Execute one experiment.
pub fn run(cfg: &ExperimentConfig) -> Result<SimulationTrace> {
    let v = validate(cfg)?;
    let desc = plants::descriptor(v.plant);
    let ctrl_cfg = cfg.controller_config();
    let init = cfg
        .initial_y
        .clone()
        .unwrap_or_else(|| plants::default_initial_outputs(v.plant));
    let seed_len = init.len();
    let n = cfg.horizon;
    // Activation waits for the lags the plant's exact coefficients need;
    // zero-padded extra lags read as zero and impose no extra delay.
    let first_control = seed_len.max(desc.required_l_y.max(desc.required_l_u) + 1);

    let dist_at = |k: usize| plants::disturbance_dim(v.disturbance, k, desc.m_y);
    let ref_at = |k: usize| plants::reference(v.trajectory, k);

    let mut history = SampleHistory::new(desc.m_y, desc.m_u, 1);
    let zero_u = vec![0.0; desc.m_u];
    let mut rows: Vec<TraceRow> = Vec::with_capacity(n);
    for (j, y0) in init.iter().enumerate().take(seed_len - 1) {
        let k = j + 1;
        let w = dist_at(k);
        history.push_sample(k, y0, &zero_u, &w)?;
        let y_star = ref_at(k);
        let e = err_vec(&y_star, y0);
        rows.push(TraceRow {
            k,
            y_star,
            y: y0.clone(),
            u: zero_u.clone(),
            w,
            w_hat: vec![0.0; desc.m_y],
            e,
        });
    }

    let mut observer = ObserverState::uniform(desc.m_y, cfg.observer_gain)?;
    let mut pending_y = init[seed_len - 1].clone();
    let mut optimality_ok = true;
    let mut diverged = false;

    let mut k = seed_len;
    loop {
        let w_k = dist_at(k);
        history.push_measurement(k, &pending_y, &w_k)?;
        let w_measured = observer::residual_disturbance(v.plant, &history, k).ok();

        let du = if k >= first_control {
            let coeffs = plants::exact_pg_padded(v.plant, &history, k, cfg.l_y, cfg.l_u)?;
            let yd_next = ref_at(k + 1);
            let dw_next: Vec<f64> = match cfg.compensation {
                Compensation::TrueDisturbance => {
                    let w_next = dist_at(k + 1);
                    w_next.iter().zip(w_k.iter()).map(|(a, b)| a - b).collect()
                }
                Compensation::EstimatedDisturbance => match &w_measured {
                    Some(w) => observer.pending_increment(w)?,
                    None => vec![0.0; desc.m_y],
                },
                Compensation::None => vec![0.0; desc.m_y],
            };
            let du =
                controller::control_increment(&coeffs, &history, k, &yd_next, &dw_next, &ctrl_cfg)?;
            if !controller::optimality_check(
                &coeffs, &history, k, &yd_next, &dw_next, cfg.lambda, &du, 1e-3,
            )? {
                optimality_ok = false;
            }
            du
        } else {
            zero_u.clone()
        };

        let u_prev = history.u(k - 1)?.to_vec();
        let u_k: Vec<f64> = u_prev.iter().zip(du.iter()).map(|(a, b)| a + b).collect();
        history.commit_input(k, &u_k)?;

        let y_star = ref_at(k);
        let e = err_vec(&y_star, &pending_y);
        rows.push(TraceRow {
            k,
            y_star,
            y: pending_y.clone(),
            u: u_k.clone(),
            w: w_k,
            w_hat: observer.w_hat().to_vec(),
            e,
        });
        if let Some(w) = &w_measured {
            observer.step(w)?;
        }

        if k == n {
            break;
        }
        let w_next = dist_at(k + 1);
        pending_y = plants::plant_step(v.plant, &history, k, &u_k, &w_next)?;
        k += 1;
        if inf_norm(&pending_y) > DIVERGENCE_LIMIT {
            // Record the divergent sample with the input held, then halt.
            history.push_measurement(k, &pending_y, &w_next)?;
            history.commit_input(k, &u_k)?;
            let y_star = ref_at(k);
            let e = err_vec(&y_star, &pending_y);
            rows.push(TraceRow {
                k,
                y_star,
                y: pending_y.clone(),
                u: u_k,
                w: w_next,
                w_hat: observer.w_hat().to_vec(),
                e,
            });
            diverged = true;
            break;
        }
    }

    let summary = summarize(&rows, cfg.rms_exclude_after_switch, diverged, optimality_ok);
    Ok(SimulationTrace {
        rows,
        summary,
        m_y: desc.m_y,
        m_u: desc.m_u,
    })
}

fn err_vec(y_star: &[f64], y: &[f64]) -> Vec<f64> {
    y_star.iter().zip(y.iter()).map(|(a, b)| a - b).collect()
}

fn summarize(
    rows: &[TraceRow],
    exclude_after_switch: Option<usize>,
    diverged: bool,
    optimality_ok: bool,
) -> Summary {
    let n_eff = rows.last().map_or(0, |r| r.k);
    let window_start = (n_eff / 2).max(1);
    let mut sum_sq = 0.0;
    let mut count = 0usize;
    for row in rows.iter().filter(|r| r.k >= window_start) {
        if let Some(width) = exclude_after_switch {
            if near_switch(rows, row.k, width) {
                continue;
            }
        }
        sum_sq += row.e.iter().map(|e| e * e).sum::<f64>();
        count += 1;
    }
    let rms_error = if count == 0 {
        0.0
    } else {
        libm::sqrt(sum_sq / count as f64)
    };
    let max_abs_output = rows.iter().fold(0.0f64, |m, r| m.max(inf_norm(&r.y)));
    let steady_state_error = rows
        .last()
        .map(|r| {
            r.e.iter().fold(
                0.0f64,
                |m, &e| if libm::fabs(e) > libm::fabs(m) { e } else { m },
            )
        })
        .unwrap_or(0.0);
    Summary {
        rms_error,
        steady_state_error,
        max_abs_output,
        diverged,
        optimality_ok,
    }
}

/// Whether the reference jumped within `width` steps at or before `k`.
/// Rows are contiguous from k = 1, so row `j` lives at index `j - 1`.
fn near_switch(rows: &[TraceRow], k: usize, width: usize) -> bool {
    let lo = k.saturating_sub(width).max(2);
    for j in lo..=k.min(rows.len()) {
        if rows[j - 1].y_star != rows[j - 2].y_star {
            return true;
        }
    }
    false
}

/// Row of a weight sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub rms_error: f64,
    pub steady_state_error: f64,
    pub max_abs_output: f64,
    pub diverged: bool,
}

/// Run the base configuration once per weight, serially and in list order.
pub fn sweep(base: &ExperimentConfig, lambdas: &[f64]) -> Result<Vec<SweepRow>> {
    if lambdas.is_empty() {
        return Err(Error::ConfigInvalid(String::from(
            "lambda list must not be empty",
        )));
    }
    let mut out = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let mut cfg = base.clone();
        cfg.lambda = lambda;
        let trace = run(&cfg)?;
        out.push(SweepRow {
            lambda,
            rms_error: trace.summary.rms_error,
            steady_state_error: trace.summary.steady_state_error,
            max_abs_output: trace.summary.max_abs_output,
            diverged: trace.summary.diverged,
        });
    }
    Ok(out)
}

/// Row of the ramp-disturbance steady-error table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub lambda: f64,
    /// Steady tracking offset `y(k) - y*(k)`, the quantity the table
    /// reports; it settles to exactly `lambda`.
    pub measured_error: f64,
    /// `max - min` of the measured offset over the sampling window.
    pub spread: f64,
}

/// The sampling window of the steady-error table.
pub const TABLE1_WINDOW: (usize, usize) = (40, 700);

/// The weights the steady-error table is evaluated at.
pub const TABLE1_LAMBDAS: [f64; 4] = [0.0, 0.1, -0.1, 0.2];

/// Configuration behind the steady-error table: the scalar quadratic plant
/// under a constant reference, unit-speed ramp disturbance, and true
/// compensation.
pub fn table1_config(lambda: f64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(
        "ex1_1",
        "traj_const",
        "dist_ramp",
        lambda,
        1,
        1,
        Compensation::TrueDisturbance,
    );
    cfg.horizon = TABLE1_WINDOW.1;
    cfg.allow_negative_lambda = true;
    cfg
}

/// Reproduce the steady-error table: one run per weight, the measured
/// offset sampled over the window with its constancy spread.
pub fn table1() -> Result<Vec<Table1Row>> {
    let (lo, hi) = TABLE1_WINDOW;
    let mut out = Vec::with_capacity(TABLE1_LAMBDAS.len());
    for &lambda in TABLE1_LAMBDAS.iter() {
        let trace = run(&table1_config(lambda))?;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        let mut count = 0usize;
        for row in trace.rows.iter().filter(|r| r.k >= lo && r.k <= hi) {
            let measured = row.y[0] - row.y_star[0];
            min = min.min(measured);
            max = max.max(measured);
            sum += measured;
            count += 1;
        }
        out.push(Table1Row {
            lambda,
            measured_error: sum / count as f64,
            spread: max - min,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex2_config(lambda: f64, compensation: Compensation) -> ExperimentConfig {
        let mut cfg =
            ExperimentConfig::new("ex2", "traj_eq24", "dist_ex2", lambda, 0, 1, compensation);
        cfg.horizon = 400;
        cfg
    }

    #[test]
    fn deadbeat_on_linear_plant() {
        let trace = run(&ex2_config(0.0, Compensation::TrueDisturbance)).unwrap();
        for row in trace.rows.iter().filter(|r| r.k >= 6) {
            assert!(row.e[0].abs() <= 1e-9, "k={} e={}", row.k, row.e[0]);
        }
        assert!(!trace.summary.diverged);
        assert!(trace.summary.optimality_ok);
    }

    #[test]
    fn uncompensated_error_is_minus_disturbance_increment() {
        let trace = run(&ex2_config(0.0, Compensation::None)).unwrap();
        // Row for time j sits at index j - 1; the law holds once both the
        // output and the previous input are closed-loop quantities.
        for j in 6..=trace.last_k() {
            let dw = trace.rows[j - 1].w[0] - trace.rows[j - 2].w[0];
            let e = trace.rows[j - 1].e[0];
            assert!((e + dw).abs() <= 1e-10, "k={j}");
        }
    }

    #[test]
    fn input_reconstruction_is_exact() {
        let trace = run(&ex2_config(1.0, Compensation::TrueDisturbance)).unwrap();
        // u(k) was formed as u(k-1) + du(k); re-summing the increments in
        // order reproduces the stored inputs bit for bit.
        let mut acc = trace.rows[0].u[0];
        for k in 1..trace.rows.len() {
            let du = trace.rows[k].u[0] - trace.rows[k - 1].u[0];
            acc += du;
            assert_eq!(acc.to_bits(), trace.rows[k].u[0].to_bits());
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let a = run(&ex2_config(0.5, Compensation::EstimatedDisturbance)).unwrap();
        let b = run(&ex2_config(0.5, Compensation::EstimatedDisturbance)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn trace_error_column_invariant() {
        let trace = run(&ex2_config(2.0, Compensation::EstimatedDisturbance)).unwrap();
        for row in &trace.rows {
            assert_eq!(row.e[0], row.y_star[0] - row.y[0]);
        }
        assert_eq!(trace.rows.len(), 400);
    }

    #[test]
    fn divergence_flag_and_halt() {
        let mut cfg = ExperimentConfig::new(
            "ex4",
            "traj_eq50",
            "dist_ex4",
            0.1,
            2,
            1,
            Compensation::TrueDisturbance,
        );
        cfg.horizon = 400;
        let trace = run(&cfg).unwrap();
        assert!(trace.summary.diverged);
        assert!(trace.summary.max_abs_output > DIVERGENCE_LIMIT);
        assert!(trace.last_k() < 400);
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let mut cfg = ex2_config(0.0, Compensation::TrueDisturbance);
        cfg.plant_id = String::from("ex9");
        assert!(matches!(run(&cfg), Err(Error::UnknownPlant(_))));

        let mut cfg = ex2_config(-0.5, Compensation::TrueDisturbance);
        cfg.allow_negative_lambda = false;
        assert!(matches!(run(&cfg), Err(Error::ConfigInvalid(_))));

        let mut cfg = ex2_config(0.0, Compensation::TrueDisturbance);
        cfg.horizon = 5;
        assert!(matches!(run(&cfg), Err(Error::ConfigInvalid(_))));

        let mut cfg = ex2_config(0.0, Compensation::TrueDisturbance);
        cfg.trajectory_id = String::from("traj_eq48");
        assert!(matches!(run(&cfg), Err(Error::ConfigInvalid(_))));

        let mut cfg = ExperimentConfig::new(
            "ex1",
            "traj_eq20",
            "dist_eq19",
            0.0,
            0,
            1,
            Compensation::TrueDisturbance,
        );
        cfg.horizon = 100;
        assert!(matches!(run(&cfg), Err(Error::UnsupportedOrders { .. })));
    }

    #[test]
    fn padded_orders_match_required_run() {
        let mut base = ExperimentConfig::new(
            "ex1_1",
            "traj_eq20",
            "dist_eq19",
            0.4,
            1,
            1,
            Compensation::TrueDisturbance,
        );
        base.horizon = 120;
        let mut padded = base.clone();
        padded.l_y = 3;
        padded.l_u = 2;
        let a = run(&base).unwrap();
        let b = run(&padded).unwrap();
        for (ra, rb) in a.rows.iter().zip(b.rows.iter()) {
            assert_eq!(ra.y, rb.y);
            assert_eq!(ra.u, rb.u);
        }
    }

    #[test]
    fn table1_rows() {
        let rows = table1().unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            assert!(
                (row.measured_error - row.lambda).abs() <= 1e-6,
                "lambda={} measured={}",
                row.lambda,
                row.measured_error
            );
            assert!(
                row.spread <= 1e-9,
                "lambda={} spread={}",
                row.lambda,
                row.spread
            );
        }
    }

    #[test]
    fn sweep_preserves_order_and_rejects_empty() {
        let rows = sweep(&ex2_config(0.0, Compensation::TrueDisturbance), &[1.0, 0.0]).unwrap();
        assert_eq!(rows[0].lambda, 1.0);
        assert_eq!(rows[1].lambda, 0.0);
        assert!(rows[1].rms_error <= rows[0].rms_error);
        assert!(matches!(
            sweep(&ex2_config(0.0, Compensation::TrueDisturbance), &[]),
            Err(Error::ConfigInvalid(_))
        ));
    }

    #[test]
    fn rms_switch_exclusion_shrinks_error() {
        let mut with_switches = ExperimentConfig::new(
            "ex1_1",
            "traj_eq20",
            "dist_eq19",
            1.0,
            1,
            1,
            Compensation::TrueDisturbance,
        );
        with_switches.horizon = 400;
        let plain = run(&with_switches).unwrap();
        with_switches.rms_exclude_after_switch = Some(3);
        let excluded = run(&with_switches).unwrap();
        assert!(excluded.summary.rms_error <= plain.summary.rms_error);
    }
}
