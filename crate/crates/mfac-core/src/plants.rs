//! Registry of example plants with exact step dynamics, closed-form
//! coefficient suppliers, and deterministic reference/disturbance generators.
//!
//! Coefficients come from finite-increment algebra (`a^n - b^n` factored
//! against the increment), equivalently the terminating Taylor series of the
//! polynomial plant maps, so the incremental identity holds to machine
//! precision at every operating point. Trajectory generators evaluate their
//! defining expression at the queried 1-based index; disturbance generators
//! are phased so that `w(k+1)` equals the printed formula at argument `k`,
//! i.e. `w(j)` uses `j - 1`. `round` is half-away-from-zero, fixed so traces
//! are bit-reproducible.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::edlm::{assemble_pg, taylor_eps_scalar, Coefficients, Pjm, TaylorRemainder};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::signals::SampleHistory;

/// Identifiers of the registered plants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlantId {
    /// SISO nonlinear: `y(k+1) = -y^2(k) + u(k) + 0.2 u^2(k-1) + w(k+1)`.
    Ex1,
    /// SISO nonlinear: `y(k+1) = -y^2(k) + u(k) + w(k+1)`.
    Ex1_1,
    /// SISO linear: `y(k+1) = u(k) + w(k+1)`.
    Ex2,
    /// MIMO nonlinear two-output plant with cross couplings.
    Ex3,
    /// MIMO linear plant `y(k+1) = P1 y(k) + P2 y(k-1) + P3 u(k) + w(k+1)`.
    Ex4,
}

impl PlantId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ex1" => Ok(PlantId::Ex1),
            "ex1_1" => Ok(PlantId::Ex1_1),
            "ex2" => Ok(PlantId::Ex2),
            "ex3" => Ok(PlantId::Ex3),
            "ex4" => Ok(PlantId::Ex4),
            other => Err(Error::UnknownPlant(String::from(other))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PlantId::Ex1 => "ex1",
            PlantId::Ex1_1 => "ex1_1",
            PlantId::Ex2 => "ex2",
            PlantId::Ex3 => "ex3",
            PlantId::Ex4 => "ex4",
        }
    }

    pub fn all() -> [PlantId; 5] {
        [
            PlantId::Ex1,
            PlantId::Ex1_1,
            PlantId::Ex2,
            PlantId::Ex3,
            PlantId::Ex4,
        ]
    }
}

/// Static facts about one plant: dimensions, true orders, and the pseudo
/// orders its exact coefficients are constructed for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantDescriptor {
    pub id: PlantId,
    pub m_y: usize,
    pub m_u: usize,
    /// Output order `n_y`; `None` when the plant map does not read outputs.
    pub n_y: Option<usize>,
    pub n_u: usize,
    pub required_l_y: usize,
    pub required_l_u: usize,
}

pub fn descriptor(id: PlantId) -> PlantDescriptor {
    match id {
        PlantId::Ex1 => PlantDescriptor {
            id,
            m_y: 1,
            m_u: 1,
            n_y: Some(0),
            n_u: 1,
            required_l_y: 1,
            required_l_u: 2,
        },
        PlantId::Ex1_1 => PlantDescriptor {
            id,
            m_y: 1,
            m_u: 1,
            n_y: Some(0),
            n_u: 0,
            required_l_y: 1,
            required_l_u: 1,
        },
        PlantId::Ex2 => PlantDescriptor {
            id,
            m_y: 1,
            m_u: 1,
            n_y: None,
            n_u: 0,
            required_l_y: 0,
            required_l_u: 1,
        },
        PlantId::Ex3 => PlantDescriptor {
            id,
            m_y: 2,
            m_u: 2,
            n_y: Some(0),
            n_u: 1,
            required_l_y: 1,
            required_l_u: 2,
        },
        PlantId::Ex4 => PlantDescriptor {
            id,
            m_y: 2,
            m_u: 2,
            n_y: Some(1),
            n_u: 0,
            required_l_y: 2,
            required_l_u: 1,
        },
    }
}

/// Prescribed initial output samples `y(1), y(2), ...` for each plant.
/// Inputs over the same window are held at zero.
///
/// The seed window ends one step before the plant starts producing outputs,
/// so the sample the first controlled step reads is already plant-consistent
/// (a prescribed output would disagree with the plant relation by the
/// disturbance at that index and smear one extra step of transient into the
/// closed loop).
pub fn default_initial_outputs(id: PlantId) -> Vec<Vec<f64>> {
    match id {
        PlantId::Ex1 => vec![vec![0.0], vec![0.0], vec![0.0]],
        PlantId::Ex1_1 => vec![vec![0.0], vec![0.0]],
        PlantId::Ex2 => vec![vec![0.0]; 4],
        PlantId::Ex3 => vec![vec![0.0, 0.0]; 2],
        PlantId::Ex4 => vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 0.0]],
    }
}

/// Constant blocks of the linear MIMO plant.
pub fn ex4_blocks() -> (Mat, Mat, Mat) {
    (
        Mat::from_rows(&[&[-1.0, 2.0], &[-1.0, -1.4]]),
        Mat::from_rows(&[&[0.6, 6.0], &[0.6, -3.0]]),
        Mat::from_rows(&[&[1.3, 1.0], &[1.0, 0.0]]),
    )
}

/// Constant current-input block of the nonlinear MIMO plant.
pub fn ex3_input_block() -> Mat {
    Mat::from_rows(&[&[1.0, 0.4], &[0.5, 1.1]])
}

fn check_dim(expected: usize, v: &[f64]) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

/// Plant map `f(phi(k))` with the current input supplied explicitly and all
/// lags read from the history.
fn eval_f_with_input(
    id: PlantId,
    history: &SampleHistory,
    k: usize,
    u_k: &[f64],
) -> Result<Vec<f64>> {
    let desc = descriptor(id);
    check_dim(desc.m_u, u_k)?;
    match id {
        PlantId::Ex1 => {
            let y = history.y(k)?[0];
            let u1 = history.u(k - 1)?[0];
            Ok(vec![-y * y + u_k[0] + 0.2 * u1 * u1])
        }
        PlantId::Ex1_1 => {
            let y = history.y(k)?[0];
            Ok(vec![-y * y + u_k[0]])
        }
        PlantId::Ex2 => Ok(vec![u_k[0]]),
        PlantId::Ex3 => {
            let y = history.y(k)?;
            let (y1, y2) = (y[0], y[1]);
            let up = history.u(k - 1)?;
            let (u1p, u2p) = (up[0], up[1]);
            let f1 = -0.7 * y1 * y1 * y1
                + y2 * y2
                + u_k[0]
                + 0.4 * u_k[1]
                + 0.1 * u1p * u1p
                + 0.2 * u2p * u2p * u2p * u2p;
            let f2 = -0.9 * y1 * y1 + 0.8 * y2 * y2 * y2 + 0.5 * u_k[0] + 1.1 * u_k[1]
                - 0.1 * u1p * u1p * u1p
                + 0.1 * u2p * u2p;
            Ok(vec![f1, f2])
        }
        PlantId::Ex4 => {
            // The explicit matrix form acts on output levels y(k), y(k-1)
            // and the current input; this is what makes the constant
            // coefficient blocks exact.
            let (p1, p2, p3) = ex4_blocks();
            let y = history.y(k)?;
            let y_prev = history.y(k - 1)?;
            let mut out = p1.mul_vec(y);
            let t2 = p2.mul_vec(y_prev);
            let t3 = p3.mul_vec(u_k);
            for i in 0..2 {
                out[i] += t2[i] + t3[i];
            }
            Ok(out)
        }
    }
}

/// Plant map `f(phi(j))` with every sample, including `u(j)`, read from the
/// history. Used by the disturbance residual.
pub fn eval_f(id: PlantId, history: &SampleHistory, j: usize) -> Result<Vec<f64>> {
    let u_j = history.u(j)?.to_vec();
    eval_f_with_input(id, history, j, &u_j)
}

/// One plant step: `y(k+1) = f(phi(k)) + w(k+1)`, bit-deterministic.
pub fn plant_step(
    id: PlantId,
    history: &SampleHistory,
    k: usize,
    u_k: &[f64],
    w_next: &[f64],
) -> Result<Vec<f64>> {
    let desc = descriptor(id);
    check_dim(desc.m_y, w_next)?;
    let mut y_next = eval_f_with_input(id, history, k, u_k)?;
    for (y, w) in y_next.iter_mut().zip(w_next.iter()) {
        *y += w;
    }
    Ok(y_next)
}

/// Exact coefficients at time `k`, valid for the plant's required pseudo
/// orders. Built from first partials plus terminating Taylor corrections.
pub fn exact_pg(id: PlantId, history: &SampleHistory, k: usize) -> Result<Coefficients> {
    match id {
        PlantId::Ex1 => {
            if k < 2 {
                return Err(Error::MissingSamples { index: k });
            }
            let a = history.y(k - 1)?[0];
            let dy = history.delta_y(k)?[0];
            let b = history.u(k - 2)?[0];
            let du = history.delta_u(k - 1)?[0];
            let rem = TaylorRemainder {
                eps_y: vec![taylor_eps_scalar(&[-2.0], dy)],
                eps_u: vec![0.0, taylor_eps_scalar(&[0.4], du)],
            };
            Ok(Coefficients::Pg(assemble_pg(
                &[-2.0 * a],
                &[1.0, 0.4 * b],
                &rem,
                0,
                0,
            )?))
        }
        PlantId::Ex1_1 => {
            let a = history.y(k - 1)?[0];
            let dy = history.delta_y(k)?[0];
            let rem = TaylorRemainder {
                eps_y: vec![taylor_eps_scalar(&[-2.0], dy)],
                eps_u: vec![0.0],
            };
            Ok(Coefficients::Pg(assemble_pg(
                &[-2.0 * a],
                &[1.0],
                &rem,
                0,
                0,
            )?))
        }
        PlantId::Ex2 => {
            let rem = TaylorRemainder::zeros(0, 1);
            Ok(Coefficients::Pg(assemble_pg(&[], &[1.0], &rem, 0, 0)?))
        }
        PlantId::Ex3 => {
            if k < 2 {
                return Err(Error::MissingSamples { index: k });
            }
            let yp = history.y(k - 1)?.to_vec();
            let dy = history.delta_y(k)?;
            let bu = history.u(k - 2)?.to_vec();
            let du = history.delta_u(k - 1)?;
            let (a1, a2, d1, d2) = (yp[0], yp[1], dy[0], dy[1]);
            let (b1, b2, e1, e2) = (bu[0], bu[1], du[0], du[1]);

            let phi11 = -2.1 * a1 * a1 + taylor_eps_scalar(&[-4.2 * a1, -4.2], d1);
            let phi12 = 2.0 * a2 + taylor_eps_scalar(&[2.0], d2);
            // Derived from the plant term -0.9 y1^2(k); the increment is the
            // current one and the sign follows the plant equation.
            let phi21 = -1.8 * a1 + taylor_eps_scalar(&[-1.8], d1);
            let phi22 = 2.4 * a2 * a2 + taylor_eps_scalar(&[4.8 * a2, 4.8], d2);

            let phi15 = 0.2 * b1 + taylor_eps_scalar(&[0.2], e1);
            let phi16 = 0.8 * b2 * b2 * b2 + taylor_eps_scalar(&[2.4 * b2 * b2, 4.8 * b2, 4.8], e2);
            let phi25 = -0.3 * b1 * b1 + taylor_eps_scalar(&[-0.6 * b1, -0.6], e1);
            let phi26 = 0.2 * b2 + taylor_eps_scalar(&[0.2], e2);

            let blocks_y = vec![Mat::from_rows(&[&[phi11, phi12], &[phi21, phi22]])];
            let blocks_u = vec![
                ex3_input_block(),
                Mat::from_rows(&[&[phi15, phi16], &[phi25, phi26]]),
            ];
            Ok(Coefficients::Pjm(Pjm::new(blocks_y, blocks_u, 2, 2)?))
        }
        PlantId::Ex4 => {
            let (p1, p2, p3) = ex4_blocks();
            Ok(Coefficients::Pjm(Pjm::new(vec![p1, p2], vec![p3], 2, 2)?))
        }
    }
}

/// Exact coefficients padded out to the requested pseudo orders.
/// Orders below the plant's construction are rejected.
pub fn exact_pg_padded(
    id: PlantId,
    history: &SampleHistory,
    k: usize,
    l_y: usize,
    l_u: usize,
) -> Result<Coefficients> {
    let desc = descriptor(id);
    if l_y < desc.required_l_y || l_u < desc.required_l_u {
        return Err(Error::UnsupportedOrders {
            required_l_y: desc.required_l_y,
            required_l_u: desc.required_l_u,
        });
    }
    let base = exact_pg(id, history, k)?;
    Ok(base.padded(l_y - desc.required_l_y, l_u - desc.required_l_u))
}

/// Reference trajectory identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryId {
    /// `0.3 * (-1)^round(k/50)`.
    Eq20,
    /// `5 * (-1)^round(k/80)`.
    Eq24,
    /// Sine/cosine pair switching to an antisymmetric square wave at k=401.
    Eq48,
    /// `[3, 3] * (-1)^round(k/50)`.
    Eq50,
    /// Constant 0.3, used for the ramp-disturbance steady-error table.
    Const,
}

impl TrajectoryId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "traj_eq20" => Ok(TrajectoryId::Eq20),
            "traj_eq24" => Ok(TrajectoryId::Eq24),
            "traj_eq48" => Ok(TrajectoryId::Eq48),
            "traj_eq50" => Ok(TrajectoryId::Eq50),
            "traj_const" => Ok(TrajectoryId::Const),
            other => Err(Error::UnknownTrajectory(String::from(other))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TrajectoryId::Eq20 => "traj_eq20",
            TrajectoryId::Eq24 => "traj_eq24",
            TrajectoryId::Eq48 => "traj_eq48",
            TrajectoryId::Eq50 => "traj_eq50",
            TrajectoryId::Const => "traj_const",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TrajectoryId::Eq20 | TrajectoryId::Eq24 | TrajectoryId::Const => 1,
            TrajectoryId::Eq48 | TrajectoryId::Eq50 => 2,
        }
    }
}

/// Disturbance identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisturbanceId {
    /// `w(k+1) = 0.5 sin(k/40) + 0.5 cos(k/30)`.
    Eq19,
    /// `w(k+1) = 10 sin(k/10)`.
    Ex2,
    /// `w(k+1) = [sin(k/10), cos(k/30)]`.
    Eq47,
    /// Two-channel mix of sinusoids and growing exponentials.
    Ex4,
    /// Unit-speed ramp `w(k+1) = k`.
    Ramp,
    /// Identically zero, adapting to the plant dimension.
    Zero,
}

impl DisturbanceId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dist_eq19" => Ok(DisturbanceId::Eq19),
            "dist_ex2" => Ok(DisturbanceId::Ex2),
            "dist_eq47" => Ok(DisturbanceId::Eq47),
            "dist_ex4" => Ok(DisturbanceId::Ex4),
            "dist_ramp" => Ok(DisturbanceId::Ramp),
            "dist_zero" => Ok(DisturbanceId::Zero),
            other => Err(Error::UnknownDisturbance(String::from(other))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DisturbanceId::Eq19 => "dist_eq19",
            DisturbanceId::Ex2 => "dist_ex2",
            DisturbanceId::Eq47 => "dist_eq47",
            DisturbanceId::Ex4 => "dist_ex4",
            DisturbanceId::Ramp => "dist_ramp",
            DisturbanceId::Zero => "dist_zero",
        }
    }

    /// Intrinsic dimension; `None` adapts to the plant.
    pub fn dim(&self) -> Option<usize> {
        match self {
            DisturbanceId::Eq19 | DisturbanceId::Ex2 | DisturbanceId::Ramp => Some(1),
            DisturbanceId::Eq47 | DisturbanceId::Ex4 => Some(2),
            DisturbanceId::Zero => None,
        }
    }
}

/// `(-1)^round(x)` with round half away from zero.
fn neg_one_pow_round(x: f64) -> f64 {
    let n = libm::round(x) as i64;
    if n & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Reference value `y*(k)`, `k >= 1`.
pub fn reference(id: TrajectoryId, k: usize) -> Vec<f64> {
    let kf = k as f64;
    match id {
        TrajectoryId::Eq20 => vec![0.3 * neg_one_pow_round(kf / 50.0)],
        TrajectoryId::Eq24 => vec![5.0 * neg_one_pow_round(kf / 80.0)],
        TrajectoryId::Eq48 => {
            if k <= 400 {
                vec![
                    0.3 * libm::sin(kf / 40.0) - 0.1 * libm::cos(kf / 5.0),
                    0.2 * libm::sin(kf / 10.0) - 0.3 * libm::cos(kf / 30.0),
                ]
            } else {
                let p = neg_one_pow_round(kf / 50.0);
                vec![0.1 * p, -0.1 * p]
            }
        }
        TrajectoryId::Eq50 => {
            let p = 3.0 * neg_one_pow_round(kf / 50.0);
            vec![p, p]
        }
        TrajectoryId::Const => vec![0.3],
    }
}

/// Disturbance value `w(k)`, `k >= 1`, sized for `dim` when adaptive.
pub fn disturbance_dim(id: DisturbanceId, k: usize, dim: usize) -> Vec<f64> {
    let t = (k - 1) as f64;
    match id {
        DisturbanceId::Eq19 => vec![0.5 * libm::sin(t / 40.0) + 0.5 * libm::cos(t / 30.0)],
        DisturbanceId::Ex2 => vec![10.0 * libm::sin(t / 10.0)],
        DisturbanceId::Eq47 => vec![libm::sin(t / 10.0), libm::cos(t / 30.0)],
        DisturbanceId::Ex4 => vec![
            20.0 * libm::sin(t / 20.0) + 40.0 * libm::cos(t / 40.0) + 9.0 * libm::exp(t / 100.0),
            20.0 * libm::cos(t / 30.0) + 40.0 * libm::cos(t / 50.0) + 20.0 * libm::exp(t / 150.0),
        ],
        DisturbanceId::Ramp => vec![t],
        DisturbanceId::Zero => vec![0.0; dim],
    }
}

/// Disturbance value `w(k)` at the generator's intrinsic dimension.
pub fn disturbance(id: DisturbanceId, k: usize) -> Vec<f64> {
    disturbance_dim(id, k, id.dim().unwrap_or(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn siso_history(y: &[f64], u: &[f64]) -> SampleHistory {
        let mut h = SampleHistory::new(1, 1, 1);
        for (i, (&yk, &uk)) in y.iter().zip(u.iter()).enumerate() {
            h.push_sample(i + 1, &[yk], &[uk], &[0.0]).unwrap();
        }
        h
    }

    #[test]
    fn ex1_step() {
        let h = siso_history(&[0.0, 0.0], &[0.0, 0.0]);
        let y = plant_step(PlantId::Ex1, &h, 2, &[1.0], &[0.0]).unwrap();
        assert_eq!(y, vec![1.0]);
    }

    #[test]
    fn ex1_1_step() {
        let h = siso_history(&[0.5], &[0.0]);
        let y = plant_step(PlantId::Ex1_1, &h, 1, &[0.25], &[0.0]).unwrap();
        assert_eq!(y, vec![0.0]);
    }

    #[test]
    fn ex3_step_zero_history() {
        let mut h = SampleHistory::new(2, 2, 1);
        h.push_sample(1, &[0.0, 0.0], &[0.0, 0.0], &[0.0, 0.0])
            .unwrap();
        h.push_sample(2, &[0.0, 0.0], &[0.0, 0.0], &[0.0, 0.0])
            .unwrap();
        let y = plant_step(PlantId::Ex3, &h, 2, &[1.0, 0.0], &[0.0, 0.0]).unwrap();
        assert_eq!(y, vec![1.0, 0.5]);
    }

    #[test]
    fn ex4_step_hand_value() {
        // dy(k) = [1,1], dy(k-1) = [0,0], du(k) = [0,0] -> Phi1 * [1,1].
        let mut h = SampleHistory::new(2, 2, 1);
        h.push_sample(1, &[0.0, 0.0], &[0.0, 0.0], &[0.0, 0.0])
            .unwrap();
        h.push_sample(2, &[0.0, 0.0], &[0.0, 0.0], &[0.0, 0.0])
            .unwrap();
        h.push_sample(3, &[1.0, 1.0], &[0.0, 0.0], &[0.0, 0.0])
            .unwrap();
        let y = plant_step(PlantId::Ex4, &h, 3, &[0.0, 0.0], &[0.0, 0.0]).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-15);
        assert!((y[1] + 2.4).abs() < 1e-15);
    }

    #[test]
    fn ex1_pg_values() {
        // Zero operating point.
        let h = siso_history(&[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]);
        match exact_pg(PlantId::Ex1, &h, 3).unwrap() {
            Coefficients::Pg(pg) => {
                assert_eq!(pg.phi_y(), &[0.0]);
                assert_eq!(pg.phi_u(), &[1.0, 0.0]);
            }
            _ => panic!("scalar plant"),
        }
        // y(k-1)=0.3, dy(k)=0.2, u(k-2)=0.1, du(k-1)=0.1.
        let h = siso_history(&[0.0, 0.3, 0.5], &[0.1, 0.2, 0.4]);
        match exact_pg(PlantId::Ex1, &h, 3).unwrap() {
            Coefficients::Pg(pg) => {
                assert!((pg.phi_y()[0] + 0.8).abs() < 1e-15);
                assert!((pg.phi_u()[1] - 0.06).abs() < 1e-15);
            }
            _ => panic!("scalar plant"),
        }
    }

    #[test]
    fn ex2_pg_constant_over_time() {
        let h = siso_history(&[0.4, -2.0, 7.0], &[1.0, 2.0, -3.0]);
        for k in 1..=3 {
            match exact_pg(PlantId::Ex2, &h, k).unwrap() {
                Coefficients::Pg(pg) => {
                    assert_eq!(pg.phi_y(), &[] as &[f64]);
                    assert_eq!(pg.phi_u(), &[1.0]);
                }
                _ => panic!("scalar plant"),
            }
        }
    }

    #[test]
    fn unsupported_orders_rejected() {
        let h = siso_history(&[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]);
        let err = exact_pg_padded(PlantId::Ex1, &h, 3, 1, 1).unwrap_err();
        assert_eq!(
            err,
            Error::UnsupportedOrders {
                required_l_y: 1,
                required_l_u: 2
            }
        );
    }

    #[test]
    fn reference_square_wave() {
        assert_eq!(reference(TrajectoryId::Eq20, 10), vec![0.3]);
        assert_eq!(reference(TrajectoryId::Eq20, 30), vec![-0.3]);
        // Half-away-from-zero round flips exactly at k = 25.
        assert_eq!(reference(TrajectoryId::Eq20, 24), vec![0.3]);
        assert_eq!(reference(TrajectoryId::Eq20, 25), vec![-0.3]);
    }

    #[test]
    fn reference_mimo_switch() {
        let r = reference(TrajectoryId::Eq48, 500);
        assert_eq!(r, vec![0.1, -0.1]);
        // Still the smooth segment at 400.
        let r = reference(TrajectoryId::Eq48, 400);
        assert!((r[0] - (0.3 * libm::sin(10.0) - 0.1 * libm::cos(80.0))).abs() < 1e-15);
    }

    #[test]
    fn disturbance_phasing() {
        // Ramp: w(8) = 7.
        assert_eq!(disturbance(DisturbanceId::Ramp, 8), vec![7.0]);
        // Trig at zero argument.
        assert_eq!(disturbance(DisturbanceId::Eq19, 1), vec![0.5]);
        assert_eq!(disturbance(DisturbanceId::Eq47, 1), vec![0.0, 1.0]);
        assert_eq!(disturbance(DisturbanceId::Ex2, 1), vec![0.0]);
    }

    #[test]
    fn generators_deterministic() {
        for k in [1usize, 17, 401, 799] {
            assert_eq!(
                reference(TrajectoryId::Eq48, k),
                reference(TrajectoryId::Eq48, k)
            );
            assert_eq!(
                disturbance(DisturbanceId::Ex4, k),
                disturbance(DisturbanceId::Ex4, k)
            );
        }
    }

    #[test]
    fn ex4_pg_constant_over_time() {
        let mut h = SampleHistory::new(2, 2, 1);
        h.push_sample(1, &[0.0, 0.0], &[0.0, 0.0], &[0.0, 0.0])
            .unwrap();
        h.push_sample(2, &[1.0, 1.0], &[0.3, -0.2], &[0.0, 0.0])
            .unwrap();
        h.push_sample(3, &[-0.5, 2.0], &[0.1, 0.9], &[0.0, 0.0])
            .unwrap();
        let a = exact_pg(PlantId::Ex4, &h, 2).unwrap();
        let b = exact_pg(PlantId::Ex4, &h, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn id_round_trips() {
        for id in PlantId::all() {
            assert_eq!(PlantId::parse(id.as_str()).unwrap(), id);
        }
        assert!(PlantId::parse("ex9").is_err());
        assert!(TrajectoryId::parse("traj_nope").is_err());
        assert!(DisturbanceId::parse("dist_nope").is_err());
    }
}
