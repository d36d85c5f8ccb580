//! Exact incremental linearization coefficients.
//!
//! A differentiable plant `y(k+1) = f(...) + w(k+1)` admits an exact
//! incremental form `dy(k+1) = phi^T(k) dH(k) + dw(k+1)` along its
//! trajectory, where `dH(k)` stacks recent output and input increments and
//! `phi(k)` collects first partial derivatives corrected by finite Taylor
//! remainders. For polynomial plants the Taylor series terminates, so the
//! identity holds to machine precision; [`identity_residual`] is the master
//! oracle that checks it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::plants::{self, PlantId};
use crate::signals::{assemble_regression, RegressionVector, SampleHistory};

/// Scalar coefficient vector for single-output runs, partitioned into the
/// output-side entries (multiplying `dy` lags) and the input-side entries
/// (multiplying `du` lags).
#[derive(Debug, Clone, PartialEq)]
pub struct PgVector {
    phi_y: Vec<f64>,
    phi_u: Vec<f64>,
}

impl PgVector {
    pub fn new(phi_y: Vec<f64>, phi_u: Vec<f64>) -> Result<Self> {
        if phi_u.is_empty() {
            return Err(Error::InvalidOrders {
                l_y: phi_y.len(),
                l_u: 0,
            });
        }
        debug_assert!(phi_y.iter().chain(phi_u.iter()).all(|v| v.is_finite()));
        Ok(PgVector { phi_y, phi_u })
    }

    pub fn l_y(&self) -> usize {
        self.phi_y.len()
    }

    pub fn l_u(&self) -> usize {
        self.phi_u.len()
    }

    pub fn phi_y(&self) -> &[f64] {
        &self.phi_y
    }

    pub fn phi_u(&self) -> &[f64] {
        &self.phi_u
    }

    /// First input-side coefficient, the control gain.
    pub fn gain(&self) -> f64 {
        self.phi_u[0]
    }

    /// Over-parameterized copy with zero entries appended to each block.
    pub fn padded(&self, pad_y: usize, pad_u: usize) -> PgVector {
        let mut phi_y = self.phi_y.clone();
        phi_y.resize(phi_y.len() + pad_y, 0.0);
        let mut phi_u = self.phi_u.clone();
        phi_u.resize(phi_u.len() + pad_u, 0.0);
        PgVector { phi_y, phi_u }
    }

    /// `phi^T dH + dw`.
    pub fn predict(&self, dh: &RegressionVector, dw: f64) -> Result<f64> {
        if dh.m_y() != 1 || dh.m_u() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: dh.m_y().max(dh.m_u()),
            });
        }
        if dh.l_y() != self.l_y() || dh.l_u() != self.l_u() {
            return Err(Error::LengthMismatch {
                expected: self.l_y() + self.l_u(),
                got: dh.len(),
            });
        }
        let mut acc = dw;
        for (c, d) in self.phi_y.iter().zip(dh.dy_block().iter()) {
            acc += c * d;
        }
        for (c, d) in self.phi_u.iter().zip(dh.du_block().iter()) {
            acc += c * d;
        }
        Ok(acc)
    }
}

/// Block coefficient matrix for multi-output runs: `l_y` square blocks on
/// the output side and `l_u` rectangular blocks on the input side.
#[derive(Debug, Clone, PartialEq)]
pub struct Pjm {
    phi_y: Vec<Mat>,
    phi_u: Vec<Mat>,
    m_y: usize,
    m_u: usize,
}

impl Pjm {
    pub fn new(phi_y: Vec<Mat>, phi_u: Vec<Mat>, m_y: usize, m_u: usize) -> Result<Self> {
        if phi_u.is_empty() {
            return Err(Error::InvalidOrders {
                l_y: phi_y.len(),
                l_u: 0,
            });
        }
        if m_u < m_y {
            return Err(Error::DimensionMismatch {
                expected: m_y,
                got: m_u,
            });
        }
        for b in &phi_y {
            if b.rows() != m_y || b.cols() != m_y {
                return Err(Error::DimensionMismatch {
                    expected: m_y,
                    got: b.cols(),
                });
            }
        }
        for b in &phi_u {
            if b.rows() != m_y || b.cols() != m_u {
                return Err(Error::DimensionMismatch {
                    expected: m_u,
                    got: b.cols(),
                });
            }
        }
        Ok(Pjm {
            phi_y,
            phi_u,
            m_y,
            m_u,
        })
    }

    pub fn l_y(&self) -> usize {
        self.phi_y.len()
    }

    pub fn l_u(&self) -> usize {
        self.phi_u.len()
    }

    pub fn m_y(&self) -> usize {
        self.m_y
    }

    pub fn m_u(&self) -> usize {
        self.m_u
    }

    pub fn phi_y_blocks(&self) -> &[Mat] {
        &self.phi_y
    }

    pub fn phi_u_blocks(&self) -> &[Mat] {
        &self.phi_u
    }

    /// First input-side block, the control gain matrix.
    pub fn gain_block(&self) -> &Mat {
        &self.phi_u[0]
    }

    pub fn padded(&self, pad_y: usize, pad_u: usize) -> Pjm {
        let mut phi_y = self.phi_y.clone();
        phi_y.resize(phi_y.len() + pad_y, Mat::zeros(self.m_y, self.m_y));
        let mut phi_u = self.phi_u.clone();
        phi_u.resize(phi_u.len() + pad_u, Mat::zeros(self.m_y, self.m_u));
        Pjm {
            phi_y,
            phi_u,
            m_y: self.m_y,
            m_u: self.m_u,
        }
    }

    /// `phi^T dH + dw`, block by block.
    pub fn predict(&self, dh: &RegressionVector, dw: &[f64]) -> Result<Vec<f64>> {
        if dh.m_y() != self.m_y || dh.m_u() != self.m_u {
            return Err(Error::DimensionMismatch {
                expected: self.m_y,
                got: dh.m_y(),
            });
        }
        if dh.l_y() != self.l_y() || dh.l_u() != self.l_u() {
            return Err(Error::LengthMismatch {
                expected: self.l_y() + self.l_u(),
                got: dh.l_y() + dh.l_u(),
            });
        }
        if dw.len() != self.m_y {
            return Err(Error::DimensionMismatch {
                expected: self.m_y,
                got: dw.len(),
            });
        }
        let mut acc = dw.to_vec();
        for (i, block) in self.phi_y.iter().enumerate() {
            let term = block.mul_vec(dh.dy_lag(i));
            for (a, t) in acc.iter_mut().zip(term.iter()) {
                *a += t;
            }
        }
        for (j, block) in self.phi_u.iter().enumerate() {
            let term = block.mul_vec(dh.du_lag(j));
            for (a, t) in acc.iter_mut().zip(term.iter()) {
                *a += t;
            }
        }
        Ok(acc)
    }
}

/// Either coefficient representation; single-output plants carry the scalar
/// form, multi-output plants the block form.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Pg(PgVector),
    Pjm(Pjm),
}

impl Coefficients {
    pub fn padded(&self, pad_y: usize, pad_u: usize) -> Coefficients {
        match self {
            Coefficients::Pg(pg) => Coefficients::Pg(pg.padded(pad_y, pad_u)),
            Coefficients::Pjm(p) => Coefficients::Pjm(p.padded(pad_y, pad_u)),
        }
    }

    pub fn l_y(&self) -> usize {
        match self {
            Coefficients::Pg(pg) => pg.l_y(),
            Coefficients::Pjm(p) => p.l_y(),
        }
    }

    pub fn l_u(&self) -> usize {
        match self {
            Coefficients::Pg(pg) => pg.l_u(),
            Coefficients::Pjm(p) => p.l_u(),
        }
    }
}

/// One-step increment prediction `phi^T(k) dH(k) + dw(k+1)` for either
/// coefficient form. The scalar form returns a one-element vector.
pub fn predict_increment(
    coeffs: &Coefficients,
    dh: &RegressionVector,
    dw: &[f64],
) -> Result<Vec<f64>> {
    match coeffs {
        Coefficients::Pg(pg) => {
            if dw.len() != 1 {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    got: dw.len(),
                });
            }
            Ok(vec![pg.predict(dh, dw[0])?])
        }
        Coefficients::Pjm(p) => p.predict(dh, dw),
    }
}

/// Per-coordinate Taylor correction terms, laid out like the coefficient
/// vector they correct.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorRemainder {
    pub eps_y: Vec<f64>,
    pub eps_u: Vec<f64>,
}

impl TaylorRemainder {
    pub fn zeros(l_y: usize, l_u: usize) -> Self {
        TaylorRemainder {
            eps_y: vec![0.0; l_y],
            eps_u: vec![0.0; l_u],
        }
    }
}

/// Correction term from the second- and higher-order derivatives of one
/// coordinate of a finitely differentiable map:
/// `eps = f''/2! * d + f'''/3! * d^2 + f''''/4! * d^3 + ...`
///
/// `higher_derivs` lists `[f'', f''', ...]` evaluated at the operating
/// point; linear coordinates pass an empty slice and get exactly 0.
pub fn taylor_eps_scalar(higher_derivs: &[f64], delta: f64) -> f64 {
    let mut acc = 0.0;
    let mut fact = 1.0f64; // running (i+2)!
    let mut power = 1.0f64; // running delta^(i+1)
    for (i, d) in higher_derivs.iter().enumerate() {
        fact *= (i as f64) + 2.0;
        power *= delta;
        acc += d / fact * power;
    }
    acc
}

/// Assemble a scalar coefficient vector from first partial derivatives and
/// their Taylor corrections, then zero-pad each block for over-parameterized
/// pseudo orders.
pub fn assemble_pg(
    partials_y: &[f64],
    partials_u: &[f64],
    remainder: &TaylorRemainder,
    pad_y: usize,
    pad_u: usize,
) -> Result<PgVector> {
    if remainder.eps_y.len() != partials_y.len() {
        return Err(Error::LengthMismatch {
            expected: partials_y.len(),
            got: remainder.eps_y.len(),
        });
    }
    if remainder.eps_u.len() != partials_u.len() {
        return Err(Error::LengthMismatch {
            expected: partials_u.len(),
            got: remainder.eps_u.len(),
        });
    }
    let phi_y: Vec<f64> = partials_y
        .iter()
        .zip(remainder.eps_y.iter())
        .map(|(p, e)| p + e)
        .collect();
    let phi_u: Vec<f64> = partials_u
        .iter()
        .zip(remainder.eps_u.iter())
        .map(|(p, e)| p + e)
        .collect();
    Ok(PgVector::new(phi_y, phi_u)?.padded(pad_y, pad_u))
}

/// Residual of the exact incremental identity at time `k`:
/// `dy(k+1) - phi^T(k) dH(k) - dw(k+1)`.
///
/// For the registered polynomial plants this is zero to numerical precision
/// whenever the `k-1 -> k` and `k -> k+1` transitions of the history were
/// produced by the plant itself.
pub fn identity_residual(plant: PlantId, history: &SampleHistory, k: usize) -> Result<Vec<f64>> {
    let desc = plants::descriptor(plant);
    let coeffs = plants::exact_pg(plant, history, k)?;
    let dh = assemble_regression(history, k, desc.required_l_y, desc.required_l_u)?;
    let dw = history.delta_w(k + 1)?;
    let pred = predict_increment(&coeffs, &dh, &dw)?;
    let dy_next = history.delta_y(k + 1)?;
    Ok(dy_next
        .iter()
        .zip(pred.iter())
        .map(|(a, b)| a - b)
        .collect())
}
