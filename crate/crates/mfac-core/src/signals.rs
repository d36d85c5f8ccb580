//! Time-indexed storage of output, input, and disturbance samples with
//! first-difference access and regression-vector assembly.
//!
//! Time indices are 1-based. Histories are append-only: a sample written at
//! index `k` never changes. The first difference of any stored signal at its
//! first index is 0 by convention, and lagged increments requested from
//! before the start of the history are also 0 (the initialization window).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One scalar- or vector-valued signal, stored flat.
#[derive(Debug, Clone, PartialEq)]
struct Signal {
    dim: usize,
    start: usize,
    data: Vec<f64>,
}

impl Signal {
    fn new(dim: usize, start: usize) -> Self {
        Signal {
            dim,
            start,
            data: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    /// Index of the most recent sample, if any.
    fn last_index(&self) -> Option<usize> {
        let n = self.len();
        if n == 0 {
            None
        } else {
            Some(self.start + n - 1)
        }
    }

    fn push(&mut self, k: usize, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let expected = self.last_index().map_or(self.start, |last| last + 1);
        if k != expected {
            return Err(Error::NonContiguousIndex { expected, got: k });
        }
        self.data.extend_from_slice(v);
        Ok(())
    }

    fn sample(&self, k: usize) -> Result<&[f64]> {
        match self.last_index() {
            Some(last) if k >= self.start && k <= last => {
                let off = (k - self.start) * self.dim;
                Ok(&self.data[off..off + self.dim])
            }
            _ => Err(Error::MissingSamples { index: k }),
        }
    }

    /// `s(k) - s(k-1)`, with 0 at the start index and 0 before the history.
    fn delta(&self, k: usize) -> Result<Vec<f64>> {
        if k < self.start {
            return Ok(vec![0.0; self.dim]);
        }
        if k == self.start {
            self.sample(k)?;
            return Ok(vec![0.0; self.dim]);
        }
        let cur = self.sample(k)?;
        let prev = self.sample(k - 1)?;
        Ok(cur.iter().zip(prev.iter()).map(|(c, p)| c - p).collect())
    }
}

/// Record of one run: outputs `y`, inputs `u`, and disturbances `w`.
///
/// `y` and `w` always advance together. The input at index `k` may be
/// committed after the measurement at `k` (the controller decides `u(k)`
/// knowing `y(k)`), so `u` is allowed to trail by exactly one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleHistory {
    y: Signal,
    u: Signal,
    w: Signal,
    start: usize,
}

impl SampleHistory {
    pub fn new(m_y: usize, m_u: usize, start_index: usize) -> Self {
        SampleHistory {
            y: Signal::new(m_y, start_index),
            u: Signal::new(m_u, start_index),
            w: Signal::new(m_y, start_index),
            start: start_index,
        }
    }

    pub fn start_index(&self) -> usize {
        self.start
    }

    pub fn m_y(&self) -> usize {
        self.y.dim
    }

    pub fn m_u(&self) -> usize {
        self.u.dim
    }

    /// Index of the most recent complete (y, u, w) row.
    pub fn last_index(&self) -> Option<usize> {
        self.u.last_index().min(self.y.last_index())
    }

    /// Index of the most recent measurement (y, w), which may be one ahead
    /// of the last committed input.
    pub fn last_measurement_index(&self) -> Option<usize> {
        self.y.last_index()
    }

    /// Append a full row at index `k`.
    pub fn push_sample(&mut self, k: usize, y: &[f64], u: &[f64], w: &[f64]) -> Result<()> {
        self.push_measurement(k, y, w)?;
        self.commit_input(k, u)
    }

    /// Append the measurement half of row `k` (output and disturbance).
    pub fn push_measurement(&mut self, k: usize, y: &[f64], w: &[f64]) -> Result<()> {
        if self.y.last_index() != self.u.last_index() {
            return Err(Error::MissingSamples {
                index: self.y.last_index().unwrap_or(self.start),
            });
        }
        self.y.push(k, y)?;
        self.w.push(k, w)
    }

    /// Commit the input half of row `k`.
    pub fn commit_input(&mut self, k: usize, u: &[f64]) -> Result<()> {
        if self.y.last_index() != Some(k) {
            return Err(Error::MissingSamples { index: k });
        }
        self.u.push(k, u)
    }

    pub fn y(&self, k: usize) -> Result<&[f64]> {
        self.y.sample(k)
    }

    pub fn u(&self, k: usize) -> Result<&[f64]> {
        self.u.sample(k)
    }

    pub fn w(&self, k: usize) -> Result<&[f64]> {
        self.w.sample(k)
    }

    pub fn delta_y(&self, k: usize) -> Result<Vec<f64>> {
        self.y.delta(k)
    }

    pub fn delta_u(&self, k: usize) -> Result<Vec<f64>> {
        self.u.delta(k)
    }

    pub fn delta_w(&self, k: usize) -> Result<Vec<f64>> {
        self.w.delta(k)
    }
}

/// Stacked increment vector `[dy(k) .. dy(k-L_y+1), du(k) .. du(k-L_u+1)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionVector {
    dy_block: Vec<f64>,
    du_block: Vec<f64>,
    l_y: usize,
    l_u: usize,
    m_y: usize,
    m_u: usize,
}

impl RegressionVector {
    pub fn l_y(&self) -> usize {
        self.l_y
    }

    pub fn l_u(&self) -> usize {
        self.l_u
    }

    pub fn m_y(&self) -> usize {
        self.m_y
    }

    pub fn m_u(&self) -> usize {
        self.m_u
    }

    pub fn dy_block(&self) -> &[f64] {
        &self.dy_block
    }

    pub fn du_block(&self) -> &[f64] {
        &self.du_block
    }

    pub fn len(&self) -> usize {
        self.dy_block.len() + self.du_block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `i`-th output-side increment sub-vector, most recent first.
    pub fn dy_lag(&self, i: usize) -> &[f64] {
        &self.dy_block[i * self.m_y..(i + 1) * self.m_y]
    }

    /// The `j`-th input-side increment sub-vector, most recent first.
    pub fn du_lag(&self, j: usize) -> &[f64] {
        &self.du_block[j * self.m_u..(j + 1) * self.m_u]
    }

    /// Flat concatenation of both blocks.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.dy_block);
        v.extend_from_slice(&self.du_block);
        v
    }

    /// Build directly from blocks; used by tests and probe paths.
    pub fn from_blocks(
        dy_block: Vec<f64>,
        du_block: Vec<f64>,
        m_y: usize,
        m_u: usize,
    ) -> Result<Self> {
        if m_y == 0 || m_u == 0 || dy_block.len() % m_y != 0 || du_block.len() % m_u != 0 {
            return Err(Error::LengthMismatch {
                expected: m_y.max(m_u),
                got: 0,
            });
        }
        let l_y = dy_block.len() / m_y;
        let l_u = du_block.len() / m_u;
        if l_u < 1 {
            return Err(Error::InvalidOrders { l_y, l_u });
        }
        Ok(RegressionVector {
            dy_block,
            du_block,
            l_y,
            l_u,
            m_y,
            m_u,
        })
    }
}

/// Assemble the increment regression vector at time `k` for pseudo orders
/// `(l_y, l_u)`. Lagged increments from before the history start are 0.
pub fn assemble_regression(
    history: &SampleHistory,
    k: usize,
    l_y: usize,
    l_u: usize,
) -> Result<RegressionVector> {
    if l_u < 1 {
        return Err(Error::InvalidOrders { l_y, l_u });
    }
    if k < history.start_index() {
        return Err(Error::MissingSamples { index: k });
    }
    let m_y = history.m_y();
    let m_u = history.m_u();
    let mut dy_block = Vec::with_capacity(l_y * m_y);
    for i in 0..l_y {
        let lag = k as i64 - i as i64;
        if lag < history.start_index() as i64 {
            dy_block.resize(dy_block.len() + m_y, 0.0);
        } else {
            dy_block.extend(history.delta_y(lag as usize)?);
        }
    }
    let mut du_block = Vec::with_capacity(l_u * m_u);
    for j in 0..l_u {
        let lag = k as i64 - j as i64;
        if lag < history.start_index() as i64 {
            du_block.resize(du_block.len() + m_u, 0.0);
        } else {
            du_block.extend(history.delta_u(lag as usize)?);
        }
    }
    Ok(RegressionVector {
        dy_block,
        du_block,
        l_y,
        l_u,
        m_y,
        m_u,
    })
}
