//! Polynomial algebra in the backward-shift operator, closed-loop
//! characteristic polynomials, pole extraction, and disturbance transfer.
//!
//! The closed loop under the incremental law with frozen coefficients has
//! characteristic polynomial
//! `T(q) = lambda (1-q) [1 - q phi_y(q)] + phi_g phi_u(q)` where `q = z^-1`,
//! `phi_y`/`phi_u` are the coefficient polynomials and `phi_g` the control
//! gain; the matrix version replaces the gain by the transposed gain block
//! on the right. Poles are the z-plane roots of `z^deg T`, computed from the
//! companion matrix and polished by a few Newton steps; every reported root
//! carries a residual guarantee relative to the coefficient norm.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::edlm::{PgVector, Pjm};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};

/// Polynomial `c0 + c1 q + c2 q^2 + ...` in the backward-shift operator
/// `q = z^-1`, with exact trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct ZPolynomial {
    coeffs: Vec<f64>,
}

impl ZPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        ZPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ZPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPolynomial { coeffs: vec![1.0] }
    }

    pub fn constant(c: f64) -> Self {
        ZPolynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `z^-1`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn add(&self, other: &ZPolynomial) -> ZPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.coeff(i) + other.coeff(i);
        }
        ZPolynomial::new(out)
    }

    pub fn sub(&self, other: &ZPolynomial) -> ZPolynomial {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &ZPolynomial) -> ZPolynomial {
        if self.is_zero() || other.is_zero() {
            return ZPolynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPolynomial::new(out)
    }

    pub fn scale(&self, s: f64) -> ZPolynomial {
        ZPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by `q = z^-1`.
    pub fn shift(&self) -> ZPolynomial {
        if self.is_zero() {
            return ZPolynomial::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(0.0);
        out.extend_from_slice(&self.coeffs);
        ZPolynomial::new(out)
    }

    /// Evaluate at a complex z-plane point (via `q = 1/z`).
    pub fn eval_z(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() <= 1e-300 {
            return Err(Error::SingularAtPoint);
        }
        let q = Complex64::new(1.0, 0.0) / z;
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * q + Complex64::new(c, 0.0);
        }
        Ok(acc)
    }

    /// Value at z = 1 (sum of coefficients).
    pub fn at_one(&self) -> f64 {
        self.coeffs.iter().sum()
    }
}

/// Polynomial in `q = z^-1` with matrix coefficients of one shared shape.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixZPolynomial {
    coeffs: Vec<Mat>,
    rows: usize,
    cols: usize,
}

impl MatrixZPolynomial {
    pub fn new(mut coeffs: Vec<Mat>, rows: usize, cols: usize) -> Self {
        for m in &coeffs {
            assert_eq!((m.rows(), m.cols()), (rows, cols), "coefficient shape");
        }
        while coeffs.last().map_or(false, Mat::is_zero) {
            coeffs.pop();
        }
        MatrixZPolynomial { coeffs, rows, cols }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixZPolynomial {
            coeffs: Vec::new(),
            rows,
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        MatrixZPolynomial::new(vec![Mat::identity(n)], n, n)
    }

    pub fn from_blocks(blocks: &[Mat], rows: usize, cols: usize) -> Self {
        MatrixZPolynomial::new(blocks.to_vec(), rows, cols)
    }

    pub fn coeffs(&self) -> &[Mat] {
        &self.coeffs
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coeff(&self, i: usize) -> Mat {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.rows, self.cols))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &MatrixZPolynomial) -> MatrixZPolynomial {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        MatrixZPolynomial::new(out, self.rows, self.cols)
    }

    pub fn sub(&self, other: &MatrixZPolynomial) -> MatrixZPolynomial {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        MatrixZPolynomial::new(out, self.rows, self.cols)
    }

    /// Multiply by `q = z^-1`.
    pub fn shift(&self) -> MatrixZPolynomial {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Mat::zeros(self.rows, self.cols));
        out.extend(self.coeffs.iter().cloned());
        MatrixZPolynomial::new(out, self.rows, self.cols)
    }

    /// Multiply every coefficient by a scalar polynomial (convolution).
    pub fn mul_scalar_poly(&self, p: &ZPolynomial) -> MatrixZPolynomial {
        if self.coeffs.is_empty() || p.is_zero() {
            return MatrixZPolynomial::zero(self.rows, self.cols);
        }
        let n = self.coeffs.len() + p.coeffs().len() - 1;
        let mut out = vec![Mat::zeros(self.rows, self.cols); n];
        for (i, m) in self.coeffs.iter().enumerate() {
            for (j, &c) in p.coeffs().iter().enumerate() {
                out[i + j] = out[i + j].add(&m.scale(c));
            }
        }
        MatrixZPolynomial::new(out, self.rows, self.cols)
    }

    /// Right-multiply every coefficient by a constant matrix.
    pub fn mul_mat_right(&self, m: &Mat) -> MatrixZPolynomial {
        let out: Vec<Mat> = self.coeffs.iter().map(|c| c.matmul(m)).collect();
        MatrixZPolynomial::new(out, self.rows, m.cols())
    }

    /// Scalar polynomial entry at the given position.
    pub fn entry(&self, i: usize, j: usize) -> ZPolynomial {
        ZPolynomial::new(self.coeffs.iter().map(|m| m[(i, j)]).collect())
    }

    /// Determinant by cofactor expansion over polynomial entries; exact
    /// coefficient convolutions throughout.
    pub fn det(&self) -> ZPolynomial {
        assert_eq!(self.rows, self.cols, "determinant of a square polynomial");
        let entries: Vec<Vec<ZPolynomial>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect())
            .collect();
        det_poly(&entries)
    }

    /// Evaluate at a complex z-plane point.
    pub fn eval_z(&self, z: Complex64) -> Result<Vec<Vec<Complex64>>> {
        if z.norm() <= 1e-300 {
            return Err(Error::SingularAtPoint);
        }
        let q = Complex64::new(1.0, 0.0) / z;
        let mut out = vec![vec![Complex64::new(0.0, 0.0); self.cols]; self.rows];
        let mut qp = Complex64::new(1.0, 0.0);
        for m in &self.coeffs {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    out[i][j] += qp * m[(i, j)];
                }
            }
            qp *= q;
        }
        Ok(out)
    }
}

fn det_poly(entries: &[Vec<ZPolynomial>]) -> ZPolynomial {
    let n = entries.len();
    match n {
        0 => ZPolynomial::one(),
        1 => entries[0][0].clone(),
        2 => entries[0][0]
            .mul(&entries[1][1])
            .sub(&entries[0][1].mul(&entries[1][0])),
        _ => {
            let mut acc = ZPolynomial::zero();
            for j in 0..n {
                let minor: Vec<Vec<ZPolynomial>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| entries[i][c].clone())
                            .collect()
                    })
                    .collect();
                let term = entries[0][j].mul(&det_poly(&minor));
                acc = if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
    }
}

/// Pole locations of a characteristic polynomial and the stability verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// z-plane roots, sorted by real then imaginary part.
    pub roots: Vec<Complex64>,
    /// Largest root modulus; 0 when the polynomial is a nonzero constant.
    pub max_modulus: f64,
    /// All roots strictly inside the unit circle (tolerance 1e-9); roots on
    /// or within tolerance of the circle count as unstable.
    pub stable: bool,
}

const STABILITY_TOL: f64 = 1e-9;

/// Scalar coefficient polynomials of a frozen coefficient vector.
fn pg_polys(pg: &PgVector) -> (ZPolynomial, ZPolynomial) {
    (
        ZPolynomial::new(pg.phi_y().to_vec()),
        ZPolynomial::new(pg.phi_u().to_vec()),
    )
}

/// Frozen-coefficient closed-loop characteristic polynomial
/// `T(q) = lambda (1-q) [1 - q phi_y(q)] + phi_g phi_u(q)`.
pub fn char_poly_siso(pg: &PgVector, lambda: f64) -> ZPolynomial {
    let (phi_y, phi_u) = pg_polys(pg);
    let lam = ZPolynomial::new(vec![lambda, -lambda]);
    let inner = ZPolynomial::one().sub(&phi_y.shift());
    lam.mul(&inner).add(&phi_u.scale(pg.gain()))
}

/// Matrix characteristic polynomial
/// `T(q) = lambda (1-q) [I - q phi_y(q)] + phi_u(q) Phi_g^T`.
pub fn char_poly_mimo(pjm: &Pjm, lambda: f64) -> MatrixZPolynomial {
    let m = pjm.m_y();
    let phi_y = MatrixZPolynomial::from_blocks(pjm.phi_y_blocks(), m, m);
    let inner = MatrixZPolynomial::identity(m).sub(&phi_y.shift());
    let lam = ZPolynomial::new(vec![lambda, -lambda]);
    let t1 = inner.mul_scalar_poly(&lam);
    let phi_u = MatrixZPolynomial::from_blocks(pjm.phi_u_blocks(), m, pjm.m_u());
    let t2 = phi_u.mul_mat_right(&pjm.gain_block().transpose());
    t1.add(&t2)
}

/// Pole locations of `T(q)`: the roots of `z^deg T` in the z-plane.
///
/// Exact-zero leading coefficients (in `q^0, q^1, ...`) are excluded before
/// root finding. Roots are polished by Newton steps; each satisfies
/// `|p(root)| <= 1e-9 * ||coeffs||_1`.
pub fn poles(t: &ZPolynomial) -> Result<StabilityReport> {
    if t.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // z^d T(z^-1) has ascending-z coefficients equal to the reversed
    // q-coefficients; leading zeros in q become trailing zeros in z.
    let mut zpoly: Vec<f64> = t.coeffs().iter().rev().copied().collect();
    while zpoly.last() == Some(&0.0) {
        zpoly.pop();
    }
    if zpoly.len() <= 1 {
        return Ok(StabilityReport {
            roots: Vec::new(),
            max_modulus: 0.0,
            stable: true,
        });
    }
    let norm1: f64 = zpoly.iter().map(|c| libm::fabs(*c)).sum();
    let mut roots = linalg::poly_roots(&zpoly);
    let deriv: Vec<f64> = zpoly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect();
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let p = linalg::poly_eval_complex(&zpoly, *r);
            let dp = linalg::poly_eval_complex(&deriv, *r);
            if dp.norm() > 1e-300 {
                let step = p / dp;
                if step.norm() < 1.0 {
                    *r -= step;
                }
            }
        }
        debug_assert!(
            linalg::poly_eval_complex(&zpoly, *r).norm() <= 1e-9 * norm1,
            "uncertified root"
        );
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let max_modulus = roots.iter().fold(0.0f64, |m, r| m.max(r.norm()));
    Ok(StabilityReport {
        roots,
        max_modulus,
        stable: max_modulus < 1.0 - STABILITY_TOL,
    })
}

/// Disturbance-to-output gain `lambda (1 - z^-1) / T` at one z-plane point,
/// for the loop compensated with the true disturbance increment.
pub fn disturbance_transfer_siso(pg: &PgVector, lambda: f64, z: Complex64) -> Result<Complex64> {
    let t = char_poly_siso(pg, lambda);
    let tz = t.eval_z(z)?;
    let scale: f64 = t
        .coeffs()
        .iter()
        .map(|c| libm::fabs(*c))
        .sum::<f64>()
        .max(1e-300);
    if tz.norm() <= 1e-12 * scale {
        return Err(Error::SingularAtPoint);
    }
    let num = Complex64::new(lambda, 0.0) * (Complex64::new(1.0, 0.0) - z.inv());
    Ok(num / tz)
}

/// Matrix disturbance-to-output gain `lambda (1 - z^-1) T^-1` at one
/// z-plane point (left inverse applied by a direct solve).
pub fn disturbance_transfer_mimo(
    pjm: &Pjm,
    lambda: f64,
    z: Complex64,
) -> Result<Vec<Vec<Complex64>>> {
    let t = char_poly_mimo(pjm, lambda);
    let tz = t.eval_z(z)?;
    let m = pjm.m_y();
    let num = Complex64::new(lambda, 0.0) * (Complex64::new(1.0, 0.0) - z.inv());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for col in 0..m {
        let mut a: Vec<Vec<Complex64>> = tz.clone();
        let mut rhs = vec![Complex64::new(0.0, 0.0); m];
        rhs[col] = num;
        let x = linalg::solve_complex(&mut a, &mut rhs)?;
        for row in 0..m {
            out[row][col] = x[row];
        }
    }
    Ok(out)
}

/// Steady output offset under the unit-speed ramp disturbance with true
/// compensation, by the final value theorem.
///
/// The `(1 - z^-1)` factors cancel against the ramp transform's double pole
/// analytically, leaving `lambda / T(1)` with `T(1) = phi_g phi_u(1)`; no
/// root finding enters the value. The loop must be stable for the limit to
/// exist.
pub fn steady_state_error_ramp(pg: &PgVector, lambda: f64) -> Result<f64> {
    let t = char_poly_siso(pg, lambda);
    let report = poles(&t)?;
    if !report.stable {
        return Err(Error::UnstableLoop {
            max_modulus: report.max_modulus,
        });
    }
    let t_at_one = pg.gain() * ZPolynomial::new(pg.phi_u().to_vec()).at_one();
    if libm::fabs(t_at_one) <= 1e-12 {
        return Err(Error::SingularAtPoint);
    }
    Ok(lambda / t_at_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(phi_y: &[f64], phi_u: &[f64]) -> PgVector {
        PgVector::new(phi_y.to_vec(), phi_u.to_vec()).unwrap()
    }

    #[test]
    fn char_poly_deadbeat_collapses() {
        let t = char_poly_siso(&pg(&[], &[1.0]), 0.0);
        assert_eq!(t.coeffs(), &[1.0]);
    }

    #[test]
    fn char_poly_first_order() {
        let t = char_poly_siso(&pg(&[], &[1.0]), 1.0);
        assert_eq!(t.coeffs(), &[2.0, -1.0]);
        let rep = poles(&t).unwrap();
        assert_eq!(rep.roots.len(), 1);
        assert!((rep.roots[0].re - 0.5).abs() < 1e-12);
        assert!(rep.stable);
    }

    #[test]
    fn char_poly_zero_lambda_is_product() {
        let p = pg(&[0.3, -0.2], &[2.0, 0.5, -0.1]);
        let t = char_poly_siso(&p, 0.0);
        let expect = ZPolynomial::new(vec![2.0, 0.5, -0.1]).scale(2.0);
        assert_eq!(t, expect);
    }

    #[test]
    fn poles_linear_factors() {
        let rep = poles(&ZPolynomial::new(vec![1.0, -0.5])).unwrap();
        assert!((rep.roots[0].re - 0.5).abs() < 1e-12 && rep.stable);
        let rep = poles(&ZPolynomial::new(vec![1.0, -2.0])).unwrap();
        assert!((rep.roots[0].re - 2.0).abs() < 1e-12 && !rep.stable);
    }

    #[test]
    fn poles_reject_zero_and_skip_leading_zeros() {
        assert_eq!(poles(&ZPolynomial::zero()), Err(Error::ZeroPolynomial));
        // q (1 - 0.5 q): the leading zero in q^0 drops out.
        let rep = poles(&ZPolynomial::new(vec![0.0, 1.0, -0.5])).unwrap();
        assert_eq!(rep.roots.len(), 1);
        assert!((rep.roots[0].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn poles_residual_certified() {
        let t = ZPolynomial::new(vec![1.7, -2.3, 0.9, 0.31, -0.05]);
        let rep = poles(&t).unwrap();
        let zpoly: Vec<f64> = t.coeffs().iter().rev().copied().collect();
        let norm1: f64 = zpoly.iter().map(|c| c.abs()).sum();
        for r in &rep.roots {
            assert!(linalg::poly_eval_complex(&zpoly, *r).norm() <= 1e-9 * norm1);
        }
    }

    #[test]
    fn ring_laws_exact_for_integer_coefficients() {
        // Deterministic pseudo-random integer polynomials.
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ((state >> 59) as i64 - 16) as f64
        };
        for _ in 0..50 {
            let a = ZPolynomial::new((0..5).map(|_| next()).collect());
            let b = ZPolynomial::new((0..6).map(|_| next()).collect());
            let c = ZPolynomial::new((0..4).map(|_| next()).collect());
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }

    #[test]
    fn dc_rejection() {
        for (p, lambda) in [
            (pg(&[], &[1.0]), 1.0),
            (pg(&[-0.6], &[1.0]), 0.2),
            (pg(&[0.1, 0.05], &[1.5, -0.2]), 2.0),
        ] {
            let g = disturbance_transfer_siso(&p, lambda, Complex64::new(1.0, 0.0)).unwrap();
            assert!(g.norm() <= 1e-15);
        }
    }

    #[test]
    fn transfer_values() {
        // lambda = 0 removes the disturbance path entirely.
        let g =
            disturbance_transfer_siso(&pg(&[], &[1.0]), 0.0, Complex64::new(-1.0, 0.0)).unwrap();
        assert_eq!(g.norm(), 0.0);
        // First-order loop at z = -1: 2 / 3.
        let g =
            disturbance_transfer_siso(&pg(&[], &[1.0]), 1.0, Complex64::new(-1.0, 0.0)).unwrap();
        assert!((g.re - 2.0 / 3.0).abs() < 1e-12 && g.im.abs() < 1e-15);
    }

    #[test]
    fn ramp_error_equals_lambda() {
        // Gain 1 and unit input-side sum leave exactly lambda.
        for lambda in [0.0, 0.2, -0.1] {
            let p = pg(&[-0.6 - 2.0 * lambda], &[1.0]);
            assert_eq!(steady_state_error_ramp(&p, lambda).unwrap(), lambda);
        }
    }

    #[test]
    fn ramp_error_unstable_loop_rejected() {
        let p = pg(&[3.0], &[0.1]);
        assert!(matches!(
            steady_state_error_ramp(&p, 1.0),
            Err(Error::UnstableLoop { .. })
        ));
    }

    fn ex4_pjm() -> Pjm {
        let (p1, p2, p3) = crate::plants::ex4_blocks();
        Pjm::new(vec![p1, p2], vec![p3], 2, 2).unwrap()
    }

    #[test]
    fn mimo_char_poly_constant_at_zero_lambda() {
        let t = char_poly_mimo(&ex4_pjm(), 0.0);
        assert_eq!(t.degree(), Some(0));
        let c = t.coeff(0);
        assert!((c[(0, 0)] - 2.69).abs() < 1e-12);
        assert!((c[(0, 1)] - 1.3).abs() < 1e-12);
        assert!((c[(1, 0)] - 1.3).abs() < 1e-12);
        assert!((c[(1, 1)] - 1.0).abs() < 1e-12);
        let det = t.det();
        assert_eq!(det.degree(), Some(0));
        assert!((det.coeff(0) - 1.0).abs() < 1e-12);
        let rep = poles(&det).unwrap();
        assert!(rep.stable && rep.roots.is_empty());
    }

    #[test]
    fn mimo_char_poly_matches_hand_expansion() {
        // lambda (1-q)[I - q(P1 + P2 q)] + P3 P3^T expanded by hand.
        let (p1, p2, p3) = crate::plants::ex4_blocks();
        let lambda = 0.1;
        let t = char_poly_mimo(&ex4_pjm(), lambda);
        assert_eq!(t.degree(), Some(3));
        let ident = Mat::identity(2);
        let c0 = p3.matmul(&p3.transpose()).add(&ident.scale(lambda));
        let c1 = ident.add(&p1).scale(-lambda);
        let c2 = p1.sub(&p2).scale(lambda);
        let c3 = p2.scale(lambda);
        for (i, expect) in [c0, c1, c2, c3].iter().enumerate() {
            let got = t.coeff(i);
            for r in 0..2 {
                for c in 0..2 {
                    assert!((got[(r, c)] - expect[(r, c)]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn mimo_transfer_matches_scalar_structure() {
        // At lambda = 0 the matrix transfer vanishes identically.
        let g = disturbance_transfer_mimo(&ex4_pjm(), 0.0, Complex64::new(-1.0, 0.5)).unwrap();
        for row in &g {
            for v in row {
                assert_eq!(v.norm(), 0.0);
            }
        }
    }

    #[test]
    fn mimo_transfer_decouples_for_diagonal_blocks() {
        // With diagonal coefficient blocks the matrix transfer is the
        // per-channel scalar transfer on the diagonal and zero elsewhere.
        let chan = [
            (pg(&[-0.3], &[1.2, 0.4]), 0usize),
            (pg(&[0.2], &[0.8, -0.1]), 1usize),
        ];
        let diag = |a: f64, b: f64| Mat::from_rows(&[&[a, 0.0], &[0.0, b]]);
        let pjm = Pjm::new(
            vec![diag(chan[0].0.phi_y()[0], chan[1].0.phi_y()[0])],
            vec![
                diag(chan[0].0.phi_u()[0], chan[1].0.phi_u()[0]),
                diag(chan[0].0.phi_u()[1], chan[1].0.phi_u()[1]),
            ],
            2,
            2,
        )
        .unwrap();
        let lambda = 0.6;
        let z = Complex64::new(0.7, 0.3);
        let g = disturbance_transfer_mimo(&pjm, lambda, z).unwrap();
        for (p, i) in &chan {
            let scalar = disturbance_transfer_siso(p, lambda, z).unwrap();
            assert!((g[*i][*i] - scalar).norm() <= 1e-12);
        }
        assert!(g[0][1].norm() <= 1e-15 && g[1][0].norm() <= 1e-15);
    }

    #[test]
    fn det_of_diagonal_product() {
        let a = Mat::from_rows(&[&[2.0, 0.0], &[0.0, 3.0]]);
        let b = Mat::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let mp = MatrixZPolynomial::new(vec![a, b], 2, 2);
        // det(A + B q) = (2 + 0 q)(3 + 0 q) - (q)(q) ... expanded: 6 - q^2.
        let det = mp.det();
        assert_eq!(det.coeffs(), &[6.0, 0.0, -1.0]);
    }
}
