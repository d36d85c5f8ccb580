//! Small dense matrices and polynomial root extraction.
//!
//! Everything here is sized for the problem at hand: coefficient blocks are
//! at most a few rows wide and characteristic polynomials stay below degree
//! ten, so plain Gaussian elimination and an explicitly shifted complex QR
//! iteration on the companion matrix are entirely adequate.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Build from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            let mut acc = 0.0;
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, s: f64) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(libm::fabs(x)))
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
///
/// Fails with [`Error::SingularNormalMatrix`] when a pivot collapses or the
/// pivot-ratio condition estimate exceeds 1e12.
pub fn solve(a: &Mat, b: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(a.rows, a.cols, "solve expects a square matrix");
    assert_eq!(a.rows, b.len());
    let n = a.rows;
    let mut m = a.clone();
    let mut x: Vec<f64> = b.to_vec();

    let mut max_pivot = 0.0f64;
    let mut min_pivot = f64::INFINITY;
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_abs = libm::fabs(m[(col, col)]);
        for r in col + 1..n {
            let cand = libm::fabs(m[(r, col)]);
            if cand > pivot_abs {
                pivot_abs = cand;
                pivot_row = r;
            }
        }
        if pivot_abs <= 1e-300 {
            return Err(Error::SingularNormalMatrix);
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(pivot_row, j)];
                m[(pivot_row, j)] = tmp;
            }
            x.swap(col, pivot_row);
        }
        max_pivot = max_pivot.max(pivot_abs);
        min_pivot = min_pivot.min(pivot_abs);
        for r in col + 1..n {
            let factor = m[(r, col)] / m[(col, col)];
            if factor != 0.0 {
                for j in col..n {
                    m[(r, j)] -= factor * m[(col, j)];
                }
                x[r] -= factor * x[col];
            }
        }
    }
    // Pivot-ratio proxy for the condition number.
    if max_pivot / min_pivot > 1e12 {
        return Err(Error::SingularNormalMatrix);
    }
    for col in (0..n).rev() {
        let mut acc = x[col];
        for j in col + 1..n {
            acc -= m[(col, j)] * x[j];
        }
        x[col] = acc / m[(col, col)];
    }
    Ok(x)
}

/// Solve a complex square system by Gaussian elimination with partial pivoting.
pub fn solve_complex(a: &mut [Vec<Complex64>], b: &mut [Complex64]) -> Result<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_abs = a[col][col].norm();
        for r in col + 1..n {
            let cand = a[r][col].norm();
            if cand > pivot_abs {
                pivot_abs = cand;
                pivot_row = r;
            }
        }
        if pivot_abs <= 1e-300 {
            return Err(Error::SingularAtPoint);
        }
        if pivot_row != col {
            a.swap(col, pivot_row);
            b.swap(col, pivot_row);
        }
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            if factor != Complex64::new(0.0, 0.0) {
                for j in col..n {
                    let t = a[col][j];
                    a[r][j] -= factor * t;
                }
                let t = b[col];
                b[r] -= factor * t;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for j in col + 1..n {
            acc -= a[col][j] * x[j];
        }
        x[col] = acc / a[col][col];
    }
    Ok(x)
}

/// All complex roots of a real polynomial `c[0] + c[1] x + ... + c[d] x^d`
/// (ascending powers, nonzero leading coefficient) via the eigenvalues of
/// its companion matrix.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    debug_assert!(d >= 1 && coeffs[d] != 0.0);
    let lead = coeffs[d];
    // Companion matrix (upper Hessenberg): subdiagonal ones, last column
    // holds the negated monic coefficients.
    let n = d;
    let mut h = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 1..n {
        h[i][i - 1] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        h[i][n - 1] = Complex64::new(-coeffs[i] / lead, 0.0);
    }
    hessenberg_eigenvalues(h)
}

/// Eigenvalues of a small complex upper Hessenberg matrix by explicitly
/// shifted QR iteration with Givens rotations and bottom-up deflation.
fn hessenberg_eigenvalues(mut h: Vec<Vec<Complex64>>) -> Vec<Complex64> {
    let n = h.len();
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let mut hi = n; // active block is rows 0..hi
    let mut stall = 0usize;

    while hi > 0 {
        if hi == 1 {
            eigs.push(h[0][0]);
            hi = 0;
            continue;
        }
        // Deflate negligible subdiagonals at the bottom of the active block.
        let last = hi - 1;
        let sub = h[last][last - 1].norm();
        let scale = h[last][last].norm() + h[last - 1][last - 1].norm();
        if sub <= f64::EPSILON * scale + 1e-300 {
            eigs.push(h[last][last]);
            hi -= 1;
            stall = 0;
            continue;
        }
        if hi == 2 {
            let (r1, r2) = eig2(h[0][0], h[0][1], h[1][0], h[1][1]);
            eigs.push(r1);
            eigs.push(r2);
            hi = 0;
            continue;
        }
        // Deflate an interior negligible subdiagonal, if any, by splitting.
        let mut lo = 0;
        for i in (1..hi).rev() {
            let s = h[i][i - 1].norm();
            let sc = h[i][i].norm() + h[i - 1][i - 1].norm();
            if s <= f64::EPSILON * sc + 1e-300 {
                h[i][i - 1] = Complex64::new(0.0, 0.0);
                lo = i;
                break;
            }
        }

        // Wilkinson shift from the trailing 2x2 of the active block; fall
        // back to an exceptional shift if the iteration stalls.
        let (e1, e2) = eig2(
            h[hi - 2][hi - 2],
            h[hi - 2][hi - 1],
            h[hi - 1][hi - 2],
            h[hi - 1][hi - 1],
        );
        let corner = h[hi - 1][hi - 1];
        let mut mu = if (e1 - corner).norm() <= (e2 - corner).norm() {
            e1
        } else {
            e2
        };
        stall += 1;
        if stall % 24 == 0 {
            mu = corner + Complex64::new(0.75 * h[hi - 1][hi - 2].norm(), 0.0);
        }
        if stall > 300 {
            // Conditioning safeguard; callers certify roots by residual.
            for i in lo..hi {
                eigs.push(h[i][i]);
            }
            hi = lo;
            stall = 0;
            continue;
        }

        // One explicit QR sweep on rows lo..hi of H - mu I.
        for i in lo..hi {
            h[i][i] -= mu;
        }
        let mut rot: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - lo - 1);
        for i in lo..hi - 1 {
            let a = h[i][i];
            let b = h[i + 1][i];
            let r = libm::hypot(a.norm(), b.norm());
            if r == 0.0 {
                rot.push((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
                continue;
            }
            let c = a.conj() / r;
            let s = b.conj() / r;
            rot.push((c, s));
            for j in i..hi {
                let x = h[i][j];
                let y = h[i + 1][j];
                h[i][j] = c * x + s * y;
                h[i + 1][j] = -s.conj() * x + c.conj() * y;
            }
        }
        for (idx, (c, s)) in rot.iter().enumerate() {
            let i = lo + idx;
            for row in lo..hi {
                let x = h[row][i];
                let y = h[row][i + 1];
                h[row][i] = x * c.conj() + y * s.conj();
                h[row][i + 1] = -x * *s + y * *c;
            }
        }
        for i in lo..hi {
            h[i][i] += mu;
        }
    }
    eigs
}

/// Both eigenvalues of a complex 2x2 matrix, via the stabilized quadratic
/// formula (the larger root first, the other recovered from the product).
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let tr = a + d;
    let det = a * d - b * c;
    let half = tr * 0.5;
    let disc = (half * half - det).sqrt();
    let r1 = if (half + disc).norm() >= (half - disc).norm() {
        half + disc
    } else {
        half - disc
    };
    if r1.norm() == 0.0 {
        return (r1, tr - r1);
    }
    (r1, det / r1)
}

/// Evaluate a real polynomial (ascending powers) at a complex point.
pub fn poly_eval_complex(coeffs: &[f64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + Complex64::new(c, 0.0);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!(libm::fabs(a - b) <= tol, "{a} vs {b}");
    }

    #[test]
    fn solve_2x2() {
        let a = Mat::from_rows(&[&[1.0, 0.4], &[0.5, 1.1]]);
        let x = solve(&a, &[0.9, 0.0]).unwrap();
        assert_close(x[0], 1.1, 1e-12);
        assert_close(x[1], -0.5, 1e-12);
    }

    #[test]
    fn solve_singular() {
        let a = Mat::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert_eq!(solve(&a, &[1.0, 2.0]), Err(Error::SingularNormalMatrix));
    }

    #[test]
    fn roots_linear_and_quadratic() {
        // x - 0.5
        let r = poly_roots(&[-0.5, 1.0]);
        assert_eq!(r.len(), 1);
        assert_close(r[0].re, 0.5, 1e-12);
        // (x - 1)(x - 2) = 2 - 3x + x^2
        let mut r = poly_roots(&[2.0, -3.0, 1.0]);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert_close(r[0].re, 1.0, 1e-9);
        assert_close(r[1].re, 2.0, 1e-9);
    }

    #[test]
    fn roots_complex_pair() {
        // x^2 + 1 -> +/- i
        let r = poly_roots(&[1.0, 0.0, 1.0]);
        for root in &r {
            assert_close(root.norm(), 1.0, 1e-9);
            assert_close(root.re, 0.0, 1e-9);
        }
    }

    #[test]
    fn roots_degree_six_residuals() {
        // Wilkinson-ish product with known roots 1..6 scaled into the unit disk.
        let roots = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
        let mut coeffs = vec![1.0];
        for r in roots {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i] -= r * c;
                next[i + 1] += c;
            }
            coeffs = next;
        }
        let found = poly_roots(&coeffs);
        assert_eq!(found.len(), 6);
        let norm1: f64 = coeffs.iter().map(|c| libm::fabs(*c)).sum();
        for root in &found {
            let res = poly_eval_complex(&coeffs, *root).norm();
            assert!(res <= 1e-9 * norm1, "residual {res}");
        }
    }

    #[test]
    fn complex_solve_roundtrip() {
        let mut a = vec![
            vec![Complex64::new(2.0, 1.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.5)],
        ];
        let xs = [Complex64::new(0.7, -0.2), Complex64::new(-1.1, 0.4)];
        let mut b = vec![
            a[0][0] * xs[0] + a[0][1] * xs[1],
            a[1][0] * xs[0] + a[1][1] * xs[1],
        ];
        let got = solve_complex(&mut a, &mut b).unwrap();
        for (g, x) in got.iter().zip(xs.iter()) {
            assert!((g - x).norm() <= 1e-12);
        }
    }
}
