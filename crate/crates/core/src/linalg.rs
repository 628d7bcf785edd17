//! Dense complex matrices sized for one- and two-qubit work.
//!
//! Dimensions here never exceed 4 (8 after the real embedding used by the
//! eigensolver), so everything is written for clarity over asymptotics:
//! row-major `Vec<Complex64>` storage, straightforward O(n^3) products, and
//! a cyclic Jacobi eigensolver.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::tol;

/// One of the two qubits of a bipartite system. `A` is always the left
/// (high-order) factor of a tensor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Subsystem {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subsystem::A => write!(f, "A"),
            Subsystem::B => write!(f, "B"),
        }
    }
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be non-empty");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from nested rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        assert!(!rows.is_empty(), "matrix must be non-empty");
        let cols = rows[0].len();
        assert!(cols > 0, "matrix must be non-empty");
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "all rows must have equal length"
        );
        let nrows = rows.len();
        ComplexMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Build a real-valued matrix from nested rows.
    pub fn from_real(rows: &[Vec<f64>]) -> Self {
        ComplexMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: f64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "trace needs a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise |self - other|.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entrywise |m - m†|; 0 for exactly Hermitian matrices.
    pub fn hermiticity_residual(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Tensor (Kronecker) product, `self` as the left/high-order factor.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let aij = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, aij * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Reduce a two-qubit operator to one qubit, keeping `keep` and tracing
    /// out its partner. Row index convention: `2a + b` for qubits (a, b).
    pub fn partial_trace(&self, keep: Subsystem) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (4, 4), "partial trace needs 4x4");
        let mut out = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Complex64::new(0.0, 0.0);
                for t in 0..2 {
                    s += match keep {
                        Subsystem::A => self.get(2 * i + t, 2 * j + t),
                        Subsystem::B => self.get(2 * t + i, 2 * t + j),
                    };
                }
                out.set(i, j, s);
            }
        }
        out
    }
}

/// Eigenvalues of a Hermitian matrix, descending.
///
/// The n x n Hermitian matrix H = S + iA is embedded as the real symmetric
/// 2n x 2n matrix [[S, -A], [A, S]], whose spectrum is that of H with every
/// eigenvalue doubled. A cyclic Jacobi iteration diagonalizes the embedding;
/// de-duplicating the sorted diagonal recovers the n eigenvalues.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let residual = m.hermiticity_residual();
    if residual > tol::HERMITICITY {
        return Err(Error::NotHermitian { residual });
    }

    let n = m.rows();
    let dim = 2 * n;
    // real symmetric embedding, row-major
    let mut a = vec![0.0f64; dim * dim];
    for r in 0..n {
        for c in 0..n {
            let v = m.get(r, c);
            a[r * dim + c] = v.re;
            a[(n + r) * dim + (n + c)] = v.re;
            a[r * dim + (n + c)] = -v.im;
            a[(n + r) * dim + c] = v.im;
        }
    }

    jacobi_diagonalize(&mut a, dim)?;

    let mut diag: Vec<f64> = (0..dim).map(|i| a[i * dim + i]).collect();
    diag.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    // each eigenvalue appears twice; adjacent after sorting
    Ok(diag.into_iter().step_by(2).collect())
}

/// Cyclic Jacobi sweeps on a real symmetric matrix until the off-diagonal
/// Frobenius norm falls below `tol::JACOBI_OFF`.
fn jacobi_diagonalize(a: &mut [f64], n: usize) -> Result<()> {
    const MAX_SWEEPS: usize = 100;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    off += a[p * n + q] * a[p * n + q];
                }
            }
        }
        if off.sqrt() < tol::JACOBI_OFF {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // columns p and q
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                // rows p and q
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut off = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                off += a[p * n + q] * a[p * n + q];
            }
        }
    }
    Err(Error::NoConvergence { off: off.sqrt() })
}

/// Von Neumann entropy in bits: -sum over positive eigenvalues of l*log2(l).
///
/// Eigenvalues in [-PSD_FLOOR, 0) count as exact zeros; anything below the
/// floor means the input was not positive semidefinite.
pub fn von_neumann_entropy(m: &ComplexMatrix) -> Result<f64> {
    let eigs = hermitian_eigenvalues(m)?;
    let mut s = 0.0;
    for l in eigs {
        if l < -tol::PSD_FLOOR {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: l });
        }
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    Ok(s)
}
