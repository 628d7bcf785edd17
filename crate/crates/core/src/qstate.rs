//! Quantum states: kets, density matrices, and the canonical two-qubit
//! resource used by the coordination strategy.
//!
//! Density matrices are validated at construction (Hermitian, unit trace,
//! positive semidefinite within the gates in [`crate::tol`]) so downstream
//! code never has to re-check. States serialize to the documented JSON
//! shape `{"dim": n, "re": [[..]], "im": [[..]]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, von_neumann_entropy, ComplexMatrix, Subsystem};
use crate::tol;

/// Single-qubit basis vectors used throughout: Z eigenstates and X
/// eigenstates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKet {
    Zero,
    One,
    Plus,
    Minus,
}

/// Normalized state vector with a canonical global phase: the first
/// amplitude with magnitude above `tol::PROB_FLOOR` is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amps: Vec<Complex64>,
}

impl Ket {
    /// Accepts amplitudes of dimension 2 or 4, normalized within
    /// `tol::KET_NORM`; renormalizes exactly and fixes the global phase.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension { dim });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::KET_NORM {
            return Err(Error::NotNormalized { norm });
        }
        let mut amps: Vec<Complex64> = amps.into_iter().map(|a| a / norm).collect();
        if let Some(first) = amps.iter().find(|a| a.norm() > tol::PROB_FLOOR) {
            let phase = first.conj() / first.norm();
            for a in &mut amps {
                *a *= phase;
            }
        }
        Ok(Ket { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amps[i]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &Ket) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rank-1 projector |self><self|.
    pub fn outer(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.amps[i] * self.amps[j].conj());
            }
        }
        m
    }

    /// Tensor product, `self` as the left/high-order factor.
    pub fn tensor(&self, other: &Ket) -> Result<Ket> {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ket::new(amps)
    }
}

/// The four named single-qubit kets.
pub fn basis_ket(which: BasisKet) -> Ket {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let amps = match which {
        BasisKet::Zero => vec![one, zero],
        BasisKet::One => vec![zero, one],
        BasisKet::Plus => vec![h, h],
        BasisKet::Minus => vec![h, -h],
    };
    Ket::new(amps).expect("basis kets are normalized")
}

/// Validation outcome for a candidate density matrix. All three residuals
/// are reported even when the check fails early in spirit, so callers can
/// print a full diagnostic.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub hermiticity_residual: f64,
    pub trace_residual: f64,
    pub min_eigenvalue: f64,
    pub ok: bool,
}

/// Check the density-matrix invariants on a raw matrix. The eigenvalue
/// probe uses the Hermitian part so it stays meaningful for inputs that
/// already failed the hermiticity gate.
pub fn validate_matrix(m: &ComplexMatrix) -> ValidationReport {
    let dim = m.rows();
    let square = m.rows() == m.cols();
    let hermiticity_residual = if square { m.hermiticity_residual() } else { f64::INFINITY };
    let trace_residual = if square {
        (m.trace() - Complex64::new(1.0, 0.0)).norm()
    } else {
        f64::INFINITY
    };
    let min_eigenvalue = if square {
        let herm = m.add(&m.adjoint()).scale(0.5);
        hermitian_eigenvalues(&herm)
            .map(|eigs| eigs.last().copied().unwrap_or(f64::INFINITY))
            .unwrap_or(f64::NEG_INFINITY)
    } else {
        f64::NEG_INFINITY
    };
    let ok = square
        && (dim == 2 || dim == 4)
        && hermiticity_residual <= tol::HERMITICITY
        && trace_residual <= tol::TRACE
        && min_eigenvalue >= -tol::PSD_FLOOR;
    ValidationReport {
        dim,
        hermiticity_residual,
        trace_residual,
        min_eigenvalue,
        ok,
    }
}

/// Validated density matrix of one or two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap a raw matrix.
    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let dim = m.rows();
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension { dim });
        }
        let report = validate_matrix(&m);
        if report.hermiticity_residual > tol::HERMITICITY {
            return Err(Error::NotHermitian {
                residual: report.hermiticity_residual,
            });
        }
        if report.trace_residual > tol::TRACE {
            return Err(Error::InvalidTrace {
                trace: m.trace().re,
            });
        }
        if report.min_eigenvalue < -tol::PSD_FLOOR {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: report.min_eigenvalue,
            });
        }
        Ok(DensityMatrix { m })
    }

    /// Pure state |k><k|.
    pub fn from_ket(k: &Ket) -> DensityMatrix {
        DensityMatrix::from_matrix(k.outer()).expect("pure state of a normalized ket is valid")
    }

    /// Convex mixture of equally sized states. Weights must be nonnegative
    /// and sum to 1 within `tol::WEIGHT_SUM`.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<DensityMatrix> {
        if parts.is_empty() {
            return Err(Error::InvalidWeights { sum: 0.0 });
        }
        let sum: f64 = parts.iter().map(|(w, _)| *w).sum();
        if (sum - 1.0).abs() > tol::WEIGHT_SUM {
            return Err(Error::InvalidWeights { sum });
        }
        for (w, _) in parts {
            if *w < 0.0 {
                return Err(Error::InvalidProbability { value: *w });
            }
        }
        let dim = parts[0].1.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, s) in parts {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: format!("{dim}x{dim}"),
                    right: format!("{}x{}", s.dim(), s.dim()),
                });
            }
            acc = acc.add(&s.matrix().scale(*w));
        }
        DensityMatrix::from_matrix(acc)
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(&self.m).expect("validated state has an entropy")
    }

    /// Reduced state of one qubit of a two-qubit state.
    pub fn reduced(&self, keep: Subsystem) -> Result<DensityMatrix> {
        if self.dim() != 4 {
            return Err(Error::WrongDimension {
                expected: 4,
                got: self.dim(),
            });
        }
        DensityMatrix::from_matrix(self.m.partial_trace(keep))
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.m).expect("validated state is Hermitian")
    }

    // --- JSON document interface ------------------------------------------

    /// Parse from the documented JSON shape. Malformed documents raise
    /// parse-class errors; well-formed documents describing an invalid
    /// state raise validation-class errors.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let doc: StateDoc = serde_json::from_str(s)?;
        doc.try_into()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&StateDoc::from(self)).expect("state serializes")
    }
}

/// Wire format for states: `{"dim": n, "re": [[..]], "im": [[..]]}`,
/// row-major real and imaginary parts.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateDoc {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&DensityMatrix> for StateDoc {
    fn from(s: &DensityMatrix) -> StateDoc {
        let n = s.dim();
        let mut re = vec![vec![0.0; n]; n];
        let mut im = vec![vec![0.0; n]; n];
        for r in 0..n {
            for c in 0..n {
                let v = s.matrix().get(r, c);
                re[r][c] = v.re;
                im[r][c] = v.im;
            }
        }
        StateDoc { dim: n, re, im }
    }
}

impl TryFrom<StateDoc> for DensityMatrix {
    type Error = Error;

    fn try_from(doc: StateDoc) -> Result<DensityMatrix> {
        let n = doc.dim;
        let shape_ok = doc.re.len() == n
            && doc.im.len() == n
            && doc.re.iter().all(|r| r.len() == n)
            && doc.im.iter().all(|r| r.len() == n);
        if !shape_ok {
            return Err(Error::DocumentShape {
                reason: format!("re/im must both be {n}x{n} to match \"dim\""),
            });
        }
        let mut m = ComplexMatrix::zeros(n.max(1), n.max(1));
        if n == 0 {
            return Err(Error::UnsupportedDimension { dim: 0 });
        }
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, Complex64::new(doc.re[r][c], doc.im[r][c]));
            }
        }
        DensityMatrix::from_matrix(m)
    }
}

// --- canonical states -------------------------------------------------------

/// The shared two-qubit resource: an equal mixture of |0><0| (x) |+><+| and
/// |1><1| (x) |-><-|. Entries are exact quarters:
///
/// ```text
///  1/4 *  [ 1  1  0  0 ]
///         [ 1  1  0  0 ]
///         [ 0  0  1 -1 ]
///         [ 0  0 -1  1 ]
/// ```
pub fn coordination_state() -> DensityMatrix {
    let m = ComplexMatrix::from_real(&[
        vec![0.25, 0.25, 0.0, 0.0],
        vec![0.25, 0.25, 0.0, 0.0],
        vec![0.0, 0.0, 0.25, -0.25],
        vec![0.0, 0.0, -0.25, 0.25],
    ]);
    DensityMatrix::from_matrix(m).expect("coordination state is valid")
}

/// The explicit product decomposition of [`coordination_state`]: weights
/// with per-qubit factors. Recombining with the tensor product recovers the
/// state, which is the direct witness that it is separable.
pub fn separable_decomposition() -> Vec<(f64, DensityMatrix, DensityMatrix)> {
    vec![
        (
            0.5,
            DensityMatrix::from_ket(&basis_ket(BasisKet::Zero)),
            DensityMatrix::from_ket(&basis_ket(BasisKet::Plus)),
        ),
        (
            0.5,
            DensityMatrix::from_ket(&basis_ket(BasisKet::One)),
            DensityMatrix::from_ket(&basis_ket(BasisKet::Minus)),
        ),
    ]
}

/// Maximally entangled contrast state (|00> + |11>)/sqrt(2).
pub fn bell_state() -> DensityMatrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let ket = Ket::new(vec![h, zero, zero, h]).expect("Bell ket is normalized");
    DensityMatrix::from_ket(&ket)
}
