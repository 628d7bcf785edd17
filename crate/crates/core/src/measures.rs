//! Correlation measures on two-qubit states.
//!
//! Everything is phrased in terms of one-sided projective measurements:
//! measuring one qubit in some basis splits the partner into conditional
//! states, and comparing the partner's entropy before and after gives the
//! classical correlation J. Subtracting J from the mutual information gives
//! the discord for that basis; optimizing over bases gives the
//! basis-independent discord. Negativity and the maximal CHSH value round
//! out the report as entanglement and nonlocality witnesses.
//!
//! The basis optimizer is a deterministic grid search: a coarse sweep over
//! the Bloch sphere followed by local refinement that halves the angular
//! step until it drops below `tol::ANGLE_STEP_MIN`. Ties are broken toward
//! lexicographically smaller (theta, phi), so results do not depend on
//! evaluation order, and the coarse sweep may run in parallel.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, Subsystem};
use crate::qstate::DensityMatrix;
use crate::tol;

/// Direction on the Bloch sphere: polar angle `theta` in [0, pi] measured
/// from +z, azimuth `phi` in [0, 2*pi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochAngles {
    pub theta: f64,
    pub phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidTheta { theta });
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidPhi { phi });
        }
        Ok(BlochAngles { theta, phi })
    }
}

/// Two-outcome projective measurement on one qubit of a pair.
#[derive(Debug, Clone)]
pub struct ProjectiveMeasurement {
    subsystem: Subsystem,
    projectors: [ComplexMatrix; 2],
    labels: [String; 2],
}

impl ProjectiveMeasurement {
    /// Z basis, outcomes ["0", "1"]. Entries are exact.
    pub fn computational(subsystem: Subsystem) -> Self {
        let p0 = ComplexMatrix::from_real(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let p1 = ComplexMatrix::from_real(&[vec![0.0, 0.0], vec![0.0, 1.0]]);
        ProjectiveMeasurement {
            subsystem,
            projectors: [p0, p1],
            labels: ["0".into(), "1".into()],
        }
    }

    /// X basis, outcomes ["+", "-"]. Entries are exact halves.
    pub fn x_basis(subsystem: Subsystem) -> Self {
        let plus = ComplexMatrix::from_real(&[vec![0.5, 0.5], vec![0.5, 0.5]]);
        let minus = ComplexMatrix::from_real(&[vec![0.5, -0.5], vec![-0.5, 0.5]]);
        ProjectiveMeasurement {
            subsystem,
            projectors: [plus, minus],
            labels: ["+".into(), "-".into()],
        }
    }

    /// Measurement along an arbitrary Bloch direction. Outcome 0 projects
    /// onto cos(t/2)|0> + e^{i p} sin(t/2)|1>, outcome 1 onto its
    /// orthogonal complement.
    pub fn from_angles(subsystem: Subsystem, angles: BlochAngles) -> Result<Self> {
        let half = angles.theta / 2.0;
        let (c, s) = (half.cos(), half.sin());
        let phase = Complex64::from_polar(1.0, angles.phi);
        let up = [Complex64::new(c, 0.0), phase * s];
        let down = [Complex64::new(s, 0.0), -phase * c];
        let proj = |v: &[Complex64; 2]| {
            let mut m = ComplexMatrix::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    m.set(i, j, v[i] * v[j].conj());
                }
            }
            m
        };
        let p0 = proj(&up);
        let p1 = proj(&down);
        let residual = p0.add(&p1).max_abs_diff(&ComplexMatrix::identity(2));
        if residual > tol::ENTRYWISE {
            return Err(Error::IncompleteMeasurement { residual });
        }
        Ok(ProjectiveMeasurement {
            subsystem,
            projectors: [p0, p1],
            labels: ["+n".into(), "-n".into()],
        })
    }

    pub fn subsystem(&self) -> Subsystem {
        self.subsystem
    }

    pub fn projector(&self, outcome: usize) -> &ComplexMatrix {
        &self.projectors[outcome]
    }

    pub fn label(&self, outcome: usize) -> &str {
        &self.labels[outcome]
    }

    /// Projector lifted to the full two-qubit space.
    pub fn embedded(&self, outcome: usize) -> ComplexMatrix {
        let eye = ComplexMatrix::identity(2);
        match self.subsystem {
            Subsystem::A => self.projectors[outcome].kron(&eye),
            Subsystem::B => eye.kron(&self.projectors[outcome]),
        }
    }
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    Ok(())
}

/// I(A:B) = S(A) + S(B) - S(AB), in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let sa = rho.reduced(Subsystem::A)?.entropy();
    let sb = rho.reduced(Subsystem::B)?.entropy();
    Ok(sa + sb - rho.entropy())
}

/// Entropy of an unnormalized, numerically-PSD matrix: negative eigenvalue
/// noise is dropped and the positive part renormalized. Used for conditional
/// states, whose entries carry rounding noise amplified by 1/p.
fn entropy_clamped(m: &ComplexMatrix) -> f64 {
    let eigs = hermitian_eigenvalues(m).expect("conditional states stay Hermitian");
    let total: f64 = eigs.iter().filter(|&&l| l > 0.0).sum();
    if total <= 0.0 {
        return 0.0;
    }
    let mut s = 0.0;
    for l in eigs {
        if l > 0.0 {
            let q = l / total;
            s -= q * q.log2();
        }
    }
    s
}

/// Outcome probabilities and unnormalized partner states, internal form.
/// Entries: (p_i, reduced partner matrix scaled to unit trace), or None
/// below the probability floor.
fn branch_states(
    rho: &DensityMatrix,
    m: &ProjectiveMeasurement,
) -> Vec<(f64, Option<ComplexMatrix>)> {
    let keep = m.subsystem().other();
    (0..2)
        .map(|i| {
            let e = m.embedded(i);
            let p = e.matmul(rho.matrix()).trace().re;
            if p < tol::PROB_FLOOR {
                return (0.0, None);
            }
            let branch = e.matmul(rho.matrix()).matmul(&e);
            let cond = branch.partial_trace(keep);
            let tr = cond.trace().re;
            (p, Some(cond.scale(1.0 / tr)))
        })
        .collect()
}

/// Measurement outcome probabilities with the partner qubit's conditional
/// states. Outcomes below the probability floor report probability 0 and no
/// state.
pub fn conditional_states(
    rho: &DensityMatrix,
    m: &ProjectiveMeasurement,
) -> Result<Vec<(f64, Option<DensityMatrix>)>> {
    require_two_qubits(rho)?;
    branch_states(rho, m)
        .into_iter()
        .map(|(p, cond)| {
            let state = match cond {
                Some(c) => Some(DensityMatrix::from_matrix(c)?),
                None => None,
            };
            Ok((p, state))
        })
        .collect()
}

/// Classical correlation J for a fixed measurement: the drop in the partner
/// qubit's entropy from learning the outcome,
/// S(partner) - sum_i p_i S(partner | outcome i).
pub fn classical_correlation_fixed(
    rho: &DensityMatrix,
    m: &ProjectiveMeasurement,
) -> Result<f64> {
    require_two_qubits(rho)?;
    let s_partner = rho.reduced(m.subsystem().other())?.entropy();
    let ce: f64 = branch_states(rho, m)
        .iter()
        .map(|(p, cond)| match cond {
            Some(c) => p * entropy_clamped(c),
            None => 0.0,
        })
        .sum();
    Ok(s_partner - ce)
}

/// Discord for a fixed measurement: I - J. Values in
/// [-tol::DISCORD_SLACK, 0) are numerical noise and clamp to 0.
pub fn discord_fixed(rho: &DensityMatrix, m: &ProjectiveMeasurement) -> Result<f64> {
    let d = mutual_information(rho)? - classical_correlation_fixed(rho, m)?;
    Ok(clamp_discord(d))
}

fn clamp_discord(d: f64) -> f64 {
    if (-tol::DISCORD_SLACK..0.0).contains(&d) {
        0.0
    } else {
        d
    }
}

/// Resolution of the basis optimizer's coarse sweep. `divisions` splits
/// [0, pi] into equal theta steps; phi uses the same step over [0, 2*pi),
/// giving (divisions + 1) x (2 * divisions) cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub divisions: usize,
}

impl Default for GridSpec {
    /// 37 x 72 coarse cells.
    fn default() -> Self {
        GridSpec { divisions: 36 }
    }
}

impl GridSpec {
    pub fn new(divisions: usize) -> Result<Self> {
        if divisions < 2 {
            return Err(Error::GridTooCoarse {
                min: 2,
                got: divisions,
            });
        }
        Ok(GridSpec { divisions })
    }
}

/// Result of optimizing the measured basis on one side: the maximizing
/// angles, the classical correlation there, and the residual discord.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OptimizedCorrelation {
    pub measured: Subsystem,
    pub angles: BlochAngles,
    pub j: f64,
    pub d: f64,
}

/// True when (j_new, at the new angles) beats the incumbent: larger J wins,
/// exact J ties go to lexicographically smaller (theta, phi).
fn improves(j_new: f64, a_new: BlochAngles, j_best: f64, a_best: BlochAngles) -> bool {
    j_new > j_best
        || (j_new == j_best && (a_new.theta, a_new.phi) < (a_best.theta, a_best.phi))
}

fn wrap_phi(phi: f64) -> f64 {
    let p = phi.rem_euclid(2.0 * PI);
    if p >= 2.0 * PI {
        0.0
    } else {
        p
    }
}

/// Basis-optimized discord: minimize I - J over projective measurements of
/// `measured`, i.e. maximize J over Bloch directions. Deterministic grid
/// search plus local refinement; see the module docs.
pub fn discord_optimized(
    rho: &DensityMatrix,
    measured: Subsystem,
    grid: GridSpec,
) -> Result<OptimizedCorrelation> {
    require_two_qubits(rho)?;
    let mi = mutual_information(rho)?;
    let s_partner = rho.reduced(measured.other())?.entropy();

    let eval = |angles: BlochAngles| -> f64 {
        let m = ProjectiveMeasurement::from_angles(measured, angles)
            .expect("grid angles are in range");
        let ce: f64 = branch_states(rho, &m)
            .iter()
            .map(|(p, cond)| match cond {
                Some(c) => p * entropy_clamped(c),
                None => 0.0,
            })
            .sum();
        s_partner - ce
    };

    let step = PI / grid.divisions as f64;
    let cells: Vec<BlochAngles> = (0..=grid.divisions)
        .flat_map(|ti| {
            let theta = (ti as f64 * step).min(PI);
            (0..2 * grid.divisions).map(move |pi_idx| BlochAngles {
                theta,
                phi: wrap_phi(pi_idx as f64 * step),
            })
        })
        .collect();

    // coarse sweep; cells are independent, reduction order is pinned below
    let scored: Vec<(f64, BlochAngles)> =
        cells.par_iter().map(|&a| (eval(a), a)).collect();
    let (mut j_best, mut best) = scored[0];
    for &(j, a) in &scored[1..] {
        if improves(j, a, j_best, best) {
            j_best = j;
            best = a;
        }
    }

    // local refinement, halving the step until below the floor
    let mut s = step;
    while s > tol::ANGLE_STEP_MIN {
        s /= 2.0;
        for dt in -2i32..=2 {
            for dp in -2i32..=2 {
                let theta = (best.theta + dt as f64 * s).clamp(0.0, PI);
                let phi = wrap_phi(best.phi + dp as f64 * s);
                let a = BlochAngles { theta, phi };
                let j = eval(a);
                if improves(j, a, j_best, best) {
                    j_best = j;
                    best = a;
                }
            }
        }
    }

    Ok(OptimizedCorrelation {
        measured,
        angles: best,
        j: j_best,
        d: clamp_discord(mi - j_best),
    })
}

/// Transpose the B indices of a two-qubit operator:
/// out[(i,k),(j,l)] = in[(i,l),(j,k)].
fn partial_transpose_b(m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.set(2 * i + k, 2 * j + l, m.get(2 * i + l, 2 * j + k));
                }
            }
        }
    }
    out
}

/// Negativity: sum of |negative eigenvalues| of the partial transpose over
/// B. Zero exactly for separable states; 1/2 for maximally entangled pairs.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let pt = partial_transpose_b(rho.matrix());
    let eigs = hermitian_eigenvalues(&pt)?;
    // fold from +0.0: empty float sums start at -0.0, which would leak a
    // negative zero into reports
    Ok(eigs
        .iter()
        .filter(|&&l| l < 0.0)
        .fold(0.0, |acc, l| acc - l))
}

/// The three Pauli matrices (x, y, z).
pub fn pauli_matrices() -> [ComplexMatrix; 3] {
    let sx = ComplexMatrix::from_real(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let sy = ComplexMatrix::from_rows(vec![
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
        vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
    ]);
    let sz = ComplexMatrix::from_real(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
    [sx, sy, sz]
}

/// Largest CHSH expectation over measurement settings:
/// 2 * sqrt(m1 + m2) where m1, m2 are the two largest eigenvalues of T^T T
/// and `T[i][j]` = tr(rho (sigma_i (x) sigma_j)). At most 2 for states
/// admitting a local model, 2*sqrt(2) at the quantum maximum.
pub fn chsh_max(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let paulis = pauli_matrices();
    let mut t = [[0.0f64; 3]; 3];
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            t[i][j] = si.kron(sj).matmul(rho.matrix()).trace().re;
        }
    }
    // T^T T, symmetric 3x3
    let mut ttt = ComplexMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let s: f64 = t.iter().map(|row| row[i] * row[j]).sum();
            ttt.set(i, j, Complex64::new(s, 0.0));
        }
    }
    let eigs = hermitian_eigenvalues(&ttt)?;
    Ok(2.0 * (eigs[0] + eigs[1]).max(0.0).sqrt())
}

/// One fixed-basis row of the report: measure `measured` in `basis`, read
/// off J about the partner and the leftover discord D = I - J.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedCorrelation {
    pub measured: Subsystem,
    pub basis: String,
    pub j: f64,
    pub d: f64,
}

/// Everything the engine can say about one two-qubit state. Fixed-basis and
/// basis-optimized correlations are both carried, clearly labeled, because
/// they answer different questions and can disagree about whether the state
/// "has discord".
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub entropy_joint: f64,
    pub mutual_information: f64,
    pub fixed: Vec<FixedCorrelation>,
    pub optimized: Vec<OptimizedCorrelation>,
    pub negativity: f64,
    pub chsh_max: f64,
}

impl CorrelationReport {
    /// Pretty-printed JSON with a stable field order; identical reports
    /// serialize to identical bytes.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Full report: entropies, mutual information, J/D in the computational and
/// X bases on both sides, basis-optimized discord on both sides, negativity,
/// and the CHSH maximum.
pub fn correlation_report(rho: &DensityMatrix, grid: GridSpec) -> Result<CorrelationReport> {
    require_two_qubits(rho)?;
    let entropy_a = rho.reduced(Subsystem::A)?.entropy();
    let entropy_b = rho.reduced(Subsystem::B)?.entropy();
    let entropy_joint = rho.entropy();
    let mi = mutual_information(rho)?;

    let mut fixed = Vec::new();
    for (basis, make) in [
        ("computational", ProjectiveMeasurement::computational as fn(Subsystem) -> _),
        ("x", ProjectiveMeasurement::x_basis as fn(Subsystem) -> _),
    ] {
        for sub in [Subsystem::A, Subsystem::B] {
            let m = make(sub);
            let j = classical_correlation_fixed(rho, &m)?;
            let d = discord_fixed(rho, &m)?;
            fixed.push(FixedCorrelation {
                measured: sub,
                basis: basis.to_string(),
                j,
                d,
            });
        }
    }

    let optimized = vec![
        discord_optimized(rho, Subsystem::A, grid)?,
        discord_optimized(rho, Subsystem::B, grid)?,
    ];

    Ok(CorrelationReport {
        entropy_a,
        entropy_b,
        entropy_joint,
        mutual_information: mi,
        fixed,
        optimized,
        negativity: negativity(rho)?,
        chsh_max: chsh_max(rho)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{basis_ket, bell_state, coordination_state, BasisKet, DensityMatrix};
    use crate::rng::SplitMix64;

    const SQRT_8: f64 = 2.8284271247461903; // 2*sqrt(2)

    fn quarter_identity() -> DensityMatrix {
        DensityMatrix::from_matrix(ComplexMatrix::identity(4).scale(0.25)).unwrap()
    }

    fn random_two_qubit(rng: &mut SplitMix64) -> DensityMatrix {
        let mut g = ComplexMatrix::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                g.set(
                    r,
                    c,
                    Complex64::new(rng.next_f64() * 2.0 - 1.0, rng.next_f64() * 2.0 - 1.0),
                );
            }
        }
        let m = g.matmul(&g.adjoint());
        let tr = m.trace().re;
        DensityMatrix::from_matrix(m.scale(1.0 / tr)).unwrap()
    }

    #[test]
    fn mutual_information_of_reference_states() {
        assert!((mutual_information(&coordination_state()).unwrap() - 1.0).abs() < 1e-9);
        assert!((mutual_information(&bell_state()).unwrap() - 2.0).abs() < 1e-9);
        assert!(mutual_information(&quarter_identity()).unwrap().abs() < 1e-9);
    }

    #[test]
    fn conditional_states_when_measuring_a_computationally() {
        let rho = coordination_state();
        let m = ProjectiveMeasurement::computational(Subsystem::A);
        let conds = conditional_states(&rho, &m).unwrap();
        assert_eq!(conds.len(), 2);

        let plus = DensityMatrix::from_ket(&basis_ket(BasisKet::Plus));
        let minus = DensityMatrix::from_ket(&basis_ket(BasisKet::Minus));
        let (p0, c0) = &conds[0];
        let (p1, c1) = &conds[1];
        assert!((p0 - 0.5).abs() < 1e-12);
        assert!((p1 - 0.5).abs() < 1e-12);
        assert!(c0.as_ref().unwrap().matrix().max_abs_diff(plus.matrix()) < 1e-12);
        assert!(c1.as_ref().unwrap().matrix().max_abs_diff(minus.matrix()) < 1e-12);
    }

    #[test]
    fn conditional_states_when_measuring_b() {
        let rho = coordination_state();

        // computational on B leaves A maximally mixed
        let m = ProjectiveMeasurement::computational(Subsystem::B);
        let conds = conditional_states(&rho, &m).unwrap();
        let half_eye = ComplexMatrix::identity(2).scale(0.5);
        for (p, c) in &conds {
            assert!((p - 0.5).abs() < 1e-12);
            assert!(c.as_ref().unwrap().matrix().max_abs_diff(&half_eye) < 1e-12);
        }

        // X basis on B pins A exactly
        let m = ProjectiveMeasurement::x_basis(Subsystem::B);
        let conds = conditional_states(&rho, &m).unwrap();
        let zero = DensityMatrix::from_ket(&basis_ket(BasisKet::Zero));
        let one = DensityMatrix::from_ket(&basis_ket(BasisKet::One));
        assert!((conds[0].0 - 0.5).abs() < 1e-12);
        assert!(conds[0].1.as_ref().unwrap().matrix().max_abs_diff(zero.matrix()) < 1e-12);
        assert!(conds[1].1.as_ref().unwrap().matrix().max_abs_diff(one.matrix()) < 1e-12);
    }

    #[test]
    fn impossible_outcomes_report_probability_zero_and_no_state() {
        // |0><0| (x) |+><+|: measuring A computationally never yields 1
        let zero = DensityMatrix::from_ket(&basis_ket(BasisKet::Zero));
        let plus = DensityMatrix::from_ket(&basis_ket(BasisKet::Plus));
        let rho =
            DensityMatrix::from_matrix(zero.matrix().kron(plus.matrix())).unwrap();
        let m = ProjectiveMeasurement::computational(Subsystem::A);
        let conds = conditional_states(&rho, &m).unwrap();
        assert!((conds[0].0 - 1.0).abs() < 1e-12);
        assert_eq!(conds[1].0, 0.0);
        assert!(conds[1].1.is_none());
    }

    #[test]
    fn fixed_basis_correlations_of_the_coordination_state() {
        let rho = coordination_state();

        // measuring A in Z extracts all the correlation
        let m = ProjectiveMeasurement::computational(Subsystem::A);
        assert!((classical_correlation_fixed(&rho, &m).unwrap() - 1.0).abs() < 1e-9);
        assert!(discord_fixed(&rho, &m).unwrap().abs() < 1e-9);

        // measuring B in Z extracts nothing, leaving a full bit of discord
        let m = ProjectiveMeasurement::computational(Subsystem::B);
        assert!(classical_correlation_fixed(&rho, &m).unwrap().abs() < 1e-9);
        assert!((discord_fixed(&rho, &m).unwrap() - 1.0).abs() < 1e-9);

        // measuring B in X extracts everything again
        let m = ProjectiveMeasurement::x_basis(Subsystem::B);
        assert!((classical_correlation_fixed(&rho, &m).unwrap() - 1.0).abs() < 1e-9);
        assert!(discord_fixed(&rho, &m).unwrap().abs() < 1e-9);

        // measuring A in X extracts nothing
        let m = ProjectiveMeasurement::x_basis(Subsystem::A);
        assert!(classical_correlation_fixed(&rho, &m).unwrap().abs() < 1e-9);
        assert!((discord_fixed(&rho, &m).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn optimized_discord_vanishes_on_the_coordination_state() {
        let rho = coordination_state();
        for sub in [Subsystem::A, Subsystem::B] {
            let opt = discord_optimized(&rho, sub, GridSpec::default()).unwrap();
            assert!(
                opt.d.abs() < 1e-6,
                "expected vanishing optimized discord on {sub}, got {}",
                opt.d
            );
            assert!((opt.j - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn optimized_discord_of_the_bell_state_is_one_bit() {
        let rho = bell_state();
        for sub in [Subsystem::A, Subsystem::B] {
            let opt = discord_optimized(&rho, sub, GridSpec::default()).unwrap();
            assert!((opt.d - 1.0).abs() < 1e-6);
            assert!((opt.j - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn negativity_separates_the_reference_states() {
        assert!(negativity(&coordination_state()).unwrap().abs() < 1e-9);
        assert!((negativity(&bell_state()).unwrap() - 0.5).abs() < 1e-9);
        assert!(negativity(&quarter_identity()).unwrap().abs() < 1e-9);
    }

    #[test]
    fn chsh_values_of_the_reference_states() {
        assert!((chsh_max(&coordination_state()).unwrap() - 2.0).abs() < 1e-9);
        assert!((chsh_max(&bell_state()).unwrap() - SQRT_8).abs() < 1e-9);
        assert!(chsh_max(&quarter_identity()).unwrap().abs() < 1e-9);
    }

    #[test]
    fn chsh_never_exceeds_the_quantum_bound() {
        let mut rng = SplitMix64::new(31);
        for _ in 0..20 {
            let rho = random_two_qubit(&mut rng);
            assert!(chsh_max(&rho).unwrap() <= SQRT_8 + 1e-9);
        }
    }

    #[test]
    fn angle_measurements_resolve_identity_and_are_idempotent() {
        let mut rng = SplitMix64::new(13);
        for _ in 0..50 {
            let angles = BlochAngles::new(rng.next_f64() * PI, rng.next_f64() * 2.0 * PI)
                .unwrap();
            let m = ProjectiveMeasurement::from_angles(Subsystem::A, angles).unwrap();
            let sum = m.projector(0).add(m.projector(1));
            assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
            for i in 0..2 {
                let p = m.projector(i);
                assert!(p.matmul(p).max_abs_diff(p) < 1e-12);
            }
            let cross = m.projector(0).matmul(m.projector(1));
            assert!(cross.max_abs_diff(&ComplexMatrix::zeros(2, 2)) < 1e-12);
        }
    }

    #[test]
    fn special_angles_reproduce_the_named_bases() {
        let comp = ProjectiveMeasurement::computational(Subsystem::A);
        let m = ProjectiveMeasurement::from_angles(
            Subsystem::A,
            BlochAngles::new(0.0, 0.0).unwrap(),
        )
        .unwrap();
        for i in 0..2 {
            assert!(m.projector(i).max_abs_diff(comp.projector(i)) < 1e-12);
        }

        let x = ProjectiveMeasurement::x_basis(Subsystem::B);
        let m = ProjectiveMeasurement::from_angles(
            Subsystem::B,
            BlochAngles::new(PI / 2.0, 0.0).unwrap(),
        )
        .unwrap();
        for i in 0..2 {
            assert!(m.projector(i).max_abs_diff(x.projector(i)) < 1e-12);
        }
    }

    #[test]
    fn out_of_range_angles_are_rejected() {
        assert!(matches!(
            BlochAngles::new(-0.1, 0.0),
            Err(Error::InvalidTheta { .. })
        ));
        assert!(matches!(
            BlochAngles::new(PI + 0.1, 0.0),
            Err(Error::InvalidTheta { .. })
        ));
        assert!(matches!(
            BlochAngles::new(0.5, 2.0 * PI),
            Err(Error::InvalidPhi { .. })
        ));
    }

    #[test]
    fn outcome_probabilities_sum_to_one() {
        let mut rng = SplitMix64::new(41);
        for _ in 0..20 {
            let rho = random_two_qubit(&mut rng);
            let angles = BlochAngles::new(rng.next_f64() * PI, rng.next_f64() * 2.0 * PI)
                .unwrap();
            for sub in [Subsystem::A, Subsystem::B] {
                let m = ProjectiveMeasurement::from_angles(sub, angles).unwrap();
                let total: f64 = conditional_states(&rho, &m)
                    .unwrap()
                    .iter()
                    .map(|(p, _)| p)
                    .sum();
                assert!((total - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn classical_correlation_is_bounded_on_random_states() {
        let mut rng = SplitMix64::new(59);
        for _ in 0..15 {
            let rho = random_two_qubit(&mut rng);
            let sa = rho.reduced(Subsystem::A).unwrap().entropy();
            let sb = rho.reduced(Subsystem::B).unwrap().entropy();
            let cap = sa.min(sb) + 1e-9;
            for sub in [Subsystem::A, Subsystem::B] {
                let m = ProjectiveMeasurement::computational(sub);
                let j = classical_correlation_fixed(&rho, &m).unwrap();
                assert!(j >= -1e-9 && j <= cap, "J = {j} outside [0, {cap}]");
                let d = discord_fixed(&rho, &m).unwrap();
                assert!(d >= 0.0, "discord clamped below zero: {d}");
            }
        }
    }

    #[test]
    fn optimizer_dominates_a_brute_force_grid() {
        // 17 x 33 independent sample of fixed bases; the optimized discord
        // must sit at or below every sampled fixed-basis discord
        let mut rng = SplitMix64::new(71);
        let states = vec![coordination_state(), bell_state(), random_two_qubit(&mut rng)];
        for rho in &states {
            for sub in [Subsystem::A, Subsystem::B] {
                let opt = discord_optimized(rho, sub, GridSpec::default()).unwrap();
                for ti in 0..17 {
                    let theta = PI * ti as f64 / 16.0;
                    for pj in 0..33 {
                        let phi = wrap_phi(2.0 * PI * pj as f64 / 33.0);
                        let m = ProjectiveMeasurement::from_angles(
                            sub,
                            BlochAngles::new(theta.min(PI), phi).unwrap(),
                        )
                        .unwrap();
                        let d_fixed = discord_fixed(rho, &m).unwrap();
                        assert!(
                            opt.d <= d_fixed + 1e-9,
                            "optimizer beaten at theta={theta}, phi={phi}: {} > {d_fixed}",
                            opt.d
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn report_is_internally_consistent() {
        let rho = coordination_state();
        let report = correlation_report(&rho, GridSpec::default()).unwrap();
        let mi = report.entropy_a + report.entropy_b - report.entropy_joint;
        assert!((report.mutual_information - mi).abs() < 1e-9);
        assert_eq!(report.fixed.len(), 4);
        assert_eq!(report.optimized.len(), 2);

        // optimized discord never exceeds any fixed-basis discord on the
        // same side
        for opt in &report.optimized {
            for f in report.fixed.iter().filter(|f| f.measured == opt.measured) {
                assert!(opt.d <= f.d + 1e-9);
            }
        }
    }

    #[test]
    fn measures_reject_single_qubit_states() {
        let single = DensityMatrix::from_ket(&basis_ket(BasisKet::Zero));
        assert!(matches!(
            mutual_information(&single),
            Err(Error::WrongDimension { .. })
        ));
        assert!(matches!(negativity(&single), Err(Error::WrongDimension { .. })));
        assert!(matches!(chsh_max(&single), Err(Error::WrongDimension { .. })));
    }
}
